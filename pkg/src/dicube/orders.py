"""Double orders on a finite label set: a pair of strict partial orders with
every pair of distinct elements comparable in at least one of them.

Relations are dense boolean matrices stored as per-row bitmasks; transitive
closures are Warshall sweeps on the masks.  Ground sets stay tiny (<= 6), so
everything here is exhaustive and exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .chains import CubeChain
from .complexes import CoverCell, OrderedCover
from .errors import ContractError, ResourceCapError

Rel = tuple[int, ...]  # row bitmasks: rel[i] >> j & 1 means labels[i] < labels[j]


def rel_from_pairs(n: int, pairs: Iterable[tuple[int, int]]) -> Rel:
    rows = [0] * n
    for i, j in pairs:
        rows[i] |= 1 << j
    return tuple(rows)


def rel_pairs(rel: Rel) -> list[tuple[int, int]]:
    return [(i, j) for i, row in enumerate(rel) for j in range(len(rel)) if row >> j & 1]


def rel_closure(rel: Rel) -> Rel:
    rows = list(rel)
    for k in range(len(rows)):
        mask = 1 << k
        for i in range(len(rows)):
            if rows[i] & mask:
                rows[i] |= rows[k]
    return tuple(rows)


def rel_is_irreflexive(rel: Rel) -> bool:
    return all(not (row >> i & 1) for i, row in enumerate(rel))


def rel_is_transitive(rel: Rel) -> bool:
    return rel_closure(rel) == rel


def rel_is_strict_order(rel: Rel) -> bool:
    return rel_is_irreflexive(rel) and rel_is_transitive(rel)


def rel_subset(a: Rel, b: Rel) -> bool:
    return all(ra & ~rb == 0 for ra, rb in zip(a, b))


@dataclass(frozen=True)
class DoubleOrder:
    """A pair of strict partial orders (x, y) covering every distinct pair."""

    labels: tuple
    x: Rel
    y: Rel

    def __post_init__(self):
        n = len(self.labels)
        if len(self.x) != n or len(self.y) != n:
            raise ContractError("relation size does not match label set")
        if not rel_is_strict_order(self.x) or not rel_is_strict_order(self.y):
            raise ContractError("components must be strict partial orders")

    @property
    def n(self) -> int:
        return len(self.labels)

    def comparable(self, i: int, j: int) -> bool:
        return bool(
            self.x[i] >> j & 1 or self.x[j] >> i & 1 or self.y[i] >> j & 1 or self.y[j] >> i & 1
        )

    @property
    def is_double(self) -> bool:
        return all(self.comparable(i, j) for i in range(self.n) for j in range(i + 1, self.n))

    @property
    def is_regular(self) -> bool:
        """Regularity presupposes the double-order property."""
        if not self.is_double or level_function(self.x) is None:
            return False
        for i in range(self.n):
            for j in range(self.n):
                if self.x[i] >> j & 1 and (self.y[i] >> j & 1 or self.y[j] >> i & 1):
                    return False
        return True

    def act(self, sigma: Mapping) -> "DoubleOrder":
        """Right action: i < j in the image iff sigma(i) < sigma(j) originally."""
        pos = {lab: k for k, lab in enumerate(self.labels)}
        s = [pos[sigma[lab]] for lab in self.labels]

        def push(rel: Rel) -> Rel:
            rows = [0] * self.n
            for i in range(self.n):
                for j in range(self.n):
                    if rel[s[i]] >> s[j] & 1:
                        rows[i] |= 1 << j
            return tuple(rows)

        return DoubleOrder(self.labels, push(self.x), push(self.y))

    def key(self):
        return (self.x, self.y)

    def text(self) -> str:
        def part(rel: Rel) -> str:
            items = ",".join(
                f"{self.labels[i]}<{self.labels[j]}" for i, j in rel_pairs(rel)
            )
            return "{" + items + "}"

        return f"x{part(self.x)};y{part(self.y)}"

    def to_json_dict(self) -> dict:
        n = self.n
        return {
            "x": [[bool(self.x[i] >> j & 1) for j in range(n)] for i in range(n)],
            "y": [[bool(self.y[i] >> j & 1) for j in range(n)] for i in range(n)],
            "labels": list(self.labels),
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "DoubleOrder":
        labels = tuple(data["labels"])
        n = len(labels)
        x = rel_from_pairs(n, [(i, j) for i in range(n) for j in range(n) if data["x"][i][j]])
        y = rel_from_pairs(n, [(i, j) for i in range(n) for j in range(n) if data["y"][i][j]])
        return cls(labels, x, y)


def level_function(rel: Rel) -> Optional[tuple[int, ...]]:
    """The 1-based level map inducing rel (a < b iff level(a) < level(b)),
    or None when rel is not semi-linear.

    Semi-linearity amounts to: incomparability classes are cliques and the
    classes are totally ordered uniformly.
    """
    n = len(rel)
    if n == 0:
        return ()
    # connected components of the incomparability graph
    comp = [-1] * n
    classes: list[list[int]] = []
    for start in range(n):
        if comp[start] != -1:
            continue
        comp[start] = len(classes)
        todo = [start]
        members = [start]
        while todo:
            i = todo.pop()
            for j in range(n):
                if comp[j] == -1 and not (rel[i] >> j & 1 or rel[j] >> i & 1):
                    comp[j] = comp[start]
                    todo.append(j)
                    members.append(j)
        classes.append(members)
    # each class must be an incomparability clique
    for members in classes:
        for i, j in itertools.combinations(members, 2):
            if rel[i] >> j & 1 or rel[j] >> i & 1:
                return None
    # cross-class comparisons must be uniform and acyclic
    below = [0] * len(classes)
    for a, ca in enumerate(classes):
        for b, cb in enumerate(classes):
            if a == b:
                continue
            votes = {bool(rel[i] >> j & 1) for i in ca for j in cb}
            if votes != {True} and votes != {False}:
                return None
            if votes == {True}:
                below[b] += 1
    order = sorted(range(len(classes)), key=lambda c: below[c])
    if [below[c] for c in order] != list(range(len(classes))):
        return None
    levels = [0] * n
    for rank, c in enumerate(order, start=1):
        for i in classes[c]:
            levels[i] = rank
    return tuple(levels)


def union_bar(o1: DoubleOrder, o2: DoubleOrder) -> Optional[DoubleOrder]:
    """Componentwise transitive closure of the union; None when a closure
    picks up a cycle (reflexive entry)."""
    if o1.labels != o2.labels:
        raise ContractError("union needs a common ground set")
    x = rel_closure(tuple(a | b for a, b in zip(o1.x, o2.x)))
    y = rel_closure(tuple(a | b for a, b in zip(o1.y, o2.y)))
    if not rel_is_irreflexive(x) or not rel_is_irreflexive(y):
        return None
    return DoubleOrder(o1.labels, x, y)


def union_cycle_witness(o1: DoubleOrder, o2: DoubleOrder) -> Optional[tuple[str, list]]:
    """A component name and a label cycle witnessing that the union closure
    is reflexive, or None when the union exists."""
    for name, r1, r2 in (("x", o1.x, o2.x), ("y", o1.y, o2.y)):
        union = tuple(a | b for a, b in zip(r1, r2))
        closed = rel_closure(union)
        for i in range(len(union)):
            if closed[i] >> i & 1:
                cycle = _find_cycle(union, i)
                return name, [o1.labels[k] for k in cycle]
    return None


def _find_cycle(rel: Rel, start: int) -> list[int]:
    # BFS back to `start` through the raw union edges
    parent = {start: None}
    todo = [start]
    while todo:
        i = todo.pop(0)
        for j in range(len(rel)):
            if rel[i] >> j & 1:
                if j == start:
                    path = [start, i]
                    while parent[i] is not None:
                        i = parent[i]
                        path.append(i)
                    path.reverse()
                    return path
                if j not in parent:
                    parent[j] = i
                    todo.append(j)
    raise AssertionError("no cycle found despite reflexive closure")


# -- classification -------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    ok: bool
    diagnostic: str = ""
    order: Optional[DoubleOrder] = None
    is_double: bool = False
    is_regular: bool = False
    is_semi_regular: Optional[bool] = None
    level: Optional[dict] = None


def classify(labels: Sequence, x_matrix, y_matrix) -> Classification:
    """Validates a pair of relation matrices and computes the class flags.

    Semi-regularity is decided by membership in the closure-generated family
    (|labels| <= 4); above that it is reported as None rather than guessed.
    """
    labels = tuple(labels)
    n = len(labels)
    x = rel_from_pairs(n, [(i, j) for i in range(n) for j in range(n) if x_matrix[i][j]])
    y = rel_from_pairs(n, [(i, j) for i in range(n) for j in range(n) if y_matrix[i][j]])
    for name, rel in (("x", x), ("y", y)):
        if not rel_is_irreflexive(rel):
            return Classification(False, f"{name} relation is reflexive")
        if not rel_is_transitive(rel):
            return Classification(False, f"{name} relation is not transitive")
    order = DoubleOrder(labels, x, y)
    semi: Optional[bool] = None
    if n <= 4:
        semi = order.key() in {
            o.key() for o in enumerate_orders(labels, "semi-regular")
        }
    levels = level_function(x)
    level = dict(zip(labels, levels)) if levels is not None else None
    return Classification(
        True,
        "",
        order,
        order.is_double,
        order.is_regular,
        semi,
        level,
    )


# -- enumeration ------------------------------------------------------------------


@lru_cache(maxsize=None)
def _strict_orders(n: int) -> tuple[Rel, ...]:
    if n > 4:
        raise ResourceCapError("strict-order filter enumerations are capped at 4 labels")
    positions = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for bits in range(1 << len(positions)):
        rows = [0] * n
        for p, (i, j) in enumerate(positions):
            if bits >> p & 1:
                rows[i] |= 1 << j
        rel = tuple(rows)
        if rel_is_transitive(rel):
            out.append(rel)
    out.sort()
    return tuple(out)


def enumerate_strict_orders(labels: Sequence) -> list[Rel]:
    return list(_strict_orders(len(tuple(labels))))


def _enumerate_double_filter(labels: tuple) -> list[DoubleOrder]:
    orders = []
    for x in _strict_orders(len(labels)):
        for y in _strict_orders(len(labels)):
            o = DoubleOrder(labels, x, y)
            if o.is_double:
                orders.append(o)
    orders.sort(key=DoubleOrder.key)
    return orders


def _enumerate_regular_blocks(labels: tuple) -> list[DoubleOrder]:
    """Direct construction: a sequence of blocks, each totally ordered.

    Every regular order arises from exactly one (permutation, cut set) pair:
    the level decomposition recovers the blocks and the y components recover
    the within-block sequences.
    """
    n = len(labels)
    out = []
    for perm in itertools.permutations(range(n)):
        for cut_bits in range(1 << max(n - 1, 0)):
            cuts = [c for c in range(1, n) if cut_bits >> (c - 1) & 1]
            bounds = [0] + cuts + [n]
            x_pairs = []
            y_pairs = []
            for b in range(len(bounds) - 1):
                lo, hi = bounds[b], bounds[b + 1]
                block = perm[lo:hi]
                for pos_i in range(lo, hi):
                    for pos_j in range(pos_i + 1, hi):
                        y_pairs.append((perm[pos_i], perm[pos_j]))
                for other in perm[hi:]:
                    for mine in block:
                        x_pairs.append((mine, other))
            out.append(
                DoubleOrder(labels, rel_from_pairs(n, x_pairs), rel_from_pairs(n, y_pairs))
            )
    unique = {o.key(): o for o in out}
    if len(unique) != len(out):
        raise AssertionError("block construction produced duplicates")
    result = sorted(unique.values(), key=DoubleOrder.key)
    return result


def _close_under_union(seed: list[DoubleOrder]) -> list[DoubleOrder]:
    # any sub-union of an irreflexive transitive union is irreflexive and
    # inherits pair comparability from each regular constituent, so the
    # binary fixpoint reaches every union of regulars
    family = {o.key(): o for o in seed}
    frontier = list(seed)
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(family.values()):
                u = union_bar(a, b)
                if u is not None and u.key() not in family:
                    family[u.key()] = u
                    fresh.append(u)
        frontier = fresh
    return sorted(family.values(), key=DoubleOrder.key)


def enumerate_orders(labels: Sequence, kind: str) -> list[DoubleOrder]:
    """The double ("double"), regular ("regular") or semi-regular
    ("semi-regular") orders on a label set, in canonical order.

    Caps: 4 labels for the filtered families ("double", "semi-regular"),
    6 for the direct regular construction.
    """
    labels = tuple(labels)
    return list(_enumerate_cached(labels, kind))


@lru_cache(maxsize=None)
def _enumerate_cached(labels: tuple, kind: str) -> tuple[DoubleOrder, ...]:
    n = len(labels)
    if kind == "double":
        if n > 4:
            raise ResourceCapError("double-order enumeration is capped at 4 labels")
        return tuple(_enumerate_double_filter(labels))
    if kind == "regular":
        if n > 6:
            raise ResourceCapError("regular-order enumeration is capped at 6 labels")
        return tuple(_enumerate_regular_blocks(labels))
    if kind == "semi-regular":
        if n > 4:
            raise ResourceCapError("semi-regular enumeration is capped at 4 labels")
        return tuple(_close_under_union(_enumerate_regular_blocks(labels)))
    raise ContractError(f"unknown order class {kind!r}")


# -- the two partial orders on double orders ---------------------------------------


def poset_leq(o1: DoubleOrder, o2: DoubleOrder, variant: str) -> bool:
    """"subseteq": both components grow; "sqsubseteq": x grows, y shrinks."""
    if o1.labels != o2.labels:
        raise ContractError("comparison needs a common ground set")
    if variant == "subseteq":
        return rel_subset(o1.x, o2.x) and rel_subset(o1.y, o2.y)
    if variant == "sqsubseteq":
        return rel_subset(o1.x, o2.x) and rel_subset(o2.y, o1.y)
    raise ContractError(f"unknown order variant {variant!r}")


# -- the retraction to regular orders and the chain union ---------------------------


def is_semi_regular(o: DoubleOrder) -> bool:
    if o.is_regular:
        return True
    if o.n > 4:
        raise ResourceCapError("semi-regularity decision is capped at 4 labels")
    return o.key() in {u.key() for u in _enumerate_cached(o.labels, "semi-regular")}


def to_regular(o: DoubleOrder) -> DoubleOrder:
    """Drops the y comparisons already decided by x; regular on semi-regular
    input, the identity on regular input, and monotone from the componentwise
    order to the mixed one."""
    if not is_semi_regular(o):
        raise ContractError("input is not semi-regular")
    n = o.n
    y_pairs = []
    for i in range(n):
        for j in range(n):
            if o.y[i] >> j & 1 and not (o.x[i] >> j & 1 or o.x[j] >> i & 1):
                y_pairs.append((i, j))
    out = DoubleOrder(o.labels, o.x, rel_from_pairs(n, y_pairs))
    if not out.is_regular:
        raise AssertionError("retraction of a semi-regular order must be regular")
    return out


def chain_union(chain: Sequence[DoubleOrder]) -> DoubleOrder:
    """Union of a strictly increasing mixed-order chain of regular orders:
    the x part of the top entry with the y part of the bottom one."""
    if not chain:
        raise ContractError("chain must be nonempty")
    for o in chain:
        if not o.is_regular:
            raise ContractError("chain entries must be regular")
    for a, b in zip(chain, chain[1:]):
        if a.key() == b.key() or not poset_leq(a, b, "sqsubseteq"):
            raise ContractError("chain must be strictly increasing in the mixed order")
    out = DoubleOrder(chain[0].labels, chain[-1].x, chain[0].y)
    # must agree with the componentwise closure union of all entries
    acc = chain[0]
    for o in chain[1:]:
        nxt = union_bar(acc, o)
        if nxt is None:
            raise AssertionError("union of a mixed-order chain cannot have cycles")
        acc = nxt
    if acc.key() != out.key():
        raise AssertionError("chain union disagrees with the closure union")
    return out


# -- cube chains of the ordered cover <-> regular double orders ----------------------


def chain_to_double_order(cover: OrderedCover, chain: CubeChain) -> DoubleOrder:
    """Reads off the regular order of a chain: x from the step at which each
    element is active, y from the within-step orders."""
    labels = cover.ground
    n = len(labels)
    pos = {lab: k for k, lab in enumerate(labels)}
    step_of: dict = {}
    y_pairs = []
    for step, cell in enumerate(chain.cells, start=1):
        cc = cover.cover_cell(cell)
        for lab in cc.mid:
            if lab in step_of:
                raise ContractError("chain activates an element twice")
            step_of[lab] = step
        for i, j in itertools.combinations(range(len(cc.mid)), 2):
            y_pairs.append((pos[cc.mid[i]], pos[cc.mid[j]]))
    if len(step_of) != n:
        raise ContractError("chain does not activate every element")
    x_pairs = [
        (pos[a], pos[b])
        for a in labels
        for b in labels
        if step_of[a] < step_of[b]
    ]
    out = DoubleOrder(labels, rel_from_pairs(n, x_pairs), rel_from_pairs(n, y_pairs))
    if not out.is_regular:
        raise AssertionError("a cube chain must induce a regular order")
    return out


def double_order_to_chain(cover: OrderedCover, o: DoubleOrder) -> CubeChain:
    """The cube chain whose step-j cell activates the level-j elements in
    y order, with lower levels finished and higher levels unstarted."""
    if tuple(o.labels) != cover.ground:
        raise ContractError("order and cover have different ground sets")
    if not o.is_regular:
        raise ContractError("only regular orders correspond to chains")
    levels = level_function(o.x)
    top = max(levels) if levels else 0
    cells = []
    pos = {lab: k for k, lab in enumerate(o.labels)}
    for j in range(1, top + 1):
        block = [lab for lab, lev in zip(o.labels, levels) if lev == j]
        # ascending y rank: count of block elements strictly below
        members = sorted(
            block, key=lambda lab: sum(1 for m in block if o.y[pos[m]] >> pos[lab] & 1)
        )
        ones = frozenset(lab for lab, lev in zip(o.labels, levels) if lev < j)
        zeros = frozenset(lab for lab, lev in zip(o.labels, levels) if lev > j)
        cells.append(cover.cell_of(CoverCell(ones, tuple(members), zeros)))
    return CubeChain(tuple(cells))
