"""Constructors for the named complexes the library verifies things about:
standard cubes, serial wedge cubes, the one-cube-per-dimension final complex,
its length coverings, and the ordered cover with its symmetric-group action.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import ContractError, ResourceCapError
from .precubical import (
    Cell,
    LengthCovering,
    PrecubicalComplex,
    PrecubicalMap,
    length_covering,
    serial_wedge,
)

STAR = "*"


def default_labels(n: int) -> tuple[str, ...]:
    """Canonical index names a, b, c, ... for ground sets of size <= 26."""
    if n > 26:
        raise ContractError("default label alphabet has 26 names")
    return tuple("abcdefghijklmnopqrstuvwxyz"[:n])


# -- standard cubes -----------------------------------------------------------


def build_standard_cube(arity) -> PrecubicalComplex:
    """The standard cube on an ordered finite set (or on 1..n for an int).

    Cells are functions to {0, 1, *} written positionally, e.g. "01*"; the
    i-th face direction of a cell is its i-th star in position order.
    """
    n = arity if isinstance(arity, int) else len(tuple(arity))
    if n < 0:
        raise ContractError("arity must be nonnegative")
    by_dim: list[list[tuple[str, ...]]] = [[] for _ in range(n + 1)]
    for values in itertools.product("01" + STAR, repeat=n):
        by_dim[values.count(STAR)].append(values)
    for layer in by_dim:
        layer.sort()
    index = {values: (d, k) for d, layer in enumerate(by_dim) for k, values in enumerate(layer)}
    faces = {}
    for d in range(1, n + 1):
        for k, values in enumerate(by_dim[d]):
            stars = [pos for pos, v in enumerate(values) if v == STAR]
            for i in range(1, d + 1):
                for eps in (0, 1):
                    target = list(values)
                    target[stars[i - 1]] = str(eps)
                    faces[(d, k, i, eps)] = index[tuple(target)][1]
    labels = [["".join(values) for values in layer] for layer in by_dim]
    base = (index[("0",) * n][1], index[("1",) * n][1])
    return PrecubicalComplex(labels, faces, base)


def build_wedge_cube(dims: Sequence[int]) -> PrecubicalComplex:
    """Serial wedge of standard cubes, final vertex glued to next initial one."""
    if not dims:
        return build_standard_cube(0)
    if any(d <= 0 for d in dims):
        raise ContractError("wedge cube dimensions must be positive")
    out = build_standard_cube(dims[0])
    for d in dims[1:]:
        out = serial_wedge(out, build_standard_cube(d))
    return out


def top_cube_cell(cube: PrecubicalComplex) -> Cell:
    return (cube.max_dim, 0)


# -- the final complex and its length coverings -------------------------------


def build_final_complex(max_dim: int) -> PrecubicalComplex:
    """One cube per dimension up to max_dim; all faces collapse one level down."""
    if max_dim < 0:
        raise ContractError("max_dim must be nonnegative")
    labels = [[f"z{m}"] for m in range(max_dim + 1)]
    faces = {}
    for d in range(1, max_dim + 1):
        for i in range(1, d + 1):
            for eps in (0, 1):
                faces[(d, 0, i, eps)] = 0
    return PrecubicalComplex(labels, faces, (0, 0))


def unique_map_to_final(K: PrecubicalComplex, Z: PrecubicalComplex) -> PrecubicalMap:
    """The only map into the final complex: every cell goes to its dimension's cube."""
    if Z.max_dim < K.max_dim:
        raise ContractError("final complex is truncated below the source dimension")
    if Z.dims != tuple(1 for _ in range(Z.max_dim + 1)):
        raise ContractError("target is not the final complex")
    return PrecubicalMap(K, Z, [[0] * K.dims[d] for d in range(K.max_dim + 1)])


def build_final_covering(n: int) -> tuple[PrecubicalComplex, dict[Cell, int]]:
    """Length-n covering of the final complex, built directly.

    Dimension k holds cells z{k}_{j} for 0 <= j <= n-k; every face in
    direction eps lands on z{k-1}_{j+eps}; the base runs from z0_0 to z0_n
    and the altitude of z{k}_{j} is j.
    """
    if n < 0:
        raise ContractError("length must be nonnegative")
    labels = [[f"z{k}_{j}" for j in range(n - k + 1)] for k in range(n + 1)]
    faces = {}
    for k in range(1, n + 1):
        for j in range(n - k + 1):
            for i in range(1, k + 1):
                for eps in (0, 1):
                    faces[(k, j, i, eps)] = j + eps
    K = PrecubicalComplex(labels, faces, (0, n))
    altitude = {(k, j): j for k in range(n + 1) for j in range(n - k + 1)}
    return K, altitude


def covering_of_final(n: int) -> LengthCovering:
    return length_covering(build_final_complex(n), n)


# -- the ordered cover ---------------------------------------------------------


@dataclass(frozen=True)
class CoverCell:
    """A cell of the ordered cover: a partition of the ground set into
    finished elements (`ones`), unstarted elements (`zeros`), and a totally
    ordered tuple of active elements (`mid`)."""

    ones: frozenset
    mid: tuple
    zeros: frozenset

    @property
    def dim(self) -> int:
        return len(self.mid)

    @property
    def altitude(self) -> int:
        return len(self.ones)

    def ground_set(self) -> frozenset:
        return self.ones | frozenset(self.mid) | self.zeros

    def face(self, i: int, eps: int) -> "CoverCell":
        if not (1 <= i <= len(self.mid)):
            raise ContractError(f"face index {i} out of range for {self.text()}")
        element = self.mid[i - 1]
        mid = self.mid[: i - 1] + self.mid[i:]
        if eps == 0:
            return CoverCell(self.ones, mid, self.zeros | {element})
        return CoverCell(self.ones | {element}, mid, self.zeros)

    def act(self, sigma: Mapping) -> "CoverCell":
        """Right action by a permutation of the ground set: preimage on all parts."""
        inv = {v: k for k, v in sigma.items()}
        return CoverCell(
            frozenset(inv[x] for x in self.ones),
            tuple(inv[x] for x in self.mid),
            frozenset(inv[x] for x in self.zeros),
        )

    def text(self) -> str:
        return "({}|{}|{})".format(
            "".join(sorted(self.ones)), "<".join(self.mid), "".join(sorted(self.zeros))
        )

    def sort_key(self):
        return (tuple(sorted(self.ones)), self.mid)


def is_cover_face(c1: CoverCell, c2: CoverCell) -> bool:
    """Face criterion: active elements nest with matching order, finished and
    unstarted elements nest the other way round."""
    if c1.ground_set() != c2.ground_set():
        raise ContractError("cells live over different ground sets")
    m1, m2 = set(c1.mid), set(c2.mid)
    if not (m1 <= m2 and c2.zeros <= c1.zeros and c2.ones <= c1.ones):
        return False
    return tuple(x for x in c2.mid if x in m1) == c1.mid


@dataclass
class OrderedCover:
    """The ordered cover complex over a ground set, with cell bookkeeping."""

    ground: tuple
    complex: PrecubicalComplex
    cells: list  # per dimension: list[CoverCell] aligned with complex indices
    index: dict = field(repr=False)  # CoverCell -> Cell

    def cell_of(self, cover_cell: CoverCell) -> Cell:
        return self.index[cover_cell]

    def cover_cell(self, cell: Cell) -> CoverCell:
        return self.cells[cell[0]][cell[1]]

    @property
    def altitude(self) -> dict[Cell, int]:
        return {cell: self.cover_cell(cell).altitude for cell in self.complex.cells()}

    def automorphism(self, sigma: Mapping) -> PrecubicalMap:
        assign = []
        for d, layer in enumerate(self.cells):
            assign.append([self.index[c.act(sigma)][1] for c in layer])
        return PrecubicalMap(self.complex, self.complex, assign, check=False)

    def symmetric_group(self) -> list[PrecubicalMap]:
        """All permutations of the ground set, in itertools order (identity first)."""
        return [self.automorphism(s) for s in permutations_of(self.ground)]

    def projection(self) -> tuple[PrecubicalMap, PrecubicalComplex, dict[Cell, int]]:
        """The altitude-indexed map onto the length-n covering of the final complex."""
        target, alt = build_final_covering(len(self.ground))
        assign = []
        for d, layer in enumerate(self.cells):
            assign.append([target.cell_of_label(f"z{d}_{c.altitude}")[1] for c in layer])
        return PrecubicalMap(self.complex, target, assign), target, alt


def permutations_of(labels: Sequence) -> list[dict]:
    base = tuple(labels)
    return [dict(zip(base, image)) for image in itertools.permutations(base)]


def build_ordered_cover(labels, cap: int = 6) -> OrderedCover:
    """The ordered cover over a ground set (or over a, b, c, ... for an int).

    Dimension-k cells pick k active elements with a total order on them and
    split the rest into finished/unstarted; removing the i-th active element
    in its order gives the faces.  Capped because every downstream check is
    exponential in the arity anyway.
    """
    ground = default_labels(labels) if isinstance(labels, int) else tuple(labels)
    if len(set(ground)) != len(ground):
        raise ContractError("ground set has repeated labels")
    if len(ground) > cap:
        raise ResourceCapError(f"ground set size {len(ground)} above cap {cap}")
    n = len(ground)
    cells: list[list[CoverCell]] = [[] for _ in range(n + 1)]
    for k in range(n + 1):
        for mid_set in itertools.combinations(ground, k):
            rest = [x for x in ground if x not in mid_set]
            for mid in itertools.permutations(mid_set):
                for ones_size in range(len(rest) + 1):
                    for ones in itertools.combinations(rest, ones_size):
                        zeros = frozenset(rest) - set(ones)
                        cells[k].append(CoverCell(frozenset(ones), tuple(mid), zeros))
        cells[k].sort(key=CoverCell.sort_key)
    index = {c: (d, k) for d, layer in enumerate(cells) for k, c in enumerate(layer)}
    faces = {}
    for d in range(1, n + 1):
        for k, cell in enumerate(cells[d]):
            for i in range(1, d + 1):
                for eps in (0, 1):
                    faces[(d, k, i, eps)] = index[cell.face(i, eps)][1]
    labels_out = [[c.text() for c in layer] for layer in cells]
    init = CoverCell(frozenset(), (), frozenset(ground))
    final = CoverCell(frozenset(ground), (), frozenset())
    K = PrecubicalComplex(labels_out, faces, (index[init][1], index[final][1]))
    return OrderedCover(ground, K, cells, index)
