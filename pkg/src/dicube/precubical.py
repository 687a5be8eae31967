"""Finite precubical sets: graded cells, face tables, maps, and the
structural operations on them (validation, altitude, accessibility,
non-self-linkedness, pullbacks, quotients, length coverings).

Cells are identified by (dimension, index) pairs; face data is stored as
dense per-dimension tables so lookups are O(1) and iteration order is
canonical.  All values are immutable after construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import ContractError, ResourceCapError, StructuralError

Cell = tuple[int, int]  # (dimension, index within dimension)


class PrecubicalComplex:
    """A finite precubical set with optional base points.

    ``labels[d][k]`` names the k-th cell of dimension d (labels must be
    globally unique).  ``faces`` maps (d, k, i, eps) with 1 <= i <= d and
    eps in {0, 1} to the index of the target cell in dimension d-1; every
    entry must be present.
    """

    __slots__ = ("_labels", "_faces", "_base", "_by_label", "_dims")

    def __init__(
        self,
        labels: Sequence[Sequence[str]],
        faces: Mapping[tuple[int, int, int, int], int],
        base: Optional[tuple[int, int]] = None,
    ):
        lab = [tuple(str(x) for x in layer) for layer in labels]
        while lab and not lab[-1]:
            lab.pop()
        self._labels = tuple(lab)
        self._dims = tuple(len(layer) for layer in self._labels)
        by_label: dict[str, Cell] = {}
        for d, layer in enumerate(self._labels):
            for k, name in enumerate(layer):
                if name in by_label:
                    raise StructuralError(f"duplicate cell label {name!r}")
                by_label[name] = (d, k)
        self._by_label = by_label

        table: list[tuple[tuple[tuple[int, int], ...], ...]] = []
        for d, layer in enumerate(self._labels):
            if d == 0:
                table.append(tuple(() for _ in layer))
                continue
            per_cell = []
            for k in range(len(layer)):
                per_i = []
                for i in range(1, d + 1):
                    pair = []
                    for eps in (0, 1):
                        key = (d, k, i, eps)
                        if key not in faces:
                            raise StructuralError(
                                f"missing face entry d^{eps}_{i} for cell {layer[k]!r}"
                            )
                        target = faces[key]
                        if not (0 <= target < len(self._labels[d - 1])):
                            raise StructuralError(
                                f"face d^{eps}_{i} of cell {layer[k]!r} points outside dimension {d - 1}"
                            )
                        pair.append(target)
                    per_i.append((pair[0], pair[1]))
                per_cell.append(tuple(per_i))
            table.append(tuple(per_cell))
        self._faces = tuple(table)

        if base is not None:
            init, final = base
            if not self._labels or not (0 <= init < len(self._labels[0])):
                raise StructuralError("initial base vertex out of range")
            if not (0 <= final < len(self._labels[0])):
                raise StructuralError("final base vertex out of range")
            self._base = (int(init), int(final))
        else:
            self._base = None

    # -- shape ----------------------------------------------------------

    @property
    def dims(self) -> tuple[int, ...]:
        return self._dims

    @property
    def max_dim(self) -> int:
        return len(self._labels) - 1

    @property
    def n_cells(self) -> int:
        return sum(self.dims)

    @property
    def base(self) -> Optional[tuple[Cell, Cell]]:
        if self._base is None:
            return None
        return ((0, self._base[0]), (0, self._base[1]))

    @property
    def is_bipointed(self) -> bool:
        return self._base is not None

    def cells(self) -> Iterator[Cell]:
        for d, layer in enumerate(self._labels):
            for k in range(len(layer)):
                yield (d, k)

    def cells_of_dim(self, d: int) -> list[Cell]:
        if 0 <= d <= self.max_dim:
            return [(d, k) for k in range(len(self._labels[d]))]
        return []

    def label(self, cell: Cell) -> str:
        return self._labels[cell[0]][cell[1]]

    def cell_of_label(self, name: str) -> Cell:
        try:
            return self._by_label[name]
        except KeyError:
            raise StructuralError(f"no cell labeled {name!r}") from None

    # -- faces ----------------------------------------------------------

    def face(self, cell: Cell, i: int, eps: int) -> Cell:
        d, k = cell
        if not (1 <= i <= d):
            raise ContractError(f"face index {i} out of range 1..{d} for {self.label(cell)!r}")
        if eps not in (0, 1):
            raise ContractError("eps must be 0 or 1")
        return (d - 1, self._faces[d][k][i - 1][eps])

    def iterated_face(self, cell: Cell, indices: Iterable[int], eps: int) -> Cell:
        """Apply d^eps at the given direction set, largest index first."""
        idx = sorted(set(indices), reverse=True)
        d = cell[0]
        if idx and (idx[0] > d or idx[-1] < 1):
            raise ContractError(
                f"index set {sorted(set(indices))} out of range 1..{d} for {self.label(cell)!r}"
            )
        for i in idx:
            cell = self.face(cell, i, eps)
        return cell

    def mixed_face(self, cell: Cell, assignments: Iterable[tuple[int, int]]) -> Cell:
        """Apply single faces (i, eps) in decreasing index order."""
        for i, eps in sorted(assignments, reverse=True):
            cell = self.face(cell, i, eps)
        return cell

    def initial_vertex(self, cell: Cell) -> Cell:
        return self.iterated_face(cell, range(1, cell[0] + 1), 0)

    def final_vertex(self, cell: Cell) -> Cell:
        return self.iterated_face(cell, range(1, cell[0] + 1), 1)

    def all_faces(self, cell: Cell) -> frozenset[Cell]:
        """Every iterated face of the cell, including the cell itself."""
        seen = {cell}
        frontier = [cell]
        while frontier:
            nxt = []
            for c in frontier:
                for i in range(1, c[0] + 1):
                    for eps in (0, 1):
                        f = self.face(c, i, eps)
                        if f not in seen:
                            seen.add(f)
                            nxt.append(f)
            frontier = nxt
        return frozenset(seen)

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        faces = []
        for d in range(1, self.max_dim + 1):
            for k in range(self.dims[d]):
                for i in range(1, d + 1):
                    for eps in (0, 1):
                        faces.append(
                            {
                                "dim": d,
                                "cell": k,
                                "i": i,
                                "eps": eps,
                                "to": self._faces[d][k][i - 1][eps],
                            }
                        )
        base = None
        if self._base is not None:
            base = {"init": self._base[0], "final": self._base[1]}
        return {"dims": list(self.dims), "faces": faces, "base": base}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "PrecubicalComplex":
        dims = data.get("dims")
        if not isinstance(dims, list):
            raise StructuralError("missing or invalid 'dims'")
        labels = [[f"c{d}_{k}" for k in range(count)] for d, count in enumerate(dims)]
        faces = {}
        for entry in data.get("faces", ()):
            key = (entry["dim"], entry["cell"], entry["i"], entry["eps"])
            faces[key] = entry["to"]
        raw_base = data.get("base")
        base = None
        if raw_base is not None:
            base = (raw_base["init"], raw_base["final"])
        return cls(labels, faces, base)

    @classmethod
    def from_json(cls, text: str) -> "PrecubicalComplex":
        return cls.from_json_dict(json.loads(text))

    def to_dot(self, name: str = "complex") -> str:
        """One-skeleton: vertices as nodes, edges as arrows from their lower
        to their upper endpoint, labeled by the edge cell."""
        def esc(text: str) -> str:
            return text.replace("\\", "\\\\").replace('"', '\\"')

        lines = [f"digraph {name} {{"]
        for k in range(self.dims[0] if self.max_dim >= 0 else 0):
            lines.append(f'  v{k} [label="{esc(self.label((0, k)))}"];')
        if self.max_dim >= 1:
            for k in range(self.dims[1]):
                lo = self._faces[1][k][0][0]
                hi = self._faces[1][k][0][1]
                lines.append(f'  v{lo} -> v{hi} [label="{esc(self.label((1, k)))}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"PrecubicalComplex(dims={list(self.dims)}, base={self._base})"


@dataclass(frozen=True)
class RelationViolation:
    """One failed precubical identity on a cell."""

    cell: Cell
    label: str
    i: int
    j: int
    eps: int
    eta: int
    left: Cell
    right: Cell

    def __str__(self) -> str:
        return (
            f"cell {self.label!r}: d^{self.eps}_{self.i} d^{self.eta}_{self.j} gives {self.left}, "
            f"d^{self.eta}_{self.j - 1} d^{self.eps}_{self.i} gives {self.right}"
        )


def validate_complex(K: PrecubicalComplex) -> list[RelationViolation]:
    """All violated precubical identities; empty iff K is a precubical set."""
    out = []
    for d in range(2, K.max_dim + 1):
        for cell in K.cells_of_dim(d):
            for j in range(2, d + 1):
                for i in range(1, j):
                    for eps in (0, 1):
                        for eta in (0, 1):
                            left = K.face(K.face(cell, j, eta), i, eps)
                            right = K.face(K.face(cell, i, eps), j - 1, eta)
                            if left != right:
                                out.append(
                                    RelationViolation(
                                        cell, K.label(cell), i, j, eps, eta, left, right
                                    )
                                )
    return out


class PrecubicalMap:
    """A dimension-preserving cell map commuting with all face maps."""

    __slots__ = ("source", "target", "_assign")

    def __init__(
        self,
        source: PrecubicalComplex,
        target: PrecubicalComplex,
        assignment: Sequence[Sequence[int]],
        check: bool = True,
    ):
        self.source = source
        self.target = target
        assign = []
        if len(assignment) != source.max_dim + 1:
            raise StructuralError(
                f"assignment covers {len(assignment)} dimensions, source has {source.max_dim + 1}"
            )
        for d, layer in enumerate(assignment):
            if len(layer) != source.dims[d]:
                raise StructuralError(f"assignment in dimension {d} has wrong length")
            if d > target.max_dim and layer:
                raise StructuralError(f"target has no cells in dimension {d}")
            for k in layer:
                if not (0 <= k < target.dims[d]):
                    raise StructuralError(f"assignment out of range in dimension {d}")
            assign.append(tuple(int(k) for k in layer))
        self._assign = tuple(assign)
        if check:
            bad = self.violations()
            if bad:
                raise ContractError(f"map does not commute with faces: {bad[0]}")

    def __call__(self, cell: Cell) -> Cell:
        return (cell[0], self._assign[cell[0]][cell[1]])

    def violations(self) -> list[str]:
        out = []
        for d in range(1, self.source.max_dim + 1):
            for cell in self.source.cells_of_dim(d):
                for i in range(1, d + 1):
                    for eps in (0, 1):
                        expected = self(self.source.face(cell, i, eps))
                        got = self.target.face(self(cell), i, eps)
                        if expected != got:
                            out.append(
                                f"f(d^{eps}_{i} {self.source.label(cell)!r}) = "
                                f"{self.target.label(expected)!r} but d^{eps}_{i} f = "
                                f"{self.target.label(got)!r}"
                            )
        return out

    @property
    def is_bipointed(self) -> bool:
        sb, tb = self.source.base, self.target.base
        if sb is None or tb is None:
            return False
        return self(sb[0]) == tb[0] and self(sb[1]) == tb[1]

    @property
    def is_bijective(self) -> bool:
        if self.source.dims != self.target.dims:
            return False
        return all(len(set(layer)) == len(layer) for layer in self._assign)

    def is_isomorphism(self) -> bool:
        return self.is_bijective and not self.violations()

    def inverse(self) -> "PrecubicalMap":
        if not self.is_bijective:
            raise ContractError("map is not bijective")
        assign = []
        for layer in self._assign:
            inv = [0] * len(layer)
            for k, v in enumerate(layer):
                inv[v] = k
            assign.append(inv)
        return PrecubicalMap(self.target, self.source, assign, check=False)

    def compose(self, other: "PrecubicalMap") -> "PrecubicalMap":
        """self after other (other's target must be self's source)."""
        if other.target is not self.source:
            raise ContractError("maps are not composable")
        assign = [
            [self._assign[d][k] for k in layer] for d, layer in enumerate(other._assign)
        ]
        return PrecubicalMap(other.source, self.target, assign, check=False)

    def assignment_key(self) -> tuple:
        return self._assign

    @staticmethod
    def identity(K: PrecubicalComplex) -> "PrecubicalMap":
        return PrecubicalMap(K, K, [list(range(c)) for c in K.dims], check=False)


# -- altitude -------------------------------------------------------------


def compute_altitude(K: PrecubicalComplex) -> Optional[dict[Cell, int]]:
    """The altitude labeling alt(d^eps_i c) = alt(c) + eps, if consistent.

    Constraints are propagated breadth-first over the undirected cell
    incidence graph; each connected component is anchored at a single cell
    (the initial base vertex for its component when K is bipointed, the
    least cell otherwise).  Returns None when any constraint closes
    inconsistently.
    """
    neighbors: dict[Cell, list[tuple[Cell, int]]] = {c: [] for c in K.cells()}
    for d in range(1, K.max_dim + 1):
        for cell in K.cells_of_dim(d):
            for i in range(1, d + 1):
                for eps in (0, 1):
                    f = K.face(cell, i, eps)
                    neighbors[cell].append((f, eps))
                    neighbors[f].append((cell, -eps))
    alt: dict[Cell, int] = {}
    anchors: list[Cell] = []
    if K.base is not None:
        anchors.append(K.base[0])
    anchors.extend(K.cells())
    for anchor in anchors:
        if anchor in alt:
            continue
        alt[anchor] = 0
        frontier = [anchor]
        while frontier:
            nxt = []
            for cell in frontier:
                here = alt[cell]
                for other, offset in neighbors[cell]:
                    want = here + offset
                    if other in alt:
                        if alt[other] != want:
                            return None
                    else:
                        alt[other] = want
                        nxt.append(other)
            frontier = nxt
    return alt


def is_altitude_labeling(K: PrecubicalComplex, alt: Mapping[Cell, int]) -> bool:
    for d in range(1, K.max_dim + 1):
        for cell in K.cells_of_dim(d):
            for i in range(1, d + 1):
                for eps in (0, 1):
                    if alt[K.face(cell, i, eps)] != alt[cell] + eps:
                        return False
    if K.base is not None and alt[K.base[0]] != 0:
        return False
    return True


# -- accessibility --------------------------------------------------------


def _accessible_indices(K: PrecubicalComplex) -> set[Cell]:
    if K.base is None:
        raise ContractError("accessibility needs a bipointed complex")
    fwd: dict[Cell, list[Cell]] = {c: [] for c in K.cells()}
    for d in range(1, K.max_dim + 1):
        for cell in K.cells_of_dim(d):
            for i in range(1, d + 1):
                fwd[K.face(cell, i, 0)].append(cell)  # d0_i(c) <= c
                fwd[cell].append(K.face(cell, i, 1))  # c <= d1_i(c)
    start, stop = K.base

    def reach(source, graph):
        seen = {source}
        frontier = [source]
        while frontier:
            nxt = []
            for c in frontier:
                for o in graph[c]:
                    if o not in seen:
                        seen.add(o)
                        nxt.append(o)
            frontier = nxt
        return seen

    from_start = reach(start, fwd)
    back: dict[Cell, list[Cell]] = {c: [] for c in K.cells()}
    for c, outs in fwd.items():
        for o in outs:
            back[o].append(c)
    to_stop = reach(stop, back)
    return from_start & to_stop


def _restrict(K: PrecubicalComplex, keep: set[Cell]) -> tuple[PrecubicalComplex, dict[Cell, Cell]]:
    """Sub-complex on `keep`, which must be face-closed; returns (L, old cell of new)."""
    labels: list[list[str]] = [[] for _ in range(K.max_dim + 1)]
    new_index: dict[Cell, Cell] = {}
    for d in range(K.max_dim + 1):
        for cell in K.cells_of_dim(d):
            if cell in keep:
                new_index[cell] = (d, len(labels[d]))
                labels[d].append(K.label(cell))
    faces = {}
    for cell in keep:
        d, _ = cell
        for i in range(1, d + 1):
            for eps in (0, 1):
                f = K.face(cell, i, eps)
                if f not in keep:
                    raise ContractError(
                        f"cell set is not face-closed: {K.label(cell)!r} keeps, {K.label(f)!r} does not"
                    )
                nd, nk = new_index[cell]
                faces[(nd, nk, i, eps)] = new_index[f][1]
    base = None
    if K.base is not None and K.base[0] in keep and K.base[1] in keep:
        base = (new_index[K.base[0]][1], new_index[K.base[1]][1])
    L = PrecubicalComplex(labels, faces, base)
    old_of_new = {v: k for k, v in new_index.items()}
    return L, old_of_new


def accessible_part(K: PrecubicalComplex) -> PrecubicalComplex:
    """Sub-complex of cells between the base points in the step preorder."""
    return _restrict(K, _accessible_indices(K))[0]


# -- non-self-linkedness ---------------------------------------------------


@dataclass(frozen=True)
class NonSelfLinkedReport:
    ok: bool
    cell: Optional[Cell] = None
    collision: Optional[tuple[tuple, tuple]] = None

    def __bool__(self) -> bool:
        return self.ok


def is_non_self_linked(K: PrecubicalComplex, dim_cap: int = 12) -> NonSelfLinkedReport:
    """Checks injectivity of the canonical map of every cell.

    The canonical map of an n-cell is evaluated on all 3^n cells of the
    standard n-cube, so dimensions above `dim_cap` raise ResourceCapError.
    """
    if K.max_dim > dim_cap:
        raise ResourceCapError(
            f"complex has dimension {K.max_dim}, above the 3^n enumeration cap {dim_cap}"
        )
    for d in range(0, K.max_dim + 1):
        for cell in K.cells_of_dim(d):
            images: dict[Cell, tuple] = {}
            for values in _cube_value_tuples(d):
                fixed = [(i + 1, v) for i, v in enumerate(values) if v != STAR]
                image = K.mixed_face(cell, fixed)
                if image in images:
                    return NonSelfLinkedReport(False, cell, (images[image], values))
                images[image] = values
    return NonSelfLinkedReport(True)


STAR = 2  # internal marker for a free coordinate of a standard-cube cell


def _cube_value_tuples(n: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for rest in _cube_value_tuples(n - 1):
        for v in (0, 1, STAR):
            yield rest + (v,)


# -- pullback ---------------------------------------------------------------


def pullback(
    p: PrecubicalMap, q: PrecubicalMap
) -> tuple[PrecubicalComplex, PrecubicalMap, PrecubicalMap]:
    """Levelwise pullback of p: K -> M and q: L -> M, with its projections."""
    if p.target is not q.target:
        raise ContractError("pullback needs maps into a common target")
    K, L = p.source, q.source
    top = min(K.max_dim, L.max_dim)
    labels: list[list[str]] = [[] for _ in range(top + 1)]
    pairs: list[list[tuple[int, int]]] = [[] for _ in range(top + 1)]
    index: dict[tuple[int, int, int], int] = {}
    for d in range(top + 1):
        for kk in range(K.dims[d]):
            for lk in range(L.dims[d]):
                if p((d, kk)) == q((d, lk)):
                    index[(d, kk, lk)] = len(pairs[d])
                    pairs[d].append((kk, lk))
                    labels[d].append(f"({K.label((d, kk))},{L.label((d, lk))})")
    faces = {}
    for d in range(1, top + 1):
        for n, (kk, lk) in enumerate(pairs[d]):
            for i in range(1, d + 1):
                for eps in (0, 1):
                    fk = K.face((d, kk), i, eps)[1]
                    fl = L.face((d, lk), i, eps)[1]
                    faces[(d, n, i, eps)] = index[(d - 1, fk, fl)]
    base = None
    if K.base is not None and L.base is not None:
        (k0, k1), (l0, l1) = K.base, L.base
        if p(k0) == q(l0) and p(k1) == q(l1):
            base = (index[(0, k0[1], l0[1])], index[(0, k1[1], l1[1])])
    P = PrecubicalComplex(labels, faces, base)
    proj1 = PrecubicalMap(P, K, [[kk for kk, _ in layer] for layer in pairs], check=False)
    proj2 = PrecubicalMap(P, L, [[lk for _, lk in layer] for layer in pairs], check=False)
    return P, proj1, proj2


# -- quotient by automorphisms ----------------------------------------------


def quotient_by_automorphisms(
    K: PrecubicalComplex, group: Sequence[PrecubicalMap]
) -> tuple[PrecubicalComplex, PrecubicalMap]:
    """Orbit quotient of K by a finite automorphism group.

    The group must act by automorphisms of K and be closed under composition
    and inverse (checked).  Induced faces are verified to be orbit-independent;
    genuine automorphism groups always pass, but the check is kept because
    nothing here assumes freeness.
    """
    if not group:
        raise ContractError("automorphism group must be nonempty")
    keys = set()
    for g in group:
        if g.source is not K or g.target is not K:
            raise ContractError("group elements must be maps K -> K")
        if not g.is_bijective:
            raise ContractError("group element is not bijective")
        if g.violations():
            raise ContractError("group element does not commute with faces")
        keys.add(g.assignment_key())
    ident = PrecubicalMap.identity(K).assignment_key()
    if ident not in keys:
        raise ContractError("group does not contain the identity")
    # closure and inverses on the raw assignment tuples
    for a in keys:
        inv = tuple(_invert_layer(layer) for layer in a)
        if inv not in keys:
            raise ContractError("group is not closed under inverse")
        for b in keys:
            composed = tuple(
                tuple(a_layer[k] for k in b_layer) for a_layer, b_layer in zip(a, b)
            )
            if composed not in keys:
                raise ContractError("group is not closed under composition")
    maps = {g.assignment_key(): g for g in group}

    orbit_of: dict[Cell, Cell] = {}
    orbits: dict[Cell, list[Cell]] = {}
    for cell in K.cells():
        if cell in orbit_of:
            continue
        members = sorted({g(cell) for g in maps.values()})
        rep = members[0]
        orbits[rep] = members
        for m in members:
            orbit_of[m] = rep

    reps: list[list[Cell]] = [[] for _ in range(K.max_dim + 1)]
    for rep in sorted(orbits):
        reps[rep[0]].append(rep)
    new_index = {rep: (d, k) for d in range(K.max_dim + 1) for k, rep in enumerate(reps[d])}

    faces = {}
    for d in range(1, K.max_dim + 1):
        for rep in reps[d]:
            for i in range(1, d + 1):
                for eps in (0, 1):
                    targets = {orbit_of[K.face(m, i, eps)] for m in orbits[rep]}
                    if len(targets) != 1:
                        raise ContractError(
                            f"induced face d^{eps}_{i} of orbit {K.label(rep)!r} is ill-defined"
                        )
                    nd, nk = new_index[rep]
                    faces[(nd, nk, i, eps)] = new_index[targets.pop()][1]

    labels = [[K.label(rep) for rep in layer] for layer in reps]
    base = None
    if K.base is not None:
        base = (new_index[orbit_of[K.base[0]]][1], new_index[orbit_of[K.base[1]]][1])
    Q = PrecubicalComplex(labels, faces, base)
    bad = validate_complex(Q)
    if bad:
        raise ContractError(f"quotient violates precubical identities: {bad[0]}")
    assign = [[0] * K.dims[d] for d in range(K.max_dim + 1)]
    for cell in K.cells():
        assign[cell[0]][cell[1]] = new_index[orbit_of[cell]][1]
    projection = PrecubicalMap(K, Q, assign)
    return Q, projection


def _invert_layer(layer: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(layer)
    for k, v in enumerate(layer):
        inv[v] = k
    return tuple(inv)


# -- length covering ---------------------------------------------------------


@dataclass(frozen=True)
class LengthCovering:
    complex: PrecubicalComplex
    projection: PrecubicalMap  # onto the covered complex
    altitude: dict[Cell, int]


def length_covering(K: PrecubicalComplex, n: int) -> LengthCovering:
    """The length-n covering: pairs (cell, height) restricted to the
    accessible part, with base ((0,0), (1,n)).

    Heights are generated with 0 <= h and h + dim <= n; accessible cells of
    the unbounded covering satisfy both bounds (altitude and altitude+dim are
    monotone along accessibility witness chains), so nothing is lost and the
    face table stays total.
    """
    if K.base is None:
        raise ContractError("length covering needs a bipointed complex")
    if n < 0:
        raise ContractError("length must be nonnegative")
    labels: list[list[str]] = [[] for _ in range(K.max_dim + 1)]
    index: dict[tuple[int, int, int], int] = {}
    members: list[list[tuple[int, int]]] = [[] for _ in range(K.max_dim + 1)]
    for d in range(K.max_dim + 1):
        for k in range(K.dims[d]):
            for h in range(0, n - d + 1):
                index[(d, k, h)] = len(members[d])
                members[d].append((k, h))
                labels[d].append(f"{K.label((d, k))}@{h}")
    faces = {}
    for d in range(1, K.max_dim + 1):
        for m, (k, h) in enumerate(members[d]):
            for i in range(1, d + 1):
                for eps in (0, 1):
                    fk = K.face((d, k), i, eps)[1]
                    faces[(d, m, i, eps)] = index[(d - 1, fk, h + eps)]
    init = index.get((0, K.base[0][1], 0))
    final = index.get((0, K.base[1][1], n))
    bounded = PrecubicalComplex(labels, faces, (init, final))
    keep = _accessible_indices(bounded)
    if not keep:
        empty = PrecubicalComplex([], {}, None)
        return LengthCovering(empty, PrecubicalMap(empty, K, [], check=False), {})
    restricted, old_of_new = _restrict(bounded, keep)
    assign: list[list[int]] = [[0] * c for c in restricted.dims]
    altitude: dict[Cell, int] = {}
    for cell in restricted.cells():
        d, _ = cell
        old = old_of_new[cell]
        k, h = members[d][old[1]]
        assign[d][cell[1]] = k
        altitude[cell] = h
    projection = PrecubicalMap(restricted, K, assign)
    return LengthCovering(restricted, projection, altitude)


# -- sums and wedges ----------------------------------------------------------


def disjoint_union(K: PrecubicalComplex, L: PrecubicalComplex) -> PrecubicalComplex:
    """Disjoint union; labels are prefixed to stay unique, no base is set."""
    top = max(K.max_dim, L.max_dim)
    labels = [
        [f"L:{K.label((d, k))}" for k in range(K.dims[d] if d <= K.max_dim else 0)]
        + [f"R:{L.label((d, k))}" for k in range(L.dims[d] if d <= L.max_dim else 0)]
        for d in range(top + 1)
    ]
    faces = {}
    for d in range(1, top + 1):
        offset = K.dims[d] if d <= K.max_dim else 0
        off_lower = K.dims[d - 1] if d - 1 <= K.max_dim else 0
        if d <= K.max_dim:
            for k in range(K.dims[d]):
                for i in range(1, d + 1):
                    for eps in (0, 1):
                        faces[(d, k, i, eps)] = K.face((d, k), i, eps)[1]
        if d <= L.max_dim:
            for k in range(L.dims[d]):
                for i in range(1, d + 1):
                    for eps in (0, 1):
                        faces[(d, offset + k, i, eps)] = off_lower + L.face((d, k), i, eps)[1]
    return PrecubicalComplex(labels, faces, None)


def with_base(K: PrecubicalComplex, init_label: str, final_label: str) -> PrecubicalComplex:
    init = K.cell_of_label(init_label)
    final = K.cell_of_label(final_label)
    if init[0] != 0 or final[0] != 0:
        raise ContractError("base cells must be vertices")
    faces = {}
    for d in range(1, K.max_dim + 1):
        for k in range(K.dims[d]):
            for i in range(1, d + 1):
                for eps in (0, 1):
                    faces[(d, k, i, eps)] = K.face((d, k), i, eps)[1]
    labels = [[K.label((d, k)) for k in range(K.dims[d])] for d in range(K.max_dim + 1)]
    return PrecubicalComplex(labels, faces, (init[1], final[1]))


def serial_wedge(K: PrecubicalComplex, L: PrecubicalComplex) -> PrecubicalComplex:
    """K wedge L: glue the final vertex of K to the initial vertex of L."""
    if K.base is None or L.base is None:
        raise ContractError("serial wedge needs bipointed complexes")
    top = max(K.max_dim, L.max_dim)
    glue_k = K.base[1][1]  # final vertex index of K
    glue_l = L.base[0][1]  # initial vertex index of L

    def l_vertex(k: int) -> int:
        # L's vertices map after K's, skipping the glued one
        if k == glue_l:
            return glue_k
        return K.dims[0] + (k if k < glue_l else k - 1)

    labels: list[list[str]] = []
    for d in range(top + 1):
        layer = []
        for k in range(K.dims[d] if d <= K.max_dim else 0):
            layer.append(f"L:{K.label((d, k))}")
        for k in range(L.dims[d] if d <= L.max_dim else 0):
            if d == 0 and k == glue_l:
                continue
            layer.append(f"R:{L.label((d, k))}")
        labels.append(layer)

    def l_cell(d: int, k: int) -> int:
        if d == 0:
            return l_vertex(k)
        return (K.dims[d] if d <= K.max_dim else 0) + k

    faces = {}
    for d in range(1, top + 1):
        if d <= K.max_dim:
            for k in range(K.dims[d]):
                for i in range(1, d + 1):
                    for eps in (0, 1):
                        faces[(d, k, i, eps)] = K.face((d, k), i, eps)[1]
        if d <= L.max_dim:
            for k in range(L.dims[d]):
                for i in range(1, d + 1):
                    for eps in (0, 1):
                        faces[(d, l_cell(d, k), i, eps)] = l_cell(d - 1, L.face((d, k), i, eps)[1])
    base = (K.base[0][1], l_vertex(L.base[1][1]))
    return PrecubicalComplex(labels, faces, base)
