"""Cube chains: enumeration, the face-refinement order on them (valid for
non-self-linked complexes with an altitude labeling), and the constructive
face-swap identity on standard cubes."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .complexes import build_standard_cube
from .errors import ContractError, ResourceCapError, enumeration_cap
from .posets import Poset
from .precubical import (
    Cell,
    PrecubicalComplex,
    compute_altitude,
    is_non_self_linked,
)


@dataclass(frozen=True)
class CubeChain:
    """A run of positive-dimensional cubes joined final-vertex-to-initial-vertex."""

    cells: tuple[Cell, ...]

    @property
    def length(self) -> int:
        return sum(d for d, _ in self.cells)

    @property
    def dimension_vector(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.cells)

    def text(self, K: PrecubicalComplex) -> str:
        return ";".join(K.label(c) for c in self.cells)


def chain_is_valid(K: PrecubicalComplex, chain: CubeChain) -> bool:
    if K.base is None:
        return False
    if any(d <= 0 for d, _ in chain.cells):
        return False
    start, stop = K.base
    if not chain.cells:
        return start == stop
    if K.initial_vertex(chain.cells[0]) != start:
        return False
    if K.final_vertex(chain.cells[-1]) != stop:
        return False
    return all(
        K.final_vertex(a) == K.initial_vertex(b)
        for a, b in zip(chain.cells, chain.cells[1:])
    )


def enumerate_chains(K: PrecubicalComplex, node_cap: Optional[int] = None) -> list[CubeChain]:
    """All cube chains from the initial to the final vertex, in lexicographic
    cell order.

    With an altitude labeling the search is finite by itself (altitudes rise
    strictly along a chain); without one the node cap bounds it and a
    ResourceCapError reports blow-ups such as loops through the base vertex.
    """
    if K.base is None:
        raise ContractError("cube chains need a bipointed complex")
    cap = node_cap if node_cap is not None else enumeration_cap()
    alt = compute_altitude(K)
    start, stop = K.base
    outgoing: dict[Cell, list[Cell]] = {}
    for d in range(1, K.max_dim + 1):
        for cell in K.cells_of_dim(d):
            outgoing.setdefault(K.initial_vertex(cell), []).append(cell)
    for lst in outgoing.values():
        lst.sort()

    found: list[CubeChain] = []
    nodes = 0
    stack: list[tuple[Cell, tuple[Cell, ...]]] = [(start, ())]
    while stack:
        vertex, prefix = stack.pop()
        nodes += 1
        if nodes > cap:
            raise ResourceCapError(f"chain search exceeded {cap} nodes")
        if vertex == stop:
            found.append(CubeChain(prefix))
        if alt is not None and alt[vertex] >= alt[stop]:
            continue
        for cell in reversed(outgoing.get(vertex, ())):
            stack.append((K.final_vertex(cell), prefix + (cell,)))
    if start != stop:
        found = [c for c in found if c.cells]
    found.sort(key=lambda c: c.cells)
    return found


class ChainOrder:
    """Comparison context for cube chains of one complex.

    The face-refinement criterion (`every cube of a is an iterated face of
    some cube of b`) characterises the chain order only for non-self-linked
    complexes with an altitude labeling, so both are checked once here and a
    ContractError is raised otherwise.
    """

    def __init__(self, K: PrecubicalComplex, dim_cap: int = 12):
        self.K = K
        if compute_altitude(K) is None:
            raise ContractError("chain order needs an altitude labeling")
        report = is_non_self_linked(K, dim_cap)
        if not report.ok:
            raise ContractError(
                f"chain order needs a non-self-linked complex; canonical map of "
                f"{K.label(report.cell)!r} is not injective"
            )
        self._faces = {cell: K.all_faces(cell) for cell in K.cells()}

    def leq(self, a: CubeChain, b: CubeChain) -> bool:
        return all(any(cube in self._faces[big] for big in b.cells) for cube in a.cells)


def chain_leq(K: PrecubicalComplex, a: CubeChain, b: CubeChain) -> bool:
    return ChainOrder(K).leq(a, b)


def chain_poset(K: PrecubicalComplex, node_cap: Optional[int] = None) -> tuple[Poset, list[CubeChain]]:
    """The poset of cube chains under face refinement (antisymmetry verified)."""
    order = ChainOrder(K)
    chains = enumerate_chains(K, node_cap)
    leq = [[order.leq(a, b) for b in chains] for a in chains]
    for i, a in enumerate(chains):
        for j in range(len(chains)):
            if i != j and leq[i][j] and leq[j][i]:
                raise ContractError(f"chain order not antisymmetric at {a.text(K)}")
    poset = Poset([tuple(K.label(cell) for cell in c.cells) for c in chains], leq)
    return poset, chains


# -- the face-swap identity ----------------------------------------------------


@lru_cache(maxsize=None)
def _cube(n: int) -> PrecubicalComplex:
    return build_standard_cube(n)


def _face_swap_holds(p: int, q: int, V: frozenset, W: frozenset, Vp: frozenset, Wp: frozenset) -> bool:
    """Checks d^1_V d^0_{W'} = d^0_W d^1_{V'} on the top cell of the standard
    s-cube; composites of face maps are determined by their value there."""
    s = p + len(W)
    cube = _cube(s)
    top = (s, 0)
    left = cube.iterated_face(cube.iterated_face(top, Wp, 0), V, 1)
    right = cube.iterated_face(cube.iterated_face(top, Vp, 1), W, 0)
    return left == right


def face_swap(p: int, q: int, V, W) -> tuple[frozenset, frozenset]:
    """Index sets (V', W') with |V'| = |V|, |W'| = |W| making
    d^1_V d^0_{W'} = d^0_W d^1_{V'} a precubical identity on the (p+|W|)-cube.

    Computed by recursion on s = p + |W| and verified symbolically on the
    standard cube before returning.
    """
    V = frozenset(V)
    W = frozenset(W)
    if p < 0 or q < 0:
        raise ContractError("cube dimensions must be nonnegative")
    if not V <= frozenset(range(1, p + 1)):
        raise ContractError(f"V must be a subset of 1..{p}")
    if not W <= frozenset(range(1, q + 1)):
        raise ContractError(f"W must be a subset of 1..{q}")
    if p - len(V) != q - len(W):
        raise ContractError("need p - |V| = q - |W|")
    Vp, Wp = _face_swap_rec(p, q, V, W)
    if not _face_swap_holds(p, q, V, W, Vp, Wp):
        raise AssertionError("face swap recursion produced a non-identity")
    return Vp, Wp


def _face_swap_rec(p: int, q: int, V: frozenset, W: frozenset) -> tuple[frozenset, frozenset]:
    s = p + len(W)
    if p == 0 or q == 0:
        # forced: V' = V and W' = W (one of them is everything, the other empty)
        return V, W
    if q in W:
        Vp, Wp = _face_swap_rec(p, q - 1, V, W - {q})
        return Vp, Wp | {s}
    if p in V:
        Vp, Wp = _face_swap_rec(p - 1, q, V - {p}, W)
        return Vp | {s}, Wp
    return _face_swap_rec(p - 1, q - 1, V, W)
