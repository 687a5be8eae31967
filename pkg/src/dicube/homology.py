"""Exact integer linear algebra for finite chain complexes.

Smith normal form over Z with optional unimodular transforms, and integral
homology (Betti numbers plus torsion coefficients in divisibility order).
All arithmetic uses Python's arbitrary-precision integers; there is no
floating point and no modular shortcut anywhere.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from .errors import ContractError

# A sparse column: row index -> nonzero integer coefficient.
Column = dict


@dataclass(frozen=True)
class HomologyGroup:
    """One integral homology group: free rank plus torsion d1 | d2 | ..."""

    betti: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = []
        if self.betti == 1:
            parts.append("Z")
        elif self.betti > 1:
            parts.append(f"Z^{self.betti}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json_dict(self, dim: int) -> dict:
        return {"dim": dim, "betti": self.betti, "torsion": list(self.torsion)}


class ChainComplex:
    """Chain complex of free Z-modules with explicit integer boundaries.

    ``ranks[k]`` is the rank of the degree-k module.  ``boundaries[k-1]``
    is the matrix of the boundary map from degree k to degree k-1, stored
    column-sparse: a list (one entry per degree-k generator) of
    ``{row: coefficient}`` dicts.  Dense ``list[list[int]]`` input is
    accepted and converted.
    """

    def __init__(self, ranks: Sequence[int], boundaries: Sequence, check: bool = True):
        self.ranks = tuple(int(r) for r in ranks)
        if any(r < 0 for r in self.ranks):
            raise ContractError("ranks must be nonnegative")
        if len(boundaries) != max(len(self.ranks) - 1, 0):
            raise ContractError(
                f"expected {max(len(self.ranks) - 1, 0)} boundary matrices, got {len(boundaries)}"
            )
        self._cols: list[list[Column]] = []
        for k, raw in enumerate(boundaries, start=1):
            self._cols.append(self._normalize(raw, nrows=self.ranks[k - 1], ncols=self.ranks[k]))
        if check:
            self.check_boundary_squares_to_zero()

    @staticmethod
    def _normalize(raw, nrows: int, ncols: int) -> list[Column]:
        cols: list[Column] = []
        if raw and isinstance(raw[0], dict):
            source = list(raw)
        elif raw and isinstance(raw[0], (list, tuple)):
            # dense rows -> sparse columns
            if len(raw) != nrows:
                raise ContractError(f"boundary has {len(raw)} rows, expected {nrows}")
            source = []
            for j in range(ncols):
                col = {}
                for i in range(nrows):
                    v = raw[i][j]
                    if v:
                        col[i] = int(v)
                source.append(col)
        else:
            source = list(raw)
        if len(source) != ncols:
            raise ContractError(f"boundary has {len(source)} columns, expected {ncols}")
        for col in source:
            clean = {}
            for r, v in col.items():
                if not (0 <= r < nrows):
                    raise ContractError(f"row index {r} out of range 0..{nrows - 1}")
                if v:
                    clean[int(r)] = int(v)
            cols.append(clean)
        return cols

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def boundary_columns(self, k: int) -> list[Column]:
        """Sparse columns of the boundary map degree k -> k-1 (1 <= k <= top)."""
        return self._cols[k - 1]

    def boundary_dense(self, k: int) -> list[list[int]]:
        rows = [[0] * self.ranks[k] for _ in range(self.ranks[k - 1])]
        for j, col in enumerate(self._cols[k - 1]):
            for i, v in col.items():
                rows[i][j] = v
        return rows

    def check_boundary_squares_to_zero(self) -> None:
        for k in range(2, len(self.ranks)):
            lower = self._cols[k - 2]
            for j, col in enumerate(self._cols[k - 1]):
                acc: Column = {}
                for mid, v in col.items():
                    for r, w in lower[mid].items():
                        acc[r] = acc.get(r, 0) + v * w
                if any(acc.values()):
                    raise ContractError(
                        f"boundary composite is nonzero on degree-{k} generator {j}"
                    )

    def euler_from_ranks(self) -> int:
        return sum((-1) ** k * r for k, r in enumerate(self.ranks))


@dataclass(frozen=True)
class SmithNormalForm:
    """Diagonal of the Smith normal form, plus transforms when requested.

    ``diagonal`` lists the positive invariant factors d1 | d2 | ...; zero
    rows/columns are dropped.  When transforms are requested, U (m x m) and
    V (n x n) are unimodular with U * M * V equal to the padded diagonal.
    """

    diagonal: tuple[int, ...]
    shape: tuple[int, int]
    U: tuple[tuple[int, ...], ...] | None = None
    V: tuple[tuple[int, ...], ...] | None = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    def padded(self) -> list[list[int]]:
        m, n = self.shape
        out = [[0] * n for _ in range(m)]
        for t, d in enumerate(self.diagonal):
            out[t][t] = d
        return out


def smith_normal_form(matrix: Sequence[Sequence[int]], transforms: bool = False) -> SmithNormalForm:
    """Smith normal form of an integer matrix.

    Pivots are chosen as the smallest nonzero absolute value with row and
    column swaps, followed by a divisibility fix-up, so the diagonal is a
    divisibility chain.  With ``transforms=True`` the accumulated row and
    column operations are returned as unimodular U and V.
    """
    a = [[int(v) for v in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    if any(len(row) != n for row in a):
        raise ContractError("ragged matrix")
    diag, U, V = _dense_smith(a, m, n, transforms)
    return SmithNormalForm(
        diagonal=tuple(diag),
        shape=(m, n),
        U=tuple(map(tuple, U)) if U is not None else None,
        V=tuple(map(tuple, V)) if V is not None else None,
    )


def _dense_smith(a, m, n, want_transforms):
    """In-place dense SNF; returns (diagonal list, U or None, V or None)."""
    U = [[int(i == j) for j in range(m)] for i in range(m)] if want_transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if want_transforms else None

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            if U is not None:
                U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            if V is not None:
                for row in V:
                    row[i], row[j] = row[j], row[i]

    def add_row(dst, src, factor):
        if factor:
            arow, srow = a[dst], a[src]
            for c in range(n):
                arow[c] += factor * srow[c]
            if U is not None:
                urow, usrc = U[dst], U[src]
                for c in range(m):
                    urow[c] += factor * usrc[c]

    def add_col(dst, src, factor):
        if factor:
            for row in a:
                row[dst] += factor * row[src]
            if V is not None:
                for row in V:
                    row[dst] += factor * row[src]

    def negate_row(i):
        a[i] = [-v for v in a[i]]
        if U is not None:
            U[i] = [-v for v in U[i]]

    t = 0
    limit = min(m, n)
    while t < limit:
        # pivot: smallest nonzero absolute value in the trailing submatrix
        pivot = None
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            if a[t][t] < 0:
                negate_row(t)
            # clear column t
            restart = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        restart = True
                        break
            if restart:
                continue
            # clear row t
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        restart = True
                        break
            if restart:
                continue
            if any(a[i][t] for i in range(t + 1, m)):
                continue
            # divisibility fix-up: every trailing entry must be divisible
            d = a[t][t]
            offender = None
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % d:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        t += 1
    diag = [a[k][k] for k in range(limit) if a[k][k]]
    return diag, U, V


def _rank_and_divisors(columns: list[Column], nrows: int) -> tuple[int, tuple[int, ...]]:
    """Rank and invariant factors of a column-sparse integer matrix.

    Unit pivots are eliminated sparsely (Markowitz-flavoured: shortest rows
    first, then sparsest column); whatever remains without a +-1 entry is
    handed to the dense routine.  Unimodular row/column operations preserve
    the invariant factors, so the result equals the dense SNF diagonal.
    """
    rows: dict[int, dict[int, int]] = {}
    for c, col in enumerate(columns):
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[c] = v
    col_rows: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            col_rows.setdefault(c, set()).add(r)

    heap = [(len(row), r) for r, row in rows.items()]
    heapq.heapify(heap)
    unit_rank = 0
    while heap:
        length, r = heapq.heappop(heap)
        row = rows.get(r)
        if row is None:
            continue
        if len(row) != length:
            heapq.heappush(heap, (len(row), r))
            continue
        units = [(len(col_rows[c]), c) for c, v in row.items() if v == 1 or v == -1]
        if not units:
            # rows are re-queued whenever elimination touches them, so a
            # unit-free row can be dropped here for good
            continue
        c = min(units)[1]
        piv = row[c]
        prow = rows.pop(r)
        if piv == -1:
            prow = {cc: -vv for cc, vv in prow.items()}
        for cc in prow:
            col_rows[cc].discard(r)
        for rr in sorted(col_rows.get(c, ())):
            other = rows[rr]
            f = other[c]
            for cc, vv in prow.items():
                new = other.get(cc, 0) - f * vv
                if new:
                    other[cc] = new
                    col_rows.setdefault(cc, set()).add(rr)
                elif cc in other:
                    del other[cc]
                    col_rows[cc].discard(rr)
            if other:
                heapq.heappush(heap, (len(other), rr))
            else:
                del rows[rr]
        unit_rank += 1

    if not rows:
        return unit_rank, (1,) * unit_rank
    live_rows = sorted(rows)
    live_cols = sorted({c for row in rows.values() for c in row})
    cpos = {c: j for j, c in enumerate(live_cols)}
    dense = [[0] * len(live_cols) for _ in live_rows]
    for i, r in enumerate(live_rows):
        for c, v in rows[r].items():
            dense[i][cpos[c]] = v
    diag, _, _ = _dense_smith(dense, len(live_rows), len(live_cols), False)
    return unit_rank + len(diag), (1,) * unit_rank + tuple(diag)


def boundary_rank_and_divisors(complex: ChainComplex, k: int) -> tuple[int, tuple[int, ...]]:
    if k <= 0 or k > complex.top_degree:
        return 0, ()
    return _rank_and_divisors(complex.boundary_columns(k), complex.ranks[k - 1])


def homology(complex: ChainComplex) -> tuple[HomologyGroup, ...]:
    """Integral homology of a validated chain complex.

    H_k has free rank rank(C_k) - rank(d_k) - rank(d_{k+1}) and torsion the
    invariant factors > 1 of d_{k+1}.
    """
    complex.check_boundary_squares_to_zero()
    info = {k: boundary_rank_and_divisors(complex, k) for k in range(1, complex.top_degree + 1)}
    groups = []
    for k, rk in enumerate(complex.ranks):
        rank_in = info.get(k, (0, ()))[0]
        rank_out, divisors = info.get(k + 1, (0, ()))
        betti = rk - rank_in - rank_out
        if betti < 0:
            raise ContractError(f"negative Betti number in degree {k}; boundaries inconsistent")
        torsion = tuple(d for d in divisors if d > 1)
        groups.append(HomologyGroup(betti, torsion))
    return tuple(groups)


def euler_characteristic(complex: ChainComplex) -> int:
    """Alternating sum of the chain ranks, cross-checked against homology."""
    chi = complex.euler_from_ranks()
    chi_h = sum((-1) ** k * g.betti for k, g in enumerate(homology(complex)))
    if chi != chi_h:
        raise ContractError(f"rank Euler characteristic {chi} != homological {chi_h}")
    return chi


def homology_to_json(groups: Sequence[HomologyGroup]) -> list[dict]:
    return [g.to_json_dict(k) for k, g in enumerate(groups)]


def same_homology(a: Sequence[HomologyGroup], b: Sequence[HomologyGroup]) -> bool:
    """Equal Betti numbers and torsion multisets degreewise (trailing zeros ignored)."""

    def trimmed(groups):
        out = [(g.betti, tuple(sorted(g.torsion))) for g in groups]
        while out and out[-1] == (0, ()):
            out.pop()
        return out

    return trimmed(a) == trimmed(b)
