"""
Representative-independent computation of d(i, j) = dim(E^i ∩ L_j).

L_j is the Q[[t^{-1}]]-span of the unfolded columns with index <= j, which is
A·O^n for the matrix A whose columns are the unfolded columns j-n+1, ..., j
written in the basis e_1, ..., e_n.  A vector v lies in L_j iff A^{-1} v has
entries in O, i.e. ord((adj A · v)_r) >= ord(det A) for every r.  Vectors of
E^i ∩ L_j are supported on rows (i, B] with B = j + nD + n, so d(i, j) is the
dimension of the solution space of a finite exact linear system.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .affine_perm import AffinePermutation, rank_fn, residue_split
from .diagram import essential_fundamental_domain, stabilization_bound
from .errors import BandTooNarrow, ResidueCollision, SingularMatrix
from .laurent import LaurentMatrix
from .rank_engine import SpanBasis, check_compatible

__all__ = [
    "lattice_basis", "support_cutoff", "oracle_dim", "oracle_dim_column", "OracleDim",
    "oracle_table", "oracle_membership", "opposite_cell_of",
]


@dataclass(frozen=True)
class OracleDim:
    i: int
    j: int
    value: int

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "d": self.value}


def lattice_basis(M: LaurentMatrix, j: int) -> LaurentMatrix:
    """Columns j-n+1..j of the unfolding as a K-basis matrix, ordered by residue."""
    n = M.n
    rows = [[None] * n for _ in range(n)]
    for b in range(j - n + 1, j + 1):
        q, d = residue_split(n, b)
        for r in range(n):
            rows[r][d - 1] = M[r, d - 1].shift(q)
    return LaurentMatrix(rows)


def support_cutoff(M: LaurentMatrix, j: int) -> int:
    """Rows above this index vanish on every element of L_j."""
    return j + M.n * M.D + M.n


@lru_cache(maxsize=4096)
def _lattice_data(M: LaurentMatrix, j: int):
    A = lattice_basis(M, j)
    if A.det.is_zero():
        raise SingularMatrix("determinant vanishes")
    adj = A.adjugate
    return adj, A.det.ord()


def _unknown_column(M: LaurentMatrix, j: int, m: int) -> dict:
    """
    The equations touched by unknown x_m (coefficient of e_m).

    e_m = t^{q} e_c contributes x_m t^q adj[r][c] to (adj A v)_r; every
    coefficient at a t^{-1}-exponent below ord(det A) must cancel.
    """
    adj, bound = _lattice_data(M, j)
    q, c = residue_split(M.n, m)
    col = {}
    for r in range(M.n):
        for key, a in adj[r, c - 1].coeffs.items():
            k = key - q
            if k < bound:
                col[(k, r)] = a
    return col


class _ColumnSweep:
    """
    Rows (i, B] of column j as unknowns, added from B downward.  The sweep is
    kept so later queries deeper in the same column only pay for new rows.
    """

    def __init__(self, M: LaurentMatrix, j: int):
        self.M, self.j = M, j
        self.B = support_cutoff(M, j)
        self.basis = SpanBasis()
        self.values = {}
        self.next_row = self.B

    def extend_to(self, i_lo: int) -> None:
        while self.next_row >= i_lo:
            i = self.next_row
            self.values[i] = (self.B - i) - self.basis.rank
            self.basis.add(_unknown_column(self.M, self.j, i))
            self.next_row -= 1

    def get(self, i: int) -> int:
        if i > self.B:
            return 0
        self.extend_to(i)
        return self.values[i]


@lru_cache(maxsize=1024)
def _sweep(M: LaurentMatrix, j: int) -> _ColumnSweep:
    _lattice_data(M, j)
    return _ColumnSweep(M, j)


def _reduce(n: int, i: int, j: int) -> tuple[int, int]:
    # t maps L_j onto L_{j+n} and E^i onto E^{i+n}, so d(i, j) is (n, n)-periodic
    q = (j - 1) // n
    return i - n * q, j - n * q


def oracle_dim_column(M: LaurentMatrix, j: int, i_lo: int) -> dict[int, int]:
    """d(i, j) for every i >= i_lo up to the support cutoff (0 beyond it)."""
    q = (j - 1) // M.n
    sweep = _sweep(M, j - M.n * q)
    sweep.extend_to(i_lo - M.n * q)
    return {i: sweep.get(i - M.n * q) for i in range(i_lo, support_cutoff(M, j) + 1)}


def oracle_dim(M: LaurentMatrix, i: int, j: int) -> int:
    i0, j0 = _reduce(M.n, i, j)
    return _sweep(M, j0).get(i0)


def oracle_table(M: LaurentMatrix, rows: range, cols: range) -> dict[tuple[int, int], int]:
    return {(i, j): oracle_dim(M, i, j) for j in cols for i in rows}


def _exhaustive_rows(M: LaurentMatrix, w: AffinePermutation, j: int) -> range:
    n = w.n
    lo = stabilization_bound(w, j) - n * (M.D - M.N + 2)
    hi = max(w(jp) for jp in range(j - n + 1, j + 1))
    return range(lo, hi + 1)


def oracle_membership(M: LaurentMatrix, w: AffinePermutation, exhaustive: bool = False) -> bool:
    """
    Whether the flag of M satisfies d(i, j) >= rank_fn(w, i, j) at every
    essential box of w (hence everywhere); ``exhaustive=True`` instead checks a
    full band of rows for each column in [1, n].
    """
    check_compatible(M, w)
    if not exhaustive:
        return all(oracle_dim(M, b.i, b.j) >= b.r_target for b in essential_fundamental_domain(w))
    for j in range(1, w.n + 1):
        if any(oracle_dim(M, i, j) < rank_fn(w, i, j) for i in _exhaustive_rows(M, w, j)):
            return False
    return True


def _jump_column(M: LaurentMatrix, i: int, cols: range) -> int | None:
    for j in cols:
        if oracle_dim(M, i - 1, j) - oracle_dim(M, i, j) == 1:
            return j
    return None


def opposite_cell_of(M: LaurentMatrix, band: int | None = None) -> AffinePermutation:
    """
    The affine permutation u with rank_fn(u, ., .) equal to the d-table of M.

    u^{-1}(i) is the first column j at which d(i - 1, j) - d(i, j) becomes 1.
    The search radius doubles until every jump is found; the result is then
    checked against the d-table on rows and columns [1 - band, n + band].
    """
    if M.det.is_zero():
        raise SingularMatrix("determinant vanishes")
    n = M.n
    spread = M.D - M.N + 2
    if band is None:
        band = n * spread + n
    radius = 2 * n * spread
    inv = []
    for i in range(1, n + 1):
        found = None
        while found is None and radius <= 64 * n * spread:
            found = _jump_column(M, i, range(i - radius, i + radius + 1))
            if found is None:
                radius *= 2
        if found is None:
            raise BandTooNarrow(f"no rank jump for row {i} within radius {radius // 2}")
        inv.append(found)
    try:
        u = AffinePermutation(n, tuple(inv)).inverse()
    except ResidueCollision as exc:
        raise BandTooNarrow(f"jump columns do not form an affine permutation: {inv}") from exc
    span = range(1 - band, n + band + 1)
    table = oracle_table(M, span, span)
    bad = [(i, j) for (i, j), d in table.items() if d != rank_fn(u, i, j)]
    if bad:
        raise BandTooNarrow(f"d-table disagrees with rank_fn({u}) at {bad[:3]}")
    return u

