"""
The periodic unfolding of a LaurentMatrix into a Z x Z scalar matrix.

With e_{nq + c} = t^q e_c, column b = n*q_b + d of the unfolding holds the
coordinates of M(e_b) = t^{q_b} M e_d.  The entry in row a = n*q_a + c is
therefore the coefficient of t^{q_a - q_b} in M[c, d], i.e. the stored key
q_b - q_a.  Nothing is materialised; callers pull finite windows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .affine_perm import residue_split
from .laurent import LaurentMatrix

__all__ = [
    "entry", "column", "column_support", "support_bound", "row_floor",
    "BoxSubmatrix", "box_submatrix", "window", "dump_window",
]


def entry(M: LaurentMatrix, a: int, b: int) -> Fraction:
    qa, c = residue_split(M.n, a)
    qb, d = residue_split(M.n, b)
    return M[c - 1, d - 1][qb - qa]


def column(M: LaurentMatrix, b: int) -> dict[int, Fraction]:
    """Sparse column b as {row: value}."""
    n = M.n
    qb, d = residue_split(n, b)
    out = {}
    for c in range(1, n + 1):
        for key, v in M[c - 1, d - 1].coeffs.items():
            out[c + n * (qb - key)] = v
    return out


def column_support(M: LaurentMatrix, b: int) -> tuple[int, int] | None:
    """Smallest row interval holding the nonzero entries of column b (None if zero)."""
    rows = column(M, b)
    if not rows:
        return None
    return min(rows), max(rows)


def support_bound(M: LaurentMatrix, b: int) -> tuple[int, int]:
    """The a-priori interval [b + nN - (n-1), b + nD + (n-1)] containing column b."""
    n = M.n
    return b + n * M.N - (n - 1), b + n * M.D + (n - 1)


def row_floor(M: LaurentMatrix, j: int, l: int) -> int:
    """Lowest row index that can be nonzero in columns [j - l + 1, j]."""
    return support_bound(M, j - l + 1)[0]


@dataclass(frozen=True)
class BoxSubmatrix:
    row_lo: int
    row_hi: int
    col_lo: int
    col_hi: int
    data: tuple[tuple[Fraction, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return max(0, self.row_hi - self.row_lo + 1), max(0, self.col_hi - self.col_lo + 1)


def box_submatrix(M: LaurentMatrix, i: int, j: int, l: int) -> BoxSubmatrix:
    """
    Rows (-inf, i] x columns [j - l + 1, j] of the unfolding, cut to the rows
    that can be nonzero.  Every omitted row is identically zero in these
    columns, so the rank is that of the infinite-north submatrix.
    """
    if l < 1:
        raise ValueError("box width l must be at least 1")
    lo = row_floor(M, j, l)
    cols = range(j - l + 1, j + 1)
    data = tuple(tuple(entry(M, a, b) for b in cols) for a in range(lo, i + 1))
    return BoxSubmatrix(lo, i, j - l + 1, j, data)


def window(M: LaurentMatrix, rows: range, cols: range) -> list[list[Fraction]]:
    return [[entry(M, a, b) for b in cols] for a in rows]


def dump_window(M: LaurentMatrix, rows: range, cols: range) -> str:
    """Text grid of a window; structural zeros print as '.'."""
    cells = [[("." if not v else str(v)) for v in r] for r in window(M, rows, cols)]
    width = max([len(str(a)) for a in rows] + [len(str(b)) for b in cols]
                + [len(x) for r in cells for x in r] + [1])
    lines = [" " * (width + 1) + " ".join(str(b).rjust(width) for b in cols)]
    for a, r in zip(rows, cells):
        lines.append(str(a).rjust(width) + " " + " ".join(x.rjust(width) for x in r))
    return "\n".join(lines)
