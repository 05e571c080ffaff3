"""
Crossing-out diagrams and periodic essential sets of affine permutations.

Conventions: a box (i, j) has row i and column j; the 1 of column j sits in
row w(j).  Each 1 crosses out its own cell, the cells east of it in its row
and the cells south of it in its column.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .affine_perm import AffinePermutation, rank_fn

__all__ = [
    "Box", "EssentialBox", "CrossoutStatus", "crossout_status", "is_essential",
    "essential_fundamental_domain", "essential_boxes_in", "l_min", "n_count",
    "stabilization_bound",
]


@dataclass(frozen=True, order=True)
class Box:
    i: int
    j: int


@dataclass(frozen=True)
class EssentialBox:
    i: int
    j: int
    l_min: int
    r_target: int

    @property
    def box(self) -> Box:
        return Box(self.i, self.j)

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "l_min": self.l_min, "r_target": self.r_target}

    @classmethod
    def from_json(cls, obj: dict) -> EssentialBox:
        return cls(int(obj["i"]), int(obj["j"]), int(obj["l_min"]), int(obj["r_target"]))


class CrossoutStatus(str, enum.Enum):
    UNCROSSED = "uncrossed"
    VERTICAL_ONLY = "vertical_only"
    HORIZONTAL_ONLY = "horizontal_only"
    BOTH = "both"
    ONE_CELL = "one_cell"


def crossout_status(w: AffinePermutation, i: int, j: int) -> CrossoutStatus:
    if w(j) == i:
        return CrossoutStatus.ONE_CELL
    vertical = w(j) <= i          # south of the 1 in column j
    horizontal = w.inv(i) <= j    # east of the 1 in row i
    if vertical and horizontal:
        return CrossoutStatus.BOTH
    if vertical:
        return CrossoutStatus.VERTICAL_ONLY
    if horizontal:
        return CrossoutStatus.HORIZONTAL_ONLY
    return CrossoutStatus.UNCROSSED


def is_essential(w: AffinePermutation, i: int, j: int) -> bool:
    return w(j) > i and w.inv(i) > j and w(j + 1) <= i and w.inv(i + 1) <= j


def l_min(w: AffinePermutation, i: int, j: int) -> int:
    """
    max(0, j - min_{k > i} w^{-1}(k) + 1).

    The minimum over k > i is attained in (i, i + n], because
    w^{-1}(k + n) = w^{-1}(k) + n.
    """
    first = min(w.inv(k) for k in range(i + 1, i + w.n + 1))
    return max(0, j - first + 1)


def n_count(w: AffinePermutation, i: int, j: int, l: int) -> int:
    """Number of j' in (j - l, j] with w(j') <= i."""
    if l < 0:
        raise ValueError("window width must be non-negative")
    return sum(1 for jp in range(j - l + 1, j + 1) if w(jp) <= i)


def stabilization_bound(w: AffinePermutation, j: int) -> int:
    """
    The largest N with w^{-1}(i) < j for every i <= N.

    Rows hit by columns >= j have minimum min(w(j), ..., w(j + n - 1)), so N is
    one less than that.  For i <= N, rank_fn(w, i, j) = j + index - i.
    """
    return min(w(jp) for jp in range(j, j + w.n)) - 1


def _essential_box(w: AffinePermutation, i: int, j: int) -> EssentialBox:
    return EssentialBox(i, j, l_min(w, i, j), rank_fn(w, i, j))


def essential_fundamental_domain(w: AffinePermutation) -> list[EssentialBox]:
    """
    Essential boxes with column j in [1, n], sorted by (j, i).

    The full essential set is this list translated by Z·(n, n).
    """
    out = []
    for j in range(1, w.n + 1):
        # w(j + 1) <= i < w(j) is forced by two of the four conditions
        for i in range(w(j + 1), w(j)):
            if is_essential(w, i, j):
                out.append(_essential_box(w, i, j))
    return out


def essential_boxes_in(w: AffinePermutation, rows: range, cols: range) -> list[EssentialBox]:
    """Every essential box inside a rectangular window (used for rendering)."""
    return [_essential_box(w, i, j) for j in cols for i in rows if is_essential(w, i, j)]
