"""
Affine permutations of period n in window notation.

An affine permutation is a bijection w of the integers with
w(i + n) = w(i) + n.  It is recorded by its window [w(1), ..., w(n)].

>>> w = AffinePermutation.from_window([2, 6, 1])
>>> w.index, w(0), w(4)
(1, -2, 5)
>>> w.inverse().window
(3, 1, -1)
>>> rank_fn(w, 1, 2)
3
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import IndexMismatch, PeriodMismatch, ResidueCollision

__all__ = [
    "AffinePermutation", "new_affine_permutation", "identity", "simple_reflection",
    "shift_sigma", "rank_fn", "dominates", "residue_split",
]


def residue_split(n: int, m: int) -> tuple[int, int]:
    """Write m = n*q + r with r in [1, n]; return (q, r)."""
    q, r = divmod(m - 1, n)
    return q, r + 1


@dataclass(frozen=True)
class AffinePermutation:
    n: int
    window: tuple[int, ...]
    index: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"period must be positive, got {self.n}")
        window = tuple(int(x) for x in self.window)
        if len(window) != self.n:
            raise ValueError(f"window has length {len(window)}, expected {self.n}")
        seen = {}
        for d, v in enumerate(window, start=1):
            r = v % self.n
            if r in seen:
                raise ResidueCollision(
                    f"w({seen[r]}) = {window[seen[r] - 1]} and w({d}) = {v} agree mod {self.n}")
            seen[r] = d
        total = sum(v - d for d, v in enumerate(window, start=1))
        assert total % self.n == 0, "distinct residues force an integral index"
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "index", total // self.n)

    @classmethod
    def from_window(cls, window: Sequence[int]) -> AffinePermutation:
        return cls(len(window), tuple(window))

    @classmethod
    def parse(cls, text: str) -> AffinePermutation:
        """Parse the canonical text form ``[2,6,1]`` (a bare ``2,6,1`` is accepted too)."""
        text = text.strip()
        if not text.startswith("["):
            text = f"[{text}]"
        values = json.loads(text)
        if not isinstance(values, list) or not values or not all(isinstance(v, int) for v in values):
            raise ValueError(f"not a window: {text!r}")
        return cls.from_window(values)

    def __call__(self, i: int) -> int:
        q, d = residue_split(self.n, i)
        return self.window[d - 1] + self.n * q

    def apply(self, i: int) -> int:
        return self(i)

    def inverse(self) -> AffinePermutation:
        inv = [0] * self.n
        for d, v in enumerate(self.window, start=1):
            q, r = residue_split(self.n, v)
            inv[r - 1] = d - self.n * q
        return AffinePermutation(self.n, tuple(inv))

    def inv(self, i: int) -> int:
        """w^{-1}(i) without building the inverse window."""
        for d, v in enumerate(self.window, start=1):
            if (i - v) % self.n == 0:
                return d + i - v
        raise AssertionError("unreachable for a valid window")

    def compose(self, other: AffinePermutation) -> AffinePermutation:
        """Return self ∘ other."""
        if self.n != other.n:
            raise PeriodMismatch(f"periods differ: {self.n} vs {other.n}")
        return AffinePermutation(self.n, tuple(self(v) for v in other.window))

    __mul__ = compose

    def is_identity(self) -> bool:
        return self.window == tuple(range(1, self.n + 1))

    def to_json(self) -> dict:
        return {"n": self.n, "window": list(self.window)}

    @classmethod
    def from_json(cls, obj: dict) -> AffinePermutation:
        w = cls(int(obj["n"]), tuple(obj["window"]))
        return w

    def __str__(self) -> str:
        return "[" + ",".join(str(v) for v in self.window) + "]"


def new_affine_permutation(n: int, window: Iterable[int]) -> AffinePermutation:
    return AffinePermutation(n, tuple(window))


def identity(n: int) -> AffinePermutation:
    return AffinePermutation(n, tuple(range(1, n + 1)))


def simple_reflection(n: int, i: int) -> AffinePermutation:
    """
    The reflection s_i swapping i and i+1 (and everything congruent to them).

    >>> simple_reflection(2, 0).window
    (0, 3)
    """
    if n < 2:
        raise ValueError("simple reflections need n >= 2")
    if not 0 <= i < n:
        raise ValueError(f"i must lie in [0, {n - 1}]")
    window = list(range(1, n + 1))
    if i == 0:
        window[0], window[n - 1] = 0, n + 1
    else:
        window[i - 1], window[i] = i + 1, i
    return AffinePermutation(n, tuple(window))


def shift_sigma(n: int) -> AffinePermutation:
    return AffinePermutation(n, tuple(range(2, n + 2)))


def rank_fn(w: AffinePermutation, i: int, j: int) -> int:
    """
    |w Z_{<=j} ∩ Z_{>i}|, the number of j' <= j with w(j') > i.

    Counted residue class by residue class: in the class of d the admissible
    j' = d + n*c satisfy (i - w(d))/n < c <= (j - d)/n.
    """
    n = w.n
    total = 0
    for d, v in enumerate(w.window, start=1):
        total += max(0, (j - d) // n - (i - v) // n)
    return total


def _exhaustive_boxes(u: AffinePermutation, w: AffinePermutation):
    # Columns j in [1, n] suffice by (n, n)-periodicity.  Below the stabilization
    # bounds both rank functions equal j + k - i; above the largest row hit by
    # columns <= j the target rank vanishes.
    from .diagram import stabilization_bound
    n = w.n
    for j in range(1, n + 1):
        lo = min(stabilization_bound(u, j), stabilization_bound(w, j))
        hi = max(w(jp) for jp in range(j - n + 1, j + 1))
        for i in range(lo, hi + 1):
            yield i, j


def dominates(u: AffinePermutation, w: AffinePermutation, exhaustive: bool = False) -> bool:
    """
    True iff rank_fn(u, i, j) >= rank_fn(w, i, j) for every box (i, j).

    By default only the essential boxes of w are checked; ``exhaustive=True``
    checks every box of a finite set that provably covers all of Z x Z.
    """
    if u.n != w.n:
        raise PeriodMismatch(f"periods differ: {u.n} vs {w.n}")
    if u.index != w.index:
        raise IndexMismatch(f"index {u.index} vs {w.index}")
    if exhaustive:
        boxes = _exhaustive_boxes(u, w)
    else:
        from .diagram import essential_fundamental_domain
        boxes = ((b.i, b.j) for b in essential_fundamental_domain(w))
    return all(rank_fn(u, i, j) >= rank_fn(w, i, j) for i, j in boxes)
