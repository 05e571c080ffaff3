"""
Exact ranks, vanishing-minor tests and the essential-box membership test.

At an essential box (i, j) with target r = rank_fn(w, i, j) and any width
l >= l_min, the minors of size n(i, j, l) + 1 of the rows (-inf, i] x columns
[j - l + 1, j] of the unfolding vanish iff the rank r_l of that block is at
most l - r, i.e. iff l - r_l >= r.  The search below increases l and tracks
l - r_l, which is nondecreasing because each new column raises the rank by
at most one.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .affine_perm import AffinePermutation, residue_split
from .diagram import EssentialBox, essential_fundamental_domain, is_essential, l_min, n_count
from .errors import BoxNotEssential, IndexMismatch, PeriodMismatch, SingularMatrix
from .laurent import LaurentMatrix
from .unfold import box_submatrix, column

__all__ = [
    "exact_rank", "minors_vanish", "SpanBasis", "FinitarySearchResult",
    "finitary_dim_search", "default_l_max", "minors_condition", "BoxResult",
    "MembershipReport", "theorem_membership_test", "emit_generators", "matrix_id",
]


def _integer_rows(matrix: Iterable[Sequence]) -> list[list[int]]:
    out = []
    for row in matrix:
        fr = [Fraction(x) for x in row]
        den = math.lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * den) for x in fr])
    return out


def exact_rank(matrix: Iterable[Sequence]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination on integers."""
    m = [r for r in _integer_rows(matrix) if any(r)]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][c]
        for r in range(rank + 1, nrows):
            f = m[r][c]
            row, prow = m[r], m[rank]
            for k in range(c + 1, ncols):
                q, rem = divmod(p * row[k] - f * prow[k], prev)
                assert rem == 0, "Bareiss division must be exact"
                row[k] = q
            row[c] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def minors_vanish(matrix: Sequence[Sequence], s: int) -> bool:
    """All s x s minors vanish iff the rank is below s."""
    if s < 1:
        raise ValueError("minor size must be at least 1")
    return exact_rank(matrix) <= s - 1


class SpanBasis:
    """
    Incremental echelon basis of a span of sparse vectors.

    Every stored vector has its largest key as pivot, with coefficient 1 there,
    so reducing a new vector only ever introduces smaller keys.
    """

    def __init__(self):
        self._basis: dict[Hashable, dict] = {}

    def __len__(self):
        return len(self._basis)

    @property
    def rank(self) -> int:
        return len(self._basis)

    def add(self, vec: Mapping) -> bool:
        """Insert a vector; return True when it enlarged the span."""
        v = {k: Fraction(x) for k, x in vec.items() if x}
        while v:
            p = max(v)
            b = self._basis.get(p)
            if b is None:
                inv = 1 / v[p]
                self._basis[p] = {k: x * inv for k, x in v.items()}
                return True
            f = v[p]
            for k, x in b.items():
                y = v.get(k, 0) - f * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
        return False


@dataclass
class FinitarySearchResult:
    outcome: str                  # "reached" or "exhausted"
    l_start: int
    l_max: int
    target: int
    best_value: int
    l_witness: int | None = None
    trace: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def reached(self) -> bool:
        return self.outcome == "reached"

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome, "l_start": self.l_start, "l_max": self.l_max,
            "target": self.target, "best_value": self.best_value, "l_witness": self.l_witness,
            "trace": [list(t) for t in self.trace],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> FinitarySearchResult:
        return cls(obj["outcome"], int(obj["l_start"]), int(obj["l_max"]), int(obj["target"]),
                   int(obj["best_value"]), obj.get("l_witness"),
                   [tuple(int(x) for x in t) for t in obj.get("trace", [])])


def default_l_max(M: LaurentMatrix, i: int, j: int, start: int) -> int:
    """
    start + n * ((j + nD + n) - i + 1): l - rank can grow at most
    (j + nD + n) - i times, and one period is allowed per increment.
    """
    n = M.n
    return start + n * max(0, j + n * M.D + n - i + 1)


def finitary_dim_search(M: LaurentMatrix, i: int, j: int, target: int,
                        l_start: int = 1, l_max: int | None = None) -> FinitarySearchResult:
    """
    Grow the width l from ``l_start`` until l - rank_l >= target.

    rank_l is the rank of rows (-inf, i] x columns [j - l + 1, j], maintained
    incrementally one column at a time.
    """
    l_start = max(1, l_start)
    if l_max is None:
        l_max = default_l_max(M, i, j, l_start)
    basis = SpanBasis()
    trace = []
    best = 0
    for l in range(1, l_max + 1):
        col = {a: v for a, v in column(M, j - l + 1).items() if a <= i}
        basis.add(col)
        if l < l_start:
            continue
        value = l - basis.rank
        trace.append((l, basis.rank, value))
        best = max(best, value)
        if value >= target:
            return FinitarySearchResult("reached", l_start, l_max, target, best, l, trace)
    return FinitarySearchResult("exhausted", l_start, l_max, target, best, None, trace)


def minors_condition(M: LaurentMatrix, w: AffinePermutation, i: int, j: int, l: int) -> bool:
    """The literal condition: all minors of size n(i, j, l) + 1 of the box vanish."""
    sub = box_submatrix(M, i, j, l)
    return minors_vanish(sub.data, n_count(w, i, j, l) + 1)


def matrix_id(M: LaurentMatrix) -> str:
    blob = json.dumps(M.to_json(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class BoxResult:
    box: EssentialBox
    search: FinitarySearchResult

    def to_json(self) -> dict:
        return {"box": self.box.to_json(), "search": self.search.to_json()}

    @classmethod
    def from_json(cls, obj: Mapping) -> BoxResult:
        return cls(EssentialBox.from_json(obj["box"]), FinitarySearchResult.from_json(obj["search"]))


@dataclass
class MembershipReport:
    w: AffinePermutation
    matrix_id: str
    boxes: list[BoxResult]
    verdict: str                   # "certified_member" or "undetermined"
    oracle_verdict: bool | None = None

    @property
    def certified(self) -> bool:
        return self.verdict == "certified_member"

    @property
    def l_max(self) -> int | None:
        return max((b.search.l_max for b in self.boxes), default=None)

    def to_json(self) -> dict:
        return {
            "w": self.w.to_json(), "matrix_id": self.matrix_id, "verdict": self.verdict,
            "l_max": self.l_max, "oracle_verdict": self.oracle_verdict,
            "boxes": [b.to_json() for b in self.boxes],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> MembershipReport:
        return cls(AffinePermutation.from_json(obj["w"]), obj["matrix_id"],
                   [BoxResult.from_json(b) for b in obj["boxes"]], obj["verdict"],
                   obj.get("oracle_verdict"))


def check_compatible(M: LaurentMatrix, w: AffinePermutation) -> None:
    if M.n != w.n:
        raise PeriodMismatch(f"matrix is {M.n}x{M.n} but w has period {w.n}")
    if M.det.is_zero():
        raise SingularMatrix("determinant vanishes")
    if M.index() != w.index:
        raise IndexMismatch(f"matrix has index {M.index()}, w has index {w.index}")


def theorem_membership_test(M: LaurentMatrix, w: AffinePermutation, l_max: int | None = None,
                            with_oracle: bool = False) -> MembershipReport:
    """
    Run the width search at every essential box of w with column in [1, n].

    ``l_max`` overrides the per-box default cap.  A box that never reaches its
    target is reported as exhausted and the verdict is "undetermined", never a
    negative answer.
    """
    check_compatible(M, w)
    results = []
    for box in essential_fundamental_domain(w):
        res = finitary_dim_search(M, box.i, box.j, box.r_target, box.l_min, l_max)
        results.append(BoxResult(box, res))
    verdict = "certified_member" if all(r.search.reached for r in results) else "undetermined"
    oracle = None
    if with_oracle:
        from .lattice_oracle import oracle_membership
        oracle = oracle_membership(M, w)
    return MembershipReport(w, matrix_id(M), results, verdict, oracle)


def emit_generators(w: AffinePermutation, i: int, j: int, l: int, cap: int = 50,
                    key_range: tuple[int, int] = (0, 0)) -> dict:
    """
    Describe the minors cutting out the condition at essential box (i, j) and width l.

    ``key_range`` is the (min, max) t^{-1}-exponent allowed in the entries of
    the matrix (constant matrices by default).  Rows below the first row any
    such matrix can reach are dropped.  Variable x[a, b] is the coefficient of
    t^{-(q_b - q_a)} in entry (c, d), where a = n q_a + c and b = n q_b + d.
    """
    if not is_essential(w, i, j):
        raise BoxNotEssential(f"({i}, {j}) is not an essential box of {w}")
    lmin = l_min(w, i, j)
    if l < lmin:
        raise ValueError(f"width {l} is below l_min = {lmin}")
    n = w.n
    q_left, _ = residue_split(n, j - l + 1)
    r_lo = n * (q_left - key_range[1]) + 1
    rows = list(range(r_lo, i + 1))
    cols = list(range(j - l + 1, j + 1))
    size = n_count(w, i, j, l) + 1
    count = math.comb(len(rows), size) * math.comb(len(cols), size)
    minors = []
    if cap > 0:
        pairs = itertools.product(itertools.combinations(rows, size), itertools.combinations(cols, size))
        minors = [{"I": list(I), "J": list(J)} for I, J in itertools.islice(pairs, cap)]
    return {
        "w": w.to_json(), "box": {"i": i, "j": j}, "l": l, "l_min": lmin,
        "rows": [r_lo, i], "cols": [j - l + 1, j], "minor_size": size,
        "count": count, "truncated": count > len(minors), "minors": minors,
    }
