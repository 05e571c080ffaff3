"""
Exact Laurent polynomials in t^{-1} over Q and square matrices of them.

A scalar is stored as a map ``c -> a_c`` for f = sum a_c t^{-c}; negative keys
are positive powers of t.  ``ord(f)`` is the least key with a_c != 0.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .affine_perm import AffinePermutation, residue_split
from .errors import SingularMatrix, ZeroArgument

__all__ = [
    "Laurent", "LaurentMatrix", "ord", "det", "adjugate", "index",
    "perm_to_matrix", "sigma_matrix", "is_iwahori", "is_opposite_iwahori", "in_O",
    "parse_rational", "matrix_from_rows",
]


def parse_rational(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rationals are encoded as strings, got {text!r}")
    return Fraction(text.strip())


class Laurent:
    """An element of Q[t, t^{-1}], keyed by powers of t^{-1}."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        for k, v in (coeffs or {}).items():
            v = Fraction(v)
            if v:
                c[int(k)] = v
        self._c = c

    @classmethod
    def const(cls, a) -> Laurent:
        return cls({0: a})

    @classmethod
    def t_power(cls, p: int, a=1) -> Laurent:
        """a * t^p."""
        return cls({-p: a})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def __getitem__(self, key: int) -> Fraction:
        return self._c.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def ord(self) -> int:
        if not self._c:
            raise ZeroArgument("ord of the zero Laurent polynomial")
        return min(self._c)

    def top(self) -> int:
        """Largest key (highest power of t^{-1})."""
        if not self._c:
            raise ZeroArgument("degree of the zero Laurent polynomial")
        return max(self._c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Laurent.const(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __neg__(self):
        return Laurent({k: -v for k, v in self._c.items()})

    def __add__(self, other):
        if not isinstance(other, Laurent):
            other = Laurent.const(other)
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return Laurent(c)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Laurent):
            other = Laurent.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            other = Fraction(other)
            return Laurent({k: v * other for k, v in self._c.items()})
        c: dict[int, Fraction] = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                c[k1 + k2] = c.get(k1 + k2, 0) + v1 * v2
        return Laurent(c)

    __rmul__ = __mul__

    def shift(self, p: int) -> Laurent:
        """Multiply by t^p."""
        return Laurent({k - p: v for k, v in self._c.items()})

    def exact_div(self, other: Laurent) -> Laurent:
        """
        Divide in Q[t, t^{-1}]; raises ValueError when the division is not exact.

        Both operands are normalised to polynomials in x = t^{-1} with nonzero
        constant term and divided by schoolbook long division.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return Laurent()
        a0, b0 = self.ord(), other.ord()
        num = [self[a0 + e] for e in range(self.top() - a0 + 1)]
        den = [other[b0 + e] for e in range(other.top() - b0 + 1)]
        if len(den) > len(num):
            raise ValueError("inexact Laurent division")
        quo = [Fraction(0)] * (len(num) - len(den) + 1)
        lead = den[-1]
        for k in range(len(quo) - 1, -1, -1):
            q = num[k + len(den) - 1] / lead
            quo[k] = q
            if q:
                for e, d in enumerate(den):
                    num[k + e] -= q * d
        if any(num):
            raise ValueError("inexact Laurent division")
        return Laurent({a0 - b0 + e: q for e, q in enumerate(quo)})

    def __repr__(self):
        return f"Laurent({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k in sorted(self._c):
            v = self._c[k]
            if k == 0:
                parts.append(str(v))
            else:
                mono = "t" if k == -1 else ("t^-1" if k == 1 else f"t^{-k}")
                parts.append(mono if v == 1 else ("-" + mono if v == -1 else f"{v}*{mono}"))
        return " + ".join(parts).replace("+ -", "- ")


def ord(f: Laurent) -> int:  # noqa: A001 - mirrors the mathematical name
    return f.ord()


def in_O(f: Laurent, g: Laurent) -> bool:
    """Whether f/g lies in Q[[t^{-1}]] (g must be nonzero)."""
    if g.is_zero():
        raise ZeroArgument("denominator is zero")
    return f.is_zero() or f.ord() >= g.ord()


ZERO = Laurent()
ONE = Laurent.const(1)


def _bareiss_det(rows: list[list[Laurent]]) -> Laurent:
    m = [list(r) for r in rows]
    size = len(m)
    if size == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(size - 1):
        if m[k][k].is_zero():
            for p in range(k + 1, size):
                if not m[p][k].is_zero():
                    m[k], m[p] = m[p], m[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = ZERO
        prev = m[k][k]
    return m[-1][-1] * sign


def _cofactor_det(rows: list[list[Laurent]]) -> Laurent:
    size = len(rows)
    if size == 0:
        return ONE
    if size == 1:
        return rows[0][0]
    total = ZERO
    for c in range(size):
        if rows[0][c].is_zero():
            continue
        minor = [r[:c] + r[c + 1:] for r in rows[1:]]
        term = rows[0][c] * _cofactor_det(minor)
        total = total + term if c % 2 == 0 else total - term
    return total


def _det(rows: list[list[Laurent]]) -> Laurent:
    return _bareiss_det(rows) if len(rows) <= 6 else _cofactor_det(rows)


class LaurentMatrix:
    """An n x n matrix over Q[t, t^{-1}]; immutable."""

    def __init__(self, entries: Sequence[Sequence[Laurent]]):
        rows = tuple(tuple(e if isinstance(e, Laurent) else Laurent.const(e) for e in r)
                     for r in entries)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("a LaurentMatrix must be square and non-empty")
        self.n = n
        self.entries = rows

    @classmethod
    def identity(cls, n: int) -> LaurentMatrix:
        return cls([[ONE if r == c else ZERO for c in range(n)] for r in range(n)])

    @classmethod
    def from_coefficient_matrices(cls, mats: Mapping[int, Sequence[Sequence[object]]], n: int | None = None):
        """Build sum_c mats[c] t^{-c}."""
        if n is None:
            n = len(next(iter(mats.values())))
        data = [[{} for _ in range(n)] for _ in range(n)]
        for c, mat in mats.items():
            if len(mat) != n or any(len(r) != n for r in mat):
                raise ValueError(f"coefficient matrix for key {c} is not {n}x{n}")
            for r in range(n):
                for s in range(n):
                    data[r][s][int(c)] = parse_rational(mat[r][s])
        return cls([[Laurent(data[r][s]) for s in range(n)] for r in range(n)])

    def __getitem__(self, rc: tuple[int, int]) -> Laurent:
        """Zero-based (row, col) access."""
        r, c = rc
        return self.entries[r][c]

    def __eq__(self, other):
        return isinstance(other, LaurentMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __matmul__(self, other: LaurentMatrix) -> LaurentMatrix:
        if self.n != other.n:
            raise ValueError("size mismatch")
        n = self.n
        out = []
        for r in range(n):
            row = []
            for c in range(n):
                acc = ZERO
                for k in range(n):
                    a, b = self.entries[r][k], other.entries[k][c]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LaurentMatrix(out)

    __mul__ = __matmul__

    def keys(self) -> set[int]:
        return {k for r in self.entries for e in r for k in e.coeffs}

    @cached_property
    def key_range(self) -> tuple[int, int]:
        """(min, max) over all stored t^{-1}-exponents; (0, 0) for the zero matrix."""
        ks = self.keys()
        return (min(ks), max(ks)) if ks else (0, 0)

    @property
    def N(self) -> int:
        """Smallest power of t occurring in an entry."""
        return -self.key_range[1]

    @property
    def D(self) -> int:
        """Largest power of t occurring in an entry."""
        return -self.key_range[0]

    def coefficient_matrix(self, key: int) -> list[list[Fraction]]:
        return [[e[key] for e in r] for r in self.entries]

    @cached_property
    def det(self) -> Laurent:
        return _det([list(r) for r in self.entries])

    @cached_property
    def adjugate(self) -> LaurentMatrix:
        n = self.n
        if n == 1:
            return LaurentMatrix([[ONE]])
        rows = [list(r) for r in self.entries]
        adj = [[ZERO] * n for _ in range(n)]
        for r in range(n):
            for c in range(n):
                minor = [row[:c] + row[c + 1:] for k, row in enumerate(rows) if k != r]
                cof = _det(minor)
                adj[c][r] = cof if (r + c) % 2 == 0 else -cof
        return LaurentMatrix(adj)

    def is_invertible(self) -> bool:
        return not self.det.is_zero()

    def index(self) -> int:
        if self.det.is_zero():
            raise SingularMatrix("determinant vanishes")
        return -self.det.ord()

    def apply(self, vec: Sequence[Laurent]) -> list[Laurent]:
        return [sum((e * v for e, v in zip(row, vec) if e and v), ZERO) for row in self.entries]

    def to_json(self) -> dict:
        coeffs = {}
        for key in sorted(self.keys()):
            coeffs[str(key)] = [[str(x) for x in row] for row in self.coefficient_matrix(key)]
        return {"n": self.n, "coeffs": coeffs}

    @classmethod
    def from_json(cls, obj: Mapping) -> LaurentMatrix:
        n = int(obj["n"])
        coeffs = obj.get("coeffs") or {}
        if not coeffs:
            return cls([[ZERO] * n for _ in range(n)])
        return cls.from_coefficient_matrices({int(k): v for k, v in coeffs.items()}, n)

    def __repr__(self):
        return "LaurentMatrix([" + ", ".join("[" + ", ".join(str(e) for e in r) + "]"
                                             for r in self.entries) + "])"


def det(M: LaurentMatrix) -> Laurent:
    return M.det


def adjugate(M: LaurentMatrix) -> LaurentMatrix:
    return M.adjugate


def index(M: LaurentMatrix) -> int:
    return M.index()


def perm_to_matrix(w: AffinePermutation) -> LaurentMatrix:
    """
    Fold the affine permutation matrix of w to n x n over Q[t, t^{-1}].

    Column d has the single entry t^q in row r, where w(d) = n*q + r.
    """
    n = w.n
    rows = [[ZERO] * n for _ in range(n)]
    for d, v in enumerate(w.window, start=1):
        q, r = residue_split(n, v)
        rows[r - 1][d - 1] = Laurent.t_power(q)
    return LaurentMatrix(rows)


def sigma_matrix(n: int) -> LaurentMatrix:
    return perm_to_matrix(AffinePermutation(n, tuple(range(2, n + 2))))


def is_iwahori(M: LaurentMatrix) -> bool:
    """
    Membership in the Iwahori subgroup: entries in Q[[t^{-1}]], strictly lower
    entries divisible by t^{-1}, invertible upper-triangular constant term.
    """
    n = M.n
    for r in range(n):
        for c in range(n):
            e = M[r, c]
            if e and e.ord() < (1 if r > c else 0):
                return False
    return all(M[r, r][0] != 0 for r in range(n))


def is_opposite_iwahori(M: LaurentMatrix) -> bool:
    """
    Membership in the stabilizer of the anti-lattices: entries in Q[t],
    strictly upper entries divisible by t, invertible lower-triangular
    constant term, and a nonzero constant determinant (so the inverse is
    polynomial in t as well).
    """
    n = M.n
    for r in range(n):
        for c in range(n):
            e = M[r, c]
            if e and e.top() > (-1 if r < c else 0):
                return False
    if not all(M[r, r][0] != 0 for r in range(n)):
        return False
    d = M.det
    return len(d.coeffs) == 1 and d.ord() == 0


def matrix_from_rows(rows: Iterable[Iterable[object]]) -> LaurentMatrix:
    return LaurentMatrix([[x if isinstance(x, Laurent) else Laurent.const(x) for x in r] for r in rows])

