from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from affschub import AffinePermutation, Laurent, LaurentMatrix

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


@st.composite
def affine_perms(draw, n=None, min_n=1, max_n=4, max_shift=2, index=None):
    n = n if n is not None else draw(st.integers(min_n, max_n))
    perm = draw(st.permutations(range(1, n + 1)))
    shifts = draw(st.lists(st.integers(-max_shift, max_shift), min_size=n, max_size=n))
    if index is not None:
        shifts[-1] = index - sum(shifts[:-1])
    return AffinePermutation(n, tuple(p + n * c for p, c in zip(perm, shifts)))


small_rationals = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


@st.composite
def laurents(draw, lo=-2, hi=2):
    keys = draw(st.lists(st.integers(lo, hi), max_size=4, unique=True))
    return Laurent({k: draw(small_rationals) for k in keys})


@st.composite
def laurent_matrices(draw, n=None, max_n=3, lo=-1, hi=1):
    n = n if n is not None else draw(st.integers(1, max_n))
    return LaurentMatrix([[draw(laurents(lo, hi)) for _ in range(n)] for _ in range(n)])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
