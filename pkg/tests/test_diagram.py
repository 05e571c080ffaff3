import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affschub import (
    AffinePermutation, CrossoutStatus, EssentialBox, crossout_status, essential_boxes_in,
    essential_fundamental_domain, is_essential, l_min, n_count, rank_fn, stabilization_bound,
)
from conftest import affine_perms


def brute_essential(w, rows, cols):
    out = set()
    for i in rows:
        for j in cols:
            if w(j) > i and w.inv(i) > j and w(j + 1) <= i and w.inv(i + 1) <= j:
                out.add((i, j))
    return out


def test_essential_set_of_261():
    w = AffinePermutation(3, (2, 6, 1))
    assert essential_fundamental_domain(w) == [EssentialBox(1, 2, 4, 3), EssentialBox(5, 2, 1, 1)]
    assert l_min(w, 1, 2) == 4 and l_min(w, 5, 2) == 1
    assert n_count(w, 1, 2, 4) == 1 and n_count(w, 5, 2, 1) == 0


def test_essential_set_of_2143():
    w = AffinePermutation(4, (2, 1, 4, 3))
    assert [(b.i, b.j, b.l_min, b.r_target) for b in essential_fundamental_domain(w)] == [
        (1, 1, 1, 1), (3, 3, 1, 1)]


def test_identity_has_empty_diagram():
    assert essential_fundamental_domain(AffinePermutation(3, (1, 2, 3))) == []


@settings(max_examples=60)
@given(affine_perms())
def test_fundamental_domain_tiles_the_essential_set(w):
    n = w.n
    fund = {(b.i, b.j) for b in essential_fundamental_domain(w)}
    tiled = {(i + n * s, j + n * s) for i, j in fund for s in range(-6, 7)}
    rows = cols = range(-8, 9)
    assert {b for b in tiled if b[0] in rows and b[1] in cols} == brute_essential(w, rows, cols)
    assert {(b.i, b.j) for b in essential_boxes_in(w, rows, cols)} == brute_essential(w, rows, cols)


@given(affine_perms(), st.integers(-6, 6), st.integers(-6, 6))
def test_periodic(w, i, j):
    assert is_essential(w, i, j) == is_essential(w, i + w.n, j + w.n)
    assert crossout_status(w, i, j) == crossout_status(w, i + w.n, j + w.n)


def test_crossout_statuses():
    w = AffinePermutation(3, (2, 6, 1))
    assert crossout_status(w, 2, 1) is CrossoutStatus.ONE_CELL
    assert crossout_status(w, 1, 2) is CrossoutStatus.UNCROSSED
    assert crossout_status(w, 4, 1) is CrossoutStatus.VERTICAL_ONLY
    assert crossout_status(w, 3, 1) is CrossoutStatus.BOTH  # w(-1) = 3
    assert crossout_status(w, 2, 2) is CrossoutStatus.HORIZONTAL_ONLY
    assert crossout_status(w, 3, 3) is CrossoutStatus.BOTH


@settings(max_examples=80)
@given(affine_perms(), st.data())
def test_n_count_is_width_minus_rank(w, data):
    boxes = essential_fundamental_domain(w)
    if not boxes:
        return
    b = data.draw(st.sampled_from(boxes))
    extra = data.draw(st.integers(0, 8))
    l = b.l_min + extra
    assert n_count(w, b.i, b.j, l) == l - rank_fn(w, b.i, b.j)
    if b.l_min > 0:
        assert n_count(w, b.i, b.j, b.l_min - 1) != b.l_min - 1 - rank_fn(w, b.i, b.j)


@given(affine_perms(), st.integers(-5, 5))
def test_stabilization_bound_is_sharp(w, j):
    N = stabilization_bound(w, j)
    for i in range(N - 10, N + 1):
        assert w.inv(i) < j
        assert rank_fn(w, i, j) == j + w.index - i
    assert w.inv(N + 1) >= j


def test_stabilization_bound_261():
    w = AffinePermutation(3, (2, 6, 1))
    assert stabilization_bound(w, 2) == 0
    assert rank_fn(w, 0, 2) == 3 and rank_fn(w, 1, 2) == 3  # r(1,2) = 3 but j + k - i = 2


def test_n_count_rejects_negative_width():
    with pytest.raises(ValueError):
        n_count(AffinePermutation(2, (1, 2)), 0, 0, -1)


def test_box_json():
    b = EssentialBox(1, 2, 4, 3)
    assert b.to_json() == {"i": 1, "j": 2, "l_min": 4, "r_target": 3}
    assert EssentialBox.from_json(b.to_json()) == b
    assert b.box.i == 1 and b.box.j == 2


def test_finite_permutations_have_finite_style_essential_sets():
    for perm in itertools.permutations(range(1, 4)):
        w = AffinePermutation(3, perm)
        assert all(1 <= b.i <= 2 and 1 <= b.j <= 2 for b in essential_fundamental_domain(w))
