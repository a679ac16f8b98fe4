import itertools

import pytest
from hypothesis import given, strategies as st

from fermatlines.errors import IdenticalLineError, InvalidLineError, UnsupportedViewError
from fermatlines.lines import (
    LineId,
    LineSetView,
    check_line,
    degree_of,
    enumerate_lines,
    meets,
    neighbors,
    resolve_view,
)
from fermatlines.residue import SurfaceParams

L = LineId
P3, P4, P5 = SurfaceParams(3), SurfaceParams(4), SurfaceParams(5)


@pytest.mark.parametrize("d,count", [(3, 27), (4, 48), (5, 75)])
def test_enumerate_counts(d, count):
    lines = enumerate_lines(SurfaceParams(d))
    assert len(lines) == len(set(lines)) == count
    assert lines == sorted(lines)


def test_enumerate_endpoints():
    lines = enumerate_lines(P5)
    assert lines[0] == L(0, 0, 0) and lines[-1] == L(2, 4, 4)


def test_text_form_round_trip():
    assert str(L(0, 2, 0)) == "0 2 0"
    assert LineId.parse(" 2 3 4 ") == L(2, 3, 4)
    for bad in ("0 1", "a b c", "0 1 2 3"):
        with pytest.raises(ValueError):
            LineId.parse(bad)


def test_check_line():
    check_line(P5, L(2, 4, 4))
    for bad in (L(3, 0, 0), L(0, 5, 0), L(1, 0, -1)):
        with pytest.raises(InvalidLineError):
            check_line(P5, bad)


def test_meets_examples():
    assert not meets(P5, L(0, 0, 4), L(0, 2, 0))
    assert meets(P5, L(0, 2, 0), L(1, 3, 1))
    assert not meets(P5, L(1, 0, 1), L(2, 0, 0))
    assert meets(P4, L(1, 0, 0), L(2, 3, 0))
    for i, j in itertools.product(range(4), repeat=2):
        assert not meets(P4, L(1, 2, i), L(2, 2, j))


def test_meets_identical_is_error():
    with pytest.raises(IdenticalLineError):
        meets(P5, L(1, 2, 3), L(1, 2, 3))


@pytest.mark.parametrize("d,deg", [(3, 10), (5, 18), (7, 26)])
def test_degree_examples(d, deg):
    params = SurfaceParams(d)
    assert {degree_of(params, l) for l in enumerate_lines(params)} == {deg}


@pytest.mark.parametrize("d", range(3, 9))
def test_symmetric_and_neighbors_match_rules(d):
    params = SurfaceParams(d)
    lines = enumerate_lines(params)
    for a in lines:
        brute = [b for b in lines if b != a and meets(params, a, b)]
        assert neighbors(params, a) == brute
        for b in brute:
            assert meets(params, b, a)


@pytest.mark.parametrize("d", [3, 5, 7, 9])
def test_odd_cross_rule(d):
    params = SurfaceParams(d)
    for k, i, t, j in itertools.product(range(d), repeat=4):
        assert meets(params, L(1, k, i), L(2, t, j)) == ((k + 2 * i - t - 2 * j) % d == 0)


@given(st.integers(2, 12).map(lambda h: 2 * h), st.data())
def test_even_same_column_cross_families_skew(d, data):
    params = SurfaceParams(d)
    k, i, j = (data.draw(st.integers(0, d - 1)) for _ in range(3))
    assert not meets(params, L(1, k, i), L(2, k, j))


@given(st.integers(3, 20), st.data())
def test_same_row_lines_meet(d, data):
    params = SurfaceParams(d)
    s = data.draw(st.integers(0, 2))
    i, k, t = (data.draw(st.integers(0, d - 1)) for _ in range(3))
    if k != t:
        assert meets(params, L(s, k, i), L(s, t, i))


def test_columns():
    lines = resolve_view(P5, LineSetView("column", 1, 1))
    assert lines == {L(1, 1, i) for i in range(5)}
    col0 = sorted(resolve_view(P5, LineSetView("column", 0, 2)))
    assert all(meets(P5, a, b) for a, b in itertools.combinations(col0, 2))
    for s in (1, 2):
        col = sorted(resolve_view(P5, LineSetView("column", s, 3)))
        assert not any(meets(P5, a, b) for a, b in itertools.combinations(col, 2))


def test_d_views():
    assert resolve_view(P5, LineSetView("diagonal", 0, 0)) == {L(0, a, a) for a in range(5)}
    fiber = resolve_view(P5, LineSetView("psi_fiber", 1, 0))
    assert len(fiber) == 5 and all((l.k + 2 * l.i) % 5 == 0 for l in fiber)
    anti = resolve_view(P5, LineSetView("anti_diagonal", 0, 1))
    assert anti == {L(0, a, (1 - a) % 5) for a in range(5)}


@pytest.mark.parametrize("view", [
    LineSetView("psi_fiber", 0, 0),
    LineSetView("diagonal", 1, 0),
    LineSetView("row", 0, 0),
    LineSetView("column", 0, 5),
])
def test_bad_views(view):
    with pytest.raises(UnsupportedViewError):
        resolve_view(P5, view)
