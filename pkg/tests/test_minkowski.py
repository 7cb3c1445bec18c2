import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from causaldef.exactfield import QQ, quad_field
from causaldef.minkowski import (
    ALL,
    EMPTY,
    EQ,
    LAM,
    NE,
    NTAU,
    NTAU_NE,
    SIG,
    TAU,
    DimensionMismatch,
    Point,
    RelKind,
    RelSet,
    in_causal_cone,
    in_future_of,
    in_past_of,
    mink_form,
    on_light_cone,
    relate,
)

T, L, S, E = RelKind.TIMELIKE, RelKind.LIGHTLIKE, RelKind.SPACELIKE, RelKind.EQUAL


def P(*c):
    return Point(c)


def test_mink_form_examples():
    assert mink_form(P(0, 0), P(1, 0)) == 1
    assert mink_form(P(-2, -2, 0), P(2, 2, 0)) == 0
    assert mink_form(P(0, -2, 0), P(0, 2, 0)) == -16


def test_relate_examples():
    assert relate(P(0, 0), P(0, 0)) is E
    assert relate(P(0, 0), P(1, 1)) is L
    assert relate(P(-2, -2, 0), P(2, 2, 0)) is L
    assert relate(P(0, -2, 0), P(0, 2, 0)) is S


def test_root_two_vectors():
    k = quad_field(2)
    o = Point.origin(3, k)
    assert relate(o, Point.parse("(1,1-1/2*rt,0)", k)) is T
    assert relate(o, Point.parse("(1,1+1/2*rt,0)", k)) is S


# pairwise relations of six sample points in Q^3, recomputed with integer arithmetic
SIX_POINTS = {
    "p": (0, -2, 0),
    "q": (0, 2, 0),
    "r": (0, 0, -3),
    "x": (3, 2, -2),
    "s": (3, 0, 1),
    "z": (3, -2, -2),
}
SIX_RELATIONS = {
    ("p", "q"): S, ("p", "r"): S, ("p", "x"): S, ("p", "s"): T, ("p", "z"): T,
    ("q", "r"): S, ("q", "x"): T, ("q", "s"): T, ("q", "z"): S,
    ("r", "x"): T, ("r", "s"): S, ("r", "z"): T,
    ("x", "s"): S, ("x", "z"): S,
    ("s", "z"): S,
}


@pytest.mark.parametrize("pair", sorted(SIX_RELATIONS))
def test_six_point_fixture(pair):
    a, b = pair
    assert relate(Point(SIX_POINTS[a]), Point(SIX_POINTS[b])) is SIX_RELATIONS[pair]
    assert relate(Point(SIX_POINTS[b]), Point(SIX_POINTS[a])) is SIX_RELATIONS[pair]


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        mink_form(P(0, 0), P(0, 0, 0))
    with pytest.raises(DimensionMismatch):
        relate(P(0, 0), P(0, 0, 0))


def test_cones():
    assert in_future_of(P(2, 0), P(0, 0))
    assert in_future_of(P(1, 1), P(0, 0), "causal")
    assert not in_future_of(P(1, 1), P(0, 0), "timelike")
    assert not in_future_of(P(0, 1), P(0, 0), "causal")
    assert in_past_of(P(0, 0), P(2, 0))
    assert on_light_cone(P(1, 1), P(0, 0))
    assert on_light_cone(P(0, 0), P(0, 0))
    assert not in_causal_cone(P(0, 1), P(0, 0))


def test_relset_algebra():
    assert ~TAU == RelSet.of(E, L, S) == NTAU
    assert NTAU_NE == RelSet.of(L, S)
    assert ~SIG == RelSet.of(E, T, L)
    assert TAU | LAM | SIG == NE and NE | EQ == ALL
    assert TAU & SIG == EMPTY
    assert len(RelSet.all_masks()) == 16
    assert TAU.swap_time_space() == SIG and LAM.swap_time_space() == LAM


@pytest.mark.parametrize("mask", range(16))
def test_mask_operations(mask):
    r = RelSet(mask)
    assert ~~r == r
    assert (r | ~r) == ALL and (r & ~r) == EMPTY
    assert len(r) == bin(mask).count("1")
    assert all((k in r) == bool(mask & k.value) for k in RelKind)


coord = st.integers(-20, 20)


@given(st.lists(coord, min_size=6, max_size=6), st.lists(coord, min_size=3, max_size=3))
def test_symmetric_and_translation_invariant(c, t):
    p, q, d = Point(c[:3]), Point(c[3:]), Point(t)
    assert relate(p, q) is relate(q, p)
    assert relate(p + d, q + d) is relate(p, q)
    assert mink_form(p, q) == mink_form(q, p)


def test_trichotomy_seeded():
    r = random.Random("trichotomy")
    for _ in range(10_000):
        n = r.choice((2, 3, 4))
        p = Point([r.randint(-6, 6) for _ in range(n)])
        q = Point([r.randint(-6, 6) for _ in range(n)])
        k = relate(p, q)
        hits = [k2 for k2, rel in ((E, EQ), (T, TAU), (L, LAM), (S, SIG)) if k in rel]
        assert hits == [k]
        assert k is relate(q, p)
        f = mink_form(p, q)
        assert (f > 0) == (k is T) and (f < 0) == (k is S)
        if k is L:
            assert p.time != q.time


def test_point_parse():
    assert Point.parse("(1/2,-3)") == P(QQ.parse("1/2"), -3)
    with pytest.raises(ValueError):
        Point.parse("(1,,2)")
