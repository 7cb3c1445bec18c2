import random

import pytest

from causaldef.exactfield import QQ, ContextMismatch, NotASquare, quad_field
from causaldef.minkowski import DimensionMismatch, Point, RelKind, mink_form, relate
from causaldef.sampling import rand_automorphism, sample_pair
from causaldef.transforms import (
    AffineMap,
    EqualPoints,
    NotOrthonormal,
    OnLightConeOfOrigin,
    RelationEffect,
    SpeedOutOfRange,
    TargetNotLightlike,
    WrongDeterminant,
    WrongDimension,
    ZeroScale,
    boost,
    boost_scale_sigma,
    boost_scale_tau,
    canonical_pair,
    canonicalize_pair,
    escape_iteration,
    hyperbolic_inversion,
    identity,
    lifted_conjugation,
    rotation_from_orthonormal,
    scaling,
    swap_tx,
    time_compress,
    time_reversal,
    translation,
)

T, L, S, E = RelKind.TIMELIKE, RelKind.LIGHTLIKE, RelKind.SPACELIKE, RelKind.EQUAL
Q = QQ.parse


def P(*c):
    return Point(c)


def test_elementary_maps():
    assert scaling(2)(P(1, 1)) == P(2, 2)
    assert time_reversal()(P(1, 0)) == P(-1, 0)
    assert translation(P(1, 2))(P(0, 0)) == P(1, 2)
    with pytest.raises(ZeroScale):
        scaling(0)


def test_boost_examples():
    b = boost(1, Q("3/5"))
    assert b(P(1, 0)) == P(Q("5/4"), Q("-3/4"))
    assert relate(b(P(0, 0)), b(P(1, 0))) is T
    assert boost(1, 0) == identity(2)
    with pytest.raises(NotASquare):
        boost(1, Q("1/2"))
    with pytest.raises(SpeedOutOfRange):
        boost(1, 1)


def test_rotation():
    rows = ((Q("3/5"), Q("-4/5")), (Q("4/5"), Q("3/5")))
    f = rotation_from_orthonormal(rows)
    assert f.n == 3 and f.effect is RelationEffect.PRESERVES_ALL
    r = random.Random("rot")
    pairs = [sample_pair(r, k, 3) for k in (T, L, S) for _ in range(20)]
    assert f.verify_effect(pairs) == []
    assert rotation_from_orthonormal(((1, 0), (0, 1))) == identity(3)
    with pytest.raises(NotOrthonormal):
        rotation_from_orthonormal(((1, 1), (0, 1)))
    with pytest.raises(WrongDeterminant):
        rotation_from_orthonormal(((1, 0), (0, -1)))


def test_boost_scale():
    assert boost_scale_tau(Q("5/4"), Q("3/4"))(P(Q("5/4"), Q("3/4"))) == P(1, 0)
    assert boost_scale_tau(1, 0) == identity(2)
    assert boost_scale_sigma(Q("3/4"), Q("5/4"))(P(Q("3/4"), Q("5/4"))) == P(0, 1)
    assert boost_scale_tau(Q("5/4"), Q("3/4"))(P(0, 0)) == P(0, 0)


def test_canonicalize_examples():
    f, tag = canonicalize_pair(P(1, 1), P(2, 1))
    assert tag is T and (f(P(1, 1)), f(P(2, 1))) == (P(0, 0), P(1, 0))
    f, tag = canonicalize_pair(P(0, 0), P(3, 3))
    assert tag is L and f(P(3, 3)) == P(1, 1)
    with pytest.raises(EqualPoints):
        canonicalize_pair(P(1, 2), P(1, 2))


def test_canonicalize_pythagorean_3d():
    p = P(0, 0, 0)
    q = P(Q("5/4"), Q("3/4") * Q("3/5"), Q("3/4") * Q("4/5"))
    f, tag = canonicalize_pair(p, q)
    assert tag is T
    assert (f(p), f(q)) == canonical_pair(T, 3)


def test_canonicalize_round_trip():
    r = random.Random("canon")
    for n in (2, 3):
        for kind in (T, L, S):
            for _ in range(40):
                p, q = sample_pair(r, kind, n)
                f, tag = canonicalize_pair(p, q)
                assert tag is kind
                assert (f(p), f(q)) == canonical_pair(kind, n)
                g = f.inverse()
                assert (g(f(p)), g(f(q))) == (p, q)


def test_canonicalize_2d_needs_no_roots():
    r = random.Random("canon-2d")
    for _ in range(300):
        p = Point([Q(f"{r.randint(-9, 9)}/{r.randint(1, 7)}") for _ in range(2)])
        q = Point([Q(f"{r.randint(-9, 9)}/{r.randint(1, 7)}") for _ in range(2)])
        if p == q:
            continue
        f, tag = canonicalize_pair(p, q)
        assert (f(p), f(q)) == canonical_pair(tag, 2)


def test_canonicalize_reports_roots():
    with pytest.raises(NotASquare):
        canonicalize_pair(P(0, 0, 0), P(3, 1, 1))


def test_swap():
    s = swap_tx()
    assert s(P(1, 0)) == P(0, 1)
    assert s(P(1, 1)) == P(1, 1)
    assert s.then(s) == identity(2)
    assert s.effect is RelationEffect.PRESERVES_LIGHT_SWAPS_TIME_SPACE
    r = random.Random("swap")
    for kind, image in ((T, S), (S, T), (L, L)):
        for _ in range(50):
            p, q = sample_pair(r, kind, 2)
            assert relate(s(p), s(q)) is image
    with pytest.raises(DimensionMismatch):
        s(P(0, 0, 0))


def test_effects_compose():
    pa, sw = RelationEffect.PRESERVES_ALL, RelationEffect.PRESERVES_LIGHT_SWAPS_TIME_SPACE
    assert sw.then(sw) is pa and pa.then(sw) is sw


def test_random_automorphisms_preserve_all():
    r = random.Random("auto")
    for n in (2, 3):
        for _ in range(20):
            f = rand_automorphism(r, n)
            pairs = [sample_pair(r, k, n) for k in (T, L, S) for _ in range(10)]
            assert f.verify_effect(pairs) == []


def test_lifted_conjugation():
    k = quad_field(2)
    c = lifted_conjugation(k)
    v = Point.parse("(1,1-1/2*rt,0)", k)
    w = c(v)
    assert w == Point.parse("(1,1+1/2*rt,0)", k)
    o = Point.origin(3, k)
    assert relate(o, v) is T and relate(o, w) is S
    assert c(Point([1, 2, 3], k)) == Point([1, 2, 3], k)
    r = random.Random("conj")
    for _ in range(30):
        p, q = sample_pair(r, L, 3, k)
        shift = Point([k.parse("1*rt"), 0, k.parse("-1/3*rt")], k)
        p, q = p + shift, q + shift
        assert relate(c(p), c(q)) is L
    with pytest.raises(ContextMismatch):
        lifted_conjugation(QQ)


def test_time_compress():
    eps, imgs = time_compress([P(0, 0), P(1, 1)], (0, 1))
    assert 0 < eps < 1 and relate(*imgs) is S
    pts = [P(0, 0), P(2, 0), P(1, 1)]
    eps, imgs = time_compress(pts, (0, 2))
    assert eps == Q("1/2")
    assert relate(imgs[0], imgs[1]) is T
    assert relate(imgs[0], imgs[2]) is S
    assert len(set(imgs)) == 3
    with pytest.raises(TargetNotLightlike):
        time_compress([P(0, 0), P(0, 1)], (0, 1))


def test_time_compress_clauses_seeded():
    r = random.Random("teps")
    for _ in range(50):
        p, q = sample_pair(r, L, 3)
        extra = [Point([Q(f"{r.randint(-6, 6)}/{r.randint(1, 4)}") for _ in range(3)]) for _ in range(4)]
        pts = [p, q] + extra
        eps, imgs = time_compress(pts, (0, 1))
        assert relate(imgs[0], imgs[1]) is S
        for i in range(len(pts)):
            for j in range(len(pts)):
                before, after = relate(pts[i], pts[j]), relate(imgs[i], imgs[j])
                assert (before is T) == (after is T)
                assert (before is E) == (after is E)


def test_hyperbolic_inversion():
    assert hyperbolic_inversion(P(1, 0)) == P(1, 0)
    assert hyperbolic_inversion(P(0, 1)) == P(0, -1)
    assert hyperbolic_inversion(hyperbolic_inversion(P(2, 1))) == P(2, 1)
    with pytest.raises(OnLightConeOfOrigin):
        hyperbolic_inversion(P(1, 1))


def test_hyperbolic_inversion_turns_timelike_spacelike():
    p, q = P(0, 1), P(Q("3/2"), 1)
    assert relate(p, q) is T
    assert relate(hyperbolic_inversion(p), hyperbolic_inversion(q)) is S


def test_escape_iteration():
    clean = [P(2, 1)]
    assert escape_iteration(clean, T) == clean
    out = escape_iteration([P(1, 1)], T)
    assert all(mink_form(x, P(0, 0)) != 0 for x in out)
    assert out == [P(2, 1)]


def test_json_round_trip():
    f = boost(1, Q("3/5")).then(translation(P(1, Q("-1/2"))))
    g = AffineMap.from_json(f.to_json())
    assert g == f and g.effect is f.effect
    assert {"matrix", "offset", "effect"} <= set(f.to_json())


def test_wrong_dimension():
    with pytest.raises(WrongDimension):
        boost(2, Q("3/5"), n=2)


def test_time_dilate():
    from causaldef.transforms import time_dilate

    pts = [P(0, 0), P(0, 2), P(1, 1)]
    eps, imgs = time_dilate(pts, (0, 2))
    assert eps > 0
    assert relate(imgs[0], imgs[2]) is T
    assert relate(imgs[0], imgs[1]) is S
