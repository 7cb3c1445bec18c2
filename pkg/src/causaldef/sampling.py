"""Seeded generators of exact sample points, pairs and automorphisms.

Every trial gets its own ``random.Random`` keyed by ``seed:plan:index`` so
results are reproducible and independent of evaluation order.  Pairs are
built as images of canonical pairs under random relation-preserving maps
whose parameters come from Pythagorean triples; such pairs are always
canonicalizable over Q.
"""
from __future__ import annotations

import random

from gmpy2 import mpq

from .exactfield import QQ, FieldCtx
from .minkowski import Point, RelKind
from .transforms import (
    AffineMap,
    boost,
    canonical_pair,
    identity,
    rotation_from_orthonormal,
    scaling,
    time_reversal,
    translation,
)

__all__ = [
    "trial_rng",
    "rand_rat",
    "rand_point",
    "pythagorean",
    "rand_speed",
    "rand_rotation",
    "rand_automorphism",
    "sample_pair",
    "sample_offset",
    "sample_in_cone",
    "sample_null_offset",
]


def trial_rng(seed, plan: str, i: int) -> random.Random:
    return random.Random(f"{seed}:{plan}:{i}")


def rand_rat(r: random.Random, bound: int = 4, dens=(1, 2, 3, 4, 5, 8)) -> mpq:
    d = r.choice(dens)
    return mpq(r.randint(-bound * d, bound * d), d)


def rand_point(r: random.Random, n: int, bound: int = 4, ctx: FieldCtx = QQ) -> Point:
    return Point([rand_rat(r, bound) for _ in range(n)], ctx)


def pythagorean(r: random.Random, top: int = 6) -> tuple[mpq, mpq]:
    """A rational point ``(c, s)`` on the unit circle, ``c, s`` both nonzero."""
    while True:
        m = r.randint(1, top)
        k = r.randint(1, top)
        if m == k:
            continue
        h = m * m + k * k
        c, s = mpq(m * m - k * k, h), mpq(2 * m * k, h)
        if r.random() < 0.5:
            c, s = s, c
        return c * r.choice((1, -1)), s * r.choice((1, -1))


def rand_speed(r: random.Random) -> mpq:
    """A speed ``v`` with ``sqrt(1 - v^2)`` rational."""
    if r.random() < 0.15:
        return mpq(0)
    return pythagorean(r)[0]


def _givens(m: int, i: int, j: int, c, s) -> list:
    rows = [[mpq(int(a == b)) for b in range(m)] for a in range(m)]
    rows[i][i], rows[i][j] = c, -s
    rows[j][i], rows[j][j] = s, c
    return rows


def rand_rotation(r: random.Random, n: int, steps: int = 2) -> AffineMap:
    """Product of Pythagorean Givens rotations of the spatial axes."""
    m = n - 1
    f = identity(n)
    if m < 2:
        return f
    for _ in range(steps):
        i, j = sorted(r.sample(range(m), 2))
        c, s = pythagorean(r)
        f = f.then(rotation_from_orthonormal(_givens(m, i, j, c, s)))
    return f


def rand_automorphism(r: random.Random, n: int, ctx: FieldCtx = QQ, bound: int = 3) -> AffineMap:
    """Scaling, boost along axis 1, rotation, optional time reversal, translation."""
    c = mpq(r.randint(1, 12), r.choice((1, 2, 3, 4))) * r.choice((1, -1))
    f = scaling(c, n, ctx)
    f = f.then(boost(1, rand_speed(r), n, ctx))
    f = f.then(rand_rotation(r, n))
    if r.random() < 0.5:
        f = f.then(time_reversal(n, ctx))
    return f.then(translation(rand_point(r, n, bound, ctx)))


def sample_pair(r: random.Random, kind: RelKind, n: int, ctx: FieldCtx = QQ) -> tuple[Point, Point]:
    """A random pair of the given kind, canonicalizable over the base field."""
    p, q = canonical_pair(kind, n, ctx)
    f = rand_automorphism(r, n, ctx)
    return f(p), f(q)


def sample_offset(r: random.Random, n: int, kind: RelKind, scale: mpq = mpq(1)) -> tuple:
    """A vector of the given causal kind, by construction.

    Timelike: ``|t| > sum |x_i|``; spacelike: one spatial component beats
    ``|t|``; lightlike: via :func:`sample_null_offset`.
    """
    if kind is RelKind.LIGHTLIKE:
        return sample_null_offset(r, n, scale)
    if kind is RelKind.EQUAL:
        return (mpq(0),) * n
    xs = [rand_rat(r, 1) * scale for _ in range(n - 1)]
    budget = sum(abs(x) for x in xs)
    extra = mpq(r.randint(1, 16), 8) * scale
    if kind is RelKind.TIMELIKE:
        t = (budget + extra) * r.choice((1, -1))
        return (t,) + tuple(xs)
    t = rand_rat(r, 1) * scale
    k = r.randrange(n - 1)
    rest = sum(abs(x) for i, x in enumerate(xs) if i != k)
    xs[k] = (abs(t) + extra + rest) * r.choice((1, -1))
    return (t,) + tuple(xs)


def sample_null_offset(r: random.Random, n: int, scale: mpq = mpq(1)) -> tuple:
    """A nonzero null vector ``(t, x)`` with rational spatial direction."""
    m = n - 1
    direction = [mpq(0)] * m
    direction[0] = mpq(1)
    if m >= 2:
        c, s = pythagorean(r)
        i, j = sorted(r.sample(range(m), 2))
        direction = [mpq(0)] * m
        direction[i], direction[j] = c, s
    else:
        direction[0] = mpq(r.choice((1, -1)))
    t = mpq(r.randint(1, 16), 4) * scale * r.choice((1, -1))
    return (t,) + tuple(t * d * r.choice((1, -1)) if m == 1 else abs(t) * d for d in direction)


def sample_in_cone(r: random.Random, apex: Point, kind: RelKind, scale: mpq = mpq(1)) -> Point:
    """``apex + offset`` with the offset of the requested kind."""
    off = sample_offset(r, apex.n, kind, scale)
    return apex + Point(off, apex.ctx)
