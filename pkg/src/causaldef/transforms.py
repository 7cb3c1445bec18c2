"""Automorphisms of (Q^n, tau, lambda, sigma) and the special maps used in proofs.

Every affine map carries a declared :class:`RelationEffect`.  The declared
effect is a claim about what the map does to the causal relations;
:meth:`AffineMap.verify_effect` checks it on sample pairs.
"""
from __future__ import annotations

import enum
import json
from typing import Callable, Sequence

from gmpy2 import mpq

from .exactfield import QQ, FieldCtx, FieldElem, NotASquare, ContextMismatch
from .minkowski import Point, RelKind, relate, DimensionMismatch

__all__ = [
    "RelationEffect",
    "AffineMap",
    "PartialMap",
    "TransformError",
    "SingularMatrix",
    "ZeroScale",
    "SpeedOutOfRange",
    "NotOrthonormal",
    "WrongDeterminant",
    "WrongRegime",
    "EqualPoints",
    "WrongDimension",
    "TargetNotLightlike",
    "TargetNotSpacelike",
    "NoEpsilonFound",
    "OnLightConeOfOrigin",
    "OutsideDomain",
    "EscapeFailed",
    "identity",
    "translation",
    "scaling",
    "time_reversal",
    "boost",
    "rotation_from_orthonormal",
    "householder_rotation",
    "boost_scale_tau",
    "boost_scale_sigma",
    "canonicalize_pair",
    "canonical_pair",
    "swap_tx",
    "lifted_conjugation",
    "time_compress",
    "time_dilate",
    "hyperbolic_inversion",
    "escape_map",
    "escape_iteration",
]


class TransformError(ValueError):
    pass


class SingularMatrix(TransformError):
    pass


class ZeroScale(TransformError):
    pass


class SpeedOutOfRange(TransformError):
    pass


class NotOrthonormal(TransformError):
    pass


class WrongDeterminant(TransformError):
    pass


class WrongRegime(TransformError):
    pass


class EqualPoints(TransformError):
    pass


class WrongDimension(TransformError):
    pass


class TargetNotLightlike(TransformError):
    pass


class TargetNotSpacelike(TransformError):
    pass


class NoEpsilonFound(TransformError):
    def __init__(self, pair, message=""):
        self.pair = pair
        super().__init__(message or f"no epsilon found; violated pair {pair}")


class OnLightConeOfOrigin(TransformError):
    pass


class OutsideDomain(TransformError):
    pass


class EscapeFailed(TransformError):
    pass


class RelationEffect(enum.Enum):
    PRESERVES_ALL = "PreservesAll"
    PRESERVES_LIGHT_SWAPS_TIME_SPACE = "PreservesLightSwapsTimeSpace"
    PRESERVES_LIGHT_ONLY = "PreservesLightOnly"
    CUSTOM = "Custom"

    def then(self, later: RelationEffect) -> RelationEffect:
        """Effect of applying ``self`` first and ``later`` second."""
        PA, SW = RelationEffect.PRESERVES_ALL, RelationEffect.PRESERVES_LIGHT_SWAPS_TIME_SPACE
        if RelationEffect.CUSTOM in (self, later):
            return RelationEffect.CUSTOM
        if self is PA:
            return later
        if later is PA:
            return self
        if self is SW and later is SW:
            return PA
        return RelationEffect.PRESERVES_LIGHT_ONLY


_SWAP = {
    RelKind.TIMELIKE: RelKind.SPACELIKE,
    RelKind.SPACELIKE: RelKind.TIMELIKE,
    RelKind.LIGHTLIKE: RelKind.LIGHTLIKE,
    RelKind.EQUAL: RelKind.EQUAL,
}


def _expected(effect: RelationEffect, before: RelKind, after: RelKind) -> bool:
    if effect is RelationEffect.PRESERVES_ALL:
        return before is after
    if effect is RelationEffect.PRESERVES_LIGHT_SWAPS_TIME_SPACE:
        return _SWAP[before] is after
    if effect is RelationEffect.PRESERVES_LIGHT_ONLY:
        return (before is RelKind.LIGHTLIKE) == (after is RelKind.LIGHTLIKE) and (
            before is RelKind.EQUAL
        ) == (after is RelKind.EQUAL)
    return True


Matrix = tuple  # tuple of rows, each a tuple of FieldElem


def _mat(rows, ctx: FieldCtx) -> Matrix:
    out = []
    for r in rows:
        out.append(tuple(x.in_ctx(ctx) if isinstance(x, FieldElem) else FieldElem(x, 0, ctx) for x in r))
    return tuple(out)


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    m = len(b[0])
    k = len(b)
    return tuple(
        tuple(sum((a[i][t] * b[t][j] for t in range(1, k)), a[i][0] * b[0][j]) for j in range(m))
        for i in range(n)
    )


def _matvec(a: Matrix, v: Sequence[FieldElem]) -> tuple:
    return tuple(sum((row[t] * v[t] for t in range(1, len(v))), row[0] * v[0]) for row in a)


def _det_and_inverse(a: Matrix, ctx: FieldCtx):
    """Gauss-Jordan elimination; returns ``(det, inverse)`` or ``(0, None)``."""
    n = len(a)
    one, zero = ctx.one(), ctx.zero()
    m = [list(a[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    det = one
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return zero, None
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        pv = m[col][col]
        det = det * pv
        inv = pv.inv()
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det, tuple(tuple(row[n:]) for row in m)


class AffineMap:
    """``x -> matrix @ x + offset`` with an exact invertible matrix."""

    __slots__ = ("matrix", "offset", "effect", "ctx", "_inv")

    def __init__(self, matrix, offset: Point | None = None, effect=RelationEffect.CUSTOM, ctx: FieldCtx | None = None):
        if ctx is None:
            ctx = offset.ctx if offset is not None else QQ
            for row in matrix:
                for x in row:
                    if isinstance(x, FieldElem) and x.ctx.d is not None:
                        ctx = x.ctx
        mat = _mat(matrix, ctx)
        n = len(mat)
        if any(len(r) != n for r in mat):
            raise DimensionMismatch("matrix must be square")
        if offset is None:
            offset = Point.origin(n, ctx)
        if offset.n != n:
            raise DimensionMismatch(f"offset has dimension {offset.n}, matrix {n}")
        det, inv = _det_and_inverse(mat, ctx)
        if inv is None:
            raise SingularMatrix("matrix is not invertible")
        self._set(mat, offset.with_ctx(ctx), effect, ctx, inv)

    def _set(self, mat, offset, effect, ctx, inv):
        self.matrix = mat
        self.offset = offset
        self.effect = RelationEffect(effect)
        self.ctx = ctx
        self._inv = inv

    @classmethod
    def _trusted(cls, mat, offset, effect, ctx, inv=None):
        # products of invertible maps are invertible; the inverse is lazy
        obj = object.__new__(cls)
        obj._set(mat, offset, effect, ctx, inv)
        return obj

    def _inverse_matrix(self):
        if self._inv is None:
            self._inv = _det_and_inverse(self.matrix, self.ctx)[1]
        return self._inv

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __call__(self, p: Point) -> Point:
        if p.n != self.n:
            raise DimensionMismatch(f"map on Q^{self.n} applied to point in Q^{p.n}")
        v = _matvec(self.matrix, p.coords)
        return Point._raw(tuple(a + b for a, b in zip(v, self.offset.coords)), self.ctx)

    apply = __call__

    def then(self, later: AffineMap) -> AffineMap:
        """The composite ``later o self``."""
        if later.n != self.n:
            raise DimensionMismatch("cannot compose maps of different dimension")
        ctx = self.ctx if self.ctx.d else later.ctx
        mat = _matmul(later.matrix, self.matrix)
        inv = None
        if self._inv is not None and later._inv is not None:
            inv = _matmul(self._inv, later._inv)
        if ctx.d is not None:
            mat = _mat(mat, ctx)
            inv = inv and _mat(inv, ctx)
        off = later(self.offset.with_ctx(ctx))
        return AffineMap._trusted(mat, off.with_ctx(ctx), self.effect.then(later.effect), ctx, inv)

    def __matmul__(self, other: AffineMap) -> AffineMap:
        return other.then(self)

    def inverse(self) -> AffineMap:
        inv = self._inverse_matrix()
        off = _matvec(inv, self.offset.coords)
        return AffineMap._trusted(
            inv, Point._raw(tuple(-x for x in off), self.ctx), self.effect, self.ctx, self.matrix
        )

    def det(self) -> FieldElem:
        return _det_and_inverse(self.matrix, self.ctx)[0]

    def verify_effect(self, pairs) -> list:
        """Return the pairs on which the declared effect fails (empty = ok)."""
        bad = []
        for p, q in pairs:
            before, after = relate(p, q), relate(self(p), self(q))
            if not _expected(self.effect, before, after):
                bad.append((p, q, before, after))
        return bad

    def __eq__(self, other):
        return (
            isinstance(other, AffineMap)
            and self.matrix == other.matrix
            and self.offset == other.offset
            and self.effect is other.effect
        )

    def __hash__(self):
        return hash((self.matrix, self.offset, self.effect))

    def __repr__(self):
        rows = "; ".join(", ".join(str(x) for x in r) for r in self.matrix)
        return f"AffineMap([{rows}] + {self.offset}, {self.effect.value})"

    def to_json(self) -> dict:
        return {
            "matrix": [[str(x) for x in row] for row in self.matrix],
            "offset": str(self.offset),
            "effect": self.effect.value,
            "field": str(self.ctx),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict, ctx: FieldCtx | None = None) -> AffineMap:
        from .exactfield import parse_field

        if ctx is None:
            ctx = parse_field(data.get("field", "Q"))
        mat = [[FieldElem.parse(x, ctx) for x in row] for row in data["matrix"]]
        return cls(mat, Point.parse(data["offset"], ctx), RelationEffect(data["effect"]), ctx)


class PartialMap:
    """A map of Q^n given by a function and a domain predicate."""

    def __init__(self, name: str, fn: Callable[[Point], Point], domain: Callable[[Point], bool], effect=RelationEffect.CUSTOM):
        self.name = name
        self._fn = fn
        self._domain = domain
        self.effect = RelationEffect(effect)

    def in_domain(self, p: Point) -> bool:
        return self._domain(p)

    def __call__(self, p: Point) -> Point:
        if not self._domain(p):
            raise OutsideDomain(f"{p} is outside the domain of {self.name}")
        return self._fn(p)

    def __repr__(self):
        return f"PartialMap({self.name})"


# ---------------------------------------------------------------------------
# elementary automorphisms

def _as_elem(x, ctx: FieldCtx) -> FieldElem:
    return x.in_ctx(ctx) if isinstance(x, FieldElem) else FieldElem(x, 0, ctx)


def _ctx_of(*xs) -> FieldCtx:
    for x in xs:
        if isinstance(x, FieldElem) and x.ctx.d is not None:
            return x.ctx
    return QQ


def _diag(vals) -> list:
    n = len(vals)
    return [[vals[i] if i == j else 0 for j in range(n)] for i in range(n)]


def identity(n: int, ctx: FieldCtx = QQ) -> AffineMap:
    return AffineMap(_diag([1] * n), None, RelationEffect.PRESERVES_ALL, ctx)


def translation(v: Point) -> AffineMap:
    return AffineMap(_diag([1] * v.n), v, RelationEffect.PRESERVES_ALL, v.ctx)


def scaling(c, n: int = 2, ctx: FieldCtx | None = None) -> AffineMap:
    ctx = ctx or _ctx_of(c)
    c = _as_elem(c, ctx)
    if not c:
        raise ZeroScale("scaling factor must be nonzero")
    return AffineMap(_diag([c] * n), None, RelationEffect.PRESERVES_ALL, ctx)


def time_reversal(n: int = 2, ctx: FieldCtx = QQ) -> AffineMap:
    return AffineMap(_diag([-1] + [1] * (n - 1)), None, RelationEffect.PRESERVES_ALL, ctx)


def boost(i: int, v, n: int = 2, ctx: FieldCtx | None = None) -> AffineMap:
    """Lorentz boost along spatial axis ``i`` with velocity ``v``.

    Needs ``-1 < v < 1`` and an exact ``sqrt(1 - v^2)`` in the field.
    """
    ctx = ctx or _ctx_of(v)
    if not 1 <= i <= n - 1:
        raise WrongDimension(f"axis {i} is not a spatial axis of Q^{n}")
    v = _as_elem(v, ctx)
    rad = 1 - v * v
    if rad.sign() <= 0:
        raise SpeedOutOfRange(f"|v| must be < 1, got {v}")
    s = rad.sqrt()
    g = s.inv()
    rows = _diag([1] * n)
    rows[0][0] = g
    rows[0][i] = -v * g
    rows[i][0] = -v * g
    rows[i][i] = g
    return AffineMap(rows, None, RelationEffect.PRESERVES_ALL, ctx)


def rotation_from_orthonormal(rows) -> AffineMap:
    """Spatial rotation from an exact orthonormal matrix with determinant 1."""
    m = len(rows)
    ctx = _ctx_of(*(x for r in rows for x in r))
    spatial = _mat(rows, ctx)
    if any(len(r) != m for r in spatial):
        raise NotOrthonormal("rotation rows must form a square matrix")
    for i in range(m):
        for j in range(m):
            dot = sum((spatial[i][k] * spatial[j][k] for k in range(1, m)), spatial[i][0] * spatial[j][0])
            if dot != (1 if i == j else 0):
                raise NotOrthonormal(f"rows {i} and {j} have inner product {dot}")
    det, _ = _det_and_inverse(spatial, ctx)
    if det != 1:
        raise WrongDeterminant(f"rotation determinant is {det}, not 1")
    full = [[1] + [0] * m] + [[0] + list(r) for r in spatial]
    return AffineMap(full, None, RelationEffect.PRESERVES_ALL, ctx)


def householder_rotation(w: Sequence[FieldElem], norm: FieldElem) -> AffineMap:
    """A rotation sending the spatial vector ``w`` to ``(norm, 0, ..., 0)``.

    ``norm`` must be the exact Euclidean length of ``w``.  A Householder
    reflection does the job with determinant -1; flipping a second spatial axis
    afterwards restores determinant 1 without moving the image of ``w``.
    """
    m = len(w)
    ctx = norm.ctx
    if m < 2:
        raise WrongDimension("spatial rotations need at least 2 spatial axes")
    v = [w[0] - norm] + list(w[1:])
    vv = sum((x * x for x in v[1:]), v[0] * v[0])
    if not vv:
        return rotation_from_orthonormal(_diag([ctx.one()] * m))
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            h = (1 if i == j else 0) - 2 * v[i] * v[j] / vv
            row.append(-h if i == 1 else h)
        rows.append(row)
    return rotation_from_orthonormal(rows)


def boost_scale_tau(t, x, n: int = 2) -> AffineMap:
    """Boost with speed x/t followed by scaling; sends (t, x, 0..) to (1, 0, ..)."""
    ctx = _ctx_of(t, x)
    t, x = _as_elem(t, ctx), _as_elem(x, ctx)
    if not t > abs(x):
        raise WrongRegime(f"need t > |x|, got t={t}, x={x}")
    s2 = t * t - x * x
    return _boost_scale(t, x, s2, n, ctx, time_first=True)


def boost_scale_sigma(t, x, n: int = 2) -> AffineMap:
    """Boost with speed t/x followed by scaling; sends (t, x, 0..) to (0, 1, 0..)."""
    ctx = _ctx_of(t, x)
    t, x = _as_elem(t, ctx), _as_elem(x, ctx)
    if not abs(x) > abs(t):
        raise WrongRegime(f"need |x| > |t|, got t={t}, x={x}")
    s2 = x * x - t * t
    return _boost_scale(t, x, s2, n, ctx, time_first=False)


def _boost_scale(t, x, s2, n, ctx, time_first):
    inv2 = s2.inv()
    a, b = (t, x) if time_first else (x, t)
    rows = _diag([1] * n)
    rows[0][0] = a * inv2
    rows[0][1] = -b * inv2
    rows[1][0] = -b * inv2
    rows[1][1] = a * inv2
    if n > 2:
        s_inv = s2.sqrt().inv()
        for k in range(2, n):
            rows[k][k] = s_inv
    return AffineMap(rows, None, RelationEffect.PRESERVES_ALL, ctx)


def canonical_pair(kind: RelKind, n: int, ctx: FieldCtx = QQ) -> tuple[Point, Point]:
    o = Point.origin(n, ctx)
    if kind is RelKind.TIMELIKE:
        return o, Point.unit(n, 0, ctx)
    if kind is RelKind.LIGHTLIKE:
        return o, Point([1, 1] + [0] * (n - 2), ctx)
    if kind is RelKind.SPACELIKE:
        return o, Point.unit(n, 1, ctx)
    if kind is RelKind.EQUAL:
        return o, o
    raise ValueError(kind)


def canonicalize_pair(p: Point, q: Point) -> tuple[AffineMap, RelKind]:
    """An automorphism sending ``(p, q)`` to the canonical pair of its kind.

    For ``n = 2`` no square roots are needed.  For ``n >= 3`` the rotation into
    the tx-plane needs ``|q - p|_space`` and the boost needs
    ``sqrt(|t^2 - x^2|)``; all missing roots are reported together in
    :class:`NotASquare`.
    """
    if p.n != q.n:
        raise DimensionMismatch(f"{p.n} vs {q.n}")
    if p == q:
        raise EqualPoints("cannot canonicalize a pair of equal points")
    n = p.n
    ctx = p.ctx if p.ctx.d is not None else q.ctx
    f = translation(-p).then(identity(n, ctx))
    d = f(q)
    if d.time.sign() < 0:
        f = f.then(time_reversal(n, ctx))
        d = f(q)
    t = d.time
    if n == 2:
        x = d[1]
    else:
        w = d.space
        w2 = sum((c * c for c in w[1:]), w[0] * w[0])
        kind = relate(p, q)
        blocked = []
        norm = None
        if w2:
            try:
                norm = w2.sqrt()
            except NotASquare:
                blocked.append(w2)
        if kind is RelKind.TIMELIKE and w2:
            try:
                (t * t - w2).sqrt()
            except NotASquare:
                blocked.append(t * t - w2)
        elif kind is RelKind.SPACELIKE and t:
            try:
                (w2 - t * t).sqrt()
            except NotASquare:
                blocked.append(w2 - t * t)
        if blocked:
            raise NotASquare(*blocked)
        if norm is not None:
            f = f.then(householder_rotation(w, norm).then(identity(n, ctx)))
        d = f(q)
        x = d[1]
    if t > abs(x):
        tag = RelKind.TIMELIKE
        f = f.then(boost_scale_tau(t, x, n))
    elif t == abs(x):
        tag = RelKind.LIGHTLIKE
        if x.sign() > 0:
            f = f.then(scaling(t.inv(), n, ctx))
        else:
            f = f.then(time_reversal(n, ctx)).then(scaling(-t.inv(), n, ctx))
    else:
        tag = RelKind.SPACELIKE
        f = f.then(boost_scale_sigma(t, x, n))
    return f, tag


def swap_tx() -> AffineMap:
    """(t, x) -> (x, t): keeps lightlike pairs, exchanges timelike and spacelike."""
    return AffineMap([[0, 1], [1, 0]], None, RelationEffect.PRESERVES_LIGHT_SWAPS_TIME_SPACE)


def lifted_conjugation(ctx: FieldCtx) -> PartialMap:
    """Coordinatewise a + b*rt -> a - b*rt on Q(rt d)^n."""
    if ctx.d is None:
        raise ContextMismatch("conjugation needs a quadratic extension")

    def fn(p: Point) -> Point:
        return Point._raw(tuple(c.conjugate() for c in p.coords), ctx)

    def domain(p: Point) -> bool:
        return p.ctx == ctx or p.ctx.d is None

    return PartialMap(f"conj[{ctx}]", lambda p: fn(p.with_ctx(ctx)), domain, RelationEffect.PRESERVES_LIGHT_ONLY)


# ---------------------------------------------------------------------------
# time rescaling

def _time_scaled(points: Sequence[Point], factor) -> list[Point]:
    return [Point._raw((p.coords[0] * factor,) + p.coords[1:], p.ctx) for p in points]


def _time_scale_search(points, target, shrink: bool, max_halvings: int):
    i, j = target
    if relate(points[i], points[j]) is not RelKind.LIGHTLIKE:
        raise TargetNotLightlike(f"target pair {target} is not lightlike")
    keep = RelKind.TIMELIKE if shrink else RelKind.SPACELIKE
    want = RelKind.SPACELIKE if shrink else RelKind.TIMELIKE
    m = len(points)
    before = {(a, b): relate(points[a], points[b]) for a in range(m) for b in range(a + 1, m)}
    eps = mpq(1, 2)
    violated = None
    for _ in range(max_halvings):
        factor = 1 - eps if shrink else 1 + eps
        images = _time_scaled(points, factor)
        violated = None
        for (a, b), k in before.items():
            after = relate(images[a], images[b])
            if (k is keep) != (after is keep) or (k is RelKind.EQUAL) != (after is RelKind.EQUAL):
                violated = (a, b)
                break
        if violated is None and relate(images[i], images[j]) is want:
            return eps, images
        eps /= 2
    raise NoEpsilonFound(violated or target)


def time_compress(points: Sequence[Point], target: tuple[int, int], max_halvings: int = 64):
    """Find eps in (0, 1) so that scaling time by ``1 - eps`` keeps every
    timelike / non-timelike / equality pattern and turns the lightlike
    ``target`` pair spacelike.  Returns ``(eps, images)``."""
    return _time_scale_search(points, target, True, max_halvings)


def time_dilate(points: Sequence[Point], target: tuple[int, int], max_halvings: int = 64):
    """Mirror of :func:`time_compress` for the spacelike signature: scale time by
    ``1 + eps``, keep spacelike patterns, and turn the target pair timelike."""
    return _time_scale_search(points, target, False, max_halvings)


# ---------------------------------------------------------------------------
# hyperbolic inversion

def hyperbolic_inversion(p: Point) -> Point:
    """r -> r / (r0^2 - r1^2 - ... - r_{n-1}^2), off the light cone of the origin."""
    qv = p.quad()
    if not qv:
        raise OnLightConeOfOrigin(f"{p} is on the light cone of the origin")
    return p.scale(qv.inv())


def escape_map(regime: RelKind, n: int, ctx: FieldCtx = QQ) -> AffineMap:
    """Scale by 2, then shift by -1 along x (timelike regime) or t (spacelike)."""
    if regime is RelKind.TIMELIKE:
        axis = 1
    elif regime is RelKind.SPACELIKE:
        axis = 0
    else:
        raise ValueError("regime must be TIMELIKE or SPACELIKE")
    shift = Point([-1 if k == axis else 0 for k in range(n)], ctx)
    return scaling(2, n, ctx).then(translation(shift))


def escape_iteration(points: Sequence[Point], regime: RelKind, max_iter: int = 64) -> list[Point]:
    """Apply :func:`escape_map` until no point lies on the origin's light cone."""
    pts = list(points)
    if not pts:
        return pts
    alpha = escape_map(regime, pts[0].n, pts[0].ctx)
    for _ in range(max_iter + 1):
        if all(p.quad() for p in pts):
            return pts
        pts = [alpha(p) for p in pts]
    raise EscapeFailed(f"points still on the light cone after {max_iter} iterations")
