"""Points of Q^n and the causal relations between them.

Axis 0 is time.  Two distinct points are timelike, lightlike or spacelike
related according to the sign of

    (p0 - q0)^2 - (p1 - q1)^2 - ... - (p_{n-1} - q_{n-1})^2

and lightlike relatedness is strict (equal points are never lightlike).
"""
from __future__ import annotations

import enum
import re
from typing import Iterable, Sequence

from gmpy2 import mpq

from .exactfield import _ZERO, QQ, ContextMismatch, FieldCtx, FieldElem

__all__ = [
    "RelKind",
    "RelSet",
    "Point",
    "DimensionMismatch",
    "mink_form",
    "relate",
    "in_future_of",
    "in_past_of",
    "on_light_cone",
    "in_causal_cone",
    "holds",
    "points",
    "TAU",
    "LAM",
    "SIG",
    "EQ",
    "NE",
    "NTAU",
    "NLAM",
    "NSIG",
    "NTAU_NE",
    "NLAM_NE",
    "NSIG_NE",
    "ALL",
    "EMPTY",
]


class DimensionMismatch(ValueError):
    pass


class RelKind(enum.Enum):
    EQUAL = 1
    TIMELIKE = 2
    LIGHTLIKE = 4
    SPACELIKE = 8

    @property
    def letter(self) -> str:
        return self.name[0]

    def __str__(self):
        return self.name.capitalize()


_KIND_ORDER = (RelKind.EQUAL, RelKind.TIMELIKE, RelKind.LIGHTLIKE, RelKind.SPACELIKE)


class RelSet:
    """A set of :class:`RelKind` values, stored as a 4-bit mask."""

    __slots__ = ("mask",)

    def __init__(self, mask: int = 0):
        if not 0 <= mask <= 15:
            raise ValueError(f"mask out of range: {mask}")
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("RelSet is immutable")

    @classmethod
    def of(cls, *kinds: RelKind) -> RelSet:
        m = 0
        for k in kinds:
            m |= k.value
        return cls(m)

    def __contains__(self, kind: RelKind) -> bool:
        return bool(self.mask & kind.value)

    def __iter__(self):
        return (k for k in _KIND_ORDER if self.mask & k.value)

    def __len__(self):
        return bin(self.mask).count("1")

    def __or__(self, other: RelSet) -> RelSet:
        return RelSet(self.mask | other.mask)

    def __and__(self, other: RelSet) -> RelSet:
        return RelSet(self.mask & other.mask)

    def __invert__(self) -> RelSet:
        return RelSet(~self.mask & 15)

    def __le__(self, other: RelSet) -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: RelSet) -> bool:
        return self <= other and self.mask != other.mask

    def __eq__(self, other):
        return isinstance(other, RelSet) and self.mask == other.mask

    def __hash__(self):
        return hash(("RelSet", self.mask))

    def __bool__(self):
        return self.mask != 0

    def swap_time_space(self) -> RelSet:
        """Exchange the timelike and spacelike bits."""
        m = self.mask & (RelKind.EQUAL.value | RelKind.LIGHTLIKE.value)
        if self.mask & RelKind.TIMELIKE.value:
            m |= RelKind.SPACELIKE.value
        if self.mask & RelKind.SPACELIKE.value:
            m |= RelKind.TIMELIKE.value
        return RelSet(m)

    @property
    def letters(self) -> str:
        return "".join(k.letter for k in self)

    def __repr__(self):
        return "RelSet({" + ",".join(k.letter for k in self) + "})"

    @classmethod
    def all_masks(cls) -> list[RelSet]:
        return [cls(m) for m in range(16)]


EMPTY = RelSet(0)
EQ = RelSet.of(RelKind.EQUAL)
TAU = RelSet.of(RelKind.TIMELIKE)
LAM = RelSet.of(RelKind.LIGHTLIKE)
SIG = RelSet.of(RelKind.SPACELIKE)
ALL = RelSet(15)
NE = ~EQ
NTAU = ~TAU
NLAM = ~LAM
NSIG = ~SIG
NTAU_NE = NTAU & NE
NLAM_NE = NLAM & NE
NSIG_NE = NSIG & NE


class Point:
    """Immutable coordinate vector; ``coords[0]`` is time."""

    __slots__ = ("coords", "ctx")

    def __init__(self, coords: Iterable, ctx: FieldCtx | None = None):
        raw = list(coords)
        if ctx is None:
            ctx = QQ
            for c in raw:
                if isinstance(c, FieldElem) and c.ctx.d is not None:
                    ctx = c.ctx
                    break
        elems = []
        for c in raw:
            if isinstance(c, FieldElem):
                elems.append(c.in_ctx(ctx))
            elif isinstance(c, str):
                elems.append(FieldElem.parse(c, ctx))
            else:
                elems.append(FieldElem(c, 0, ctx))
        if len(elems) < 2:
            raise ValueError("points need at least 2 coordinates")
        object.__setattr__(self, "coords", tuple(elems))
        object.__setattr__(self, "ctx", ctx)

    def __setattr__(self, name, value):
        raise AttributeError("Point is immutable")

    @classmethod
    def _raw(cls, coords: tuple, ctx: FieldCtx) -> Point:
        obj = object.__new__(cls)
        object.__setattr__(obj, "coords", coords)
        object.__setattr__(obj, "ctx", ctx)
        return obj

    @classmethod
    def origin(cls, n: int, ctx: FieldCtx = QQ) -> Point:
        z = ctx.zero()
        return cls._raw((z,) * n, ctx)

    @classmethod
    def unit(cls, n: int, axis: int, ctx: FieldCtx = QQ) -> Point:
        return cls([1 if i == axis else 0 for i in range(n)], ctx)

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def time(self) -> FieldElem:
        return self.coords[0]

    @property
    def space(self) -> tuple:
        return self.coords[1:]

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def _check(self, other: Point):
        if len(other.coords) != len(self.coords):
            raise DimensionMismatch(f"{len(self.coords)} vs {len(other.coords)}")

    def _join(self, other: Point) -> FieldCtx:
        self._check(other)
        if other.ctx == self.ctx or other.ctx.d is None:
            return self.ctx
        if self.ctx.d is None:
            return other.ctx
        raise ContextMismatch(f"{self.ctx} vs {other.ctx}")

    def __add__(self, other: Point) -> Point:
        ctx = self._join(other)
        return Point._raw(tuple(a + b for a, b in zip(self.coords, other.coords)), ctx)

    def __sub__(self, other: Point) -> Point:
        ctx = self._join(other)
        return Point._raw(tuple(a - b for a, b in zip(self.coords, other.coords)), ctx)

    def __neg__(self) -> Point:
        return Point._raw(tuple(-a for a in self.coords), self.ctx)

    def scale(self, c) -> Point:
        ctx = self.ctx
        if isinstance(c, FieldElem) and c.ctx.d is not None:
            ctx = c.ctx
        return Point._raw(tuple((a * c).in_ctx(ctx) for a in self.coords), ctx)

    __mul__ = scale
    __rmul__ = scale

    def midpoint(self, other: Point) -> Point:
        return (self + other).scale(mpq(1, 2))

    def with_ctx(self, ctx: FieldCtx) -> Point:
        return Point._raw(tuple(c.in_ctx(ctx) for c in self.coords), ctx)

    def padded(self, n: int) -> Point:
        """Embed into ``n`` dimensions by appending zero coordinates."""
        if n < len(self.coords):
            raise DimensionMismatch(f"cannot pad {len(self.coords)} down to {n}")
        z = self.ctx.zero()
        return Point._raw(self.coords + (z,) * (n - len(self.coords)), self.ctx)

    def quad(self) -> FieldElem:
        """Minkowski form of the position vector: t^2 - |x|^2."""
        c = self.coords
        if self.ctx.d is None:
            a0 = c[0].a
            s = a0 * a0
            for e in c[1:]:
                s -= e.a * e.a
            return FieldElem._raw(s, _ZERO, self.ctx)
        s = c[0] * c[0]
        for e in c[1:]:
            s = s - e * e
        return s

    def __eq__(self, other):
        return isinstance(other, Point) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"Point{self}"

    @classmethod
    def parse(cls, text: str, ctx: FieldCtx = QQ) -> Point:
        m = re.fullmatch(r"\s*\((.*)\)\s*", text)
        if not m:
            raise ValueError(f"bad point literal {text!r}")
        parts = [s for s in m.group(1).split(",")]
        if any(not s.strip() for s in parts):
            raise ValueError(f"bad point literal {text!r}")
        return cls([FieldElem.parse(s, ctx) for s in parts], ctx)


def mink_form(p: Point, q: Point) -> FieldElem:
    """(p0-q0)^2 - sum_{i>=1} (p_i-q_i)^2."""
    if len(p.coords) != len(q.coords):
        raise DimensionMismatch(f"{len(p.coords)} vs {len(q.coords)}")
    if p.ctx.d is None and q.ctx.d is None:
        pc, qc = p.coords, q.coords
        d0 = pc[0].a - qc[0].a
        s = d0 * d0
        for i in range(1, len(pc)):
            d = pc[i].a - qc[i].a
            s -= d * d
        return FieldElem._raw(s, _ZERO, QQ)
    return (p - q).quad()


def relate(p: Point, q: Point) -> RelKind:
    s = mink_form(p, q).sign()
    if s > 0:
        return RelKind.TIMELIKE
    if s < 0:
        return RelKind.SPACELIKE
    if p.coords == q.coords:
        return RelKind.EQUAL
    return RelKind.LIGHTLIKE


def holds(rel: RelSet, p: Point, q: Point) -> bool:
    return relate(p, q) in rel


def in_future_of(p: Point, q: Point, mode: str = "timelike") -> bool:
    """``p`` lies in the timelike (``mode="timelike"``) or causal future of ``q``."""
    k = relate(p, q)
    if mode == "timelike":
        return k is RelKind.TIMELIKE and p.time > q.time
    if mode == "causal":
        return k is not RelKind.SPACELIKE and p.time >= q.time
    raise ValueError(f"unknown mode {mode!r}")


def in_past_of(p: Point, q: Point, mode: str = "timelike") -> bool:
    k = relate(p, q)
    if mode == "timelike":
        return k is RelKind.TIMELIKE and p.time < q.time
    if mode == "causal":
        return k is not RelKind.SPACELIKE and p.time <= q.time
    raise ValueError(f"unknown mode {mode!r}")


def on_light_cone(p: Point, apex: Point) -> bool:
    return relate(p, apex) in (RelKind.LIGHTLIKE, RelKind.EQUAL)


def in_causal_cone(p: Point, apex: Point) -> bool:
    return relate(p, apex) is not RelKind.SPACELIKE


def points(*rows: Sequence, ctx: FieldCtx = QQ) -> list[Point]:
    """Shorthand: ``points((0, 0), (1, 1))``."""
    return [Point(r, ctx) for r in rows]
