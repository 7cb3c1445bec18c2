"""Exact arithmetic over the rationals and real quadratic fields Q(sqrt d).

Elements are pairs ``(a, b)`` of rationals (``gmpy2.mpq``) standing for the
real number ``a + b*sqrt(d)``.  The ordering is the one inherited from the
reals (``sqrt(d)`` is the positive root), so signs are decidable exactly.

Text literals::

    Q         : "-3/4", "5"
    Q(rt2)    : "1+1*rt", "-1/2*rt", "3-2*rt"
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

import gmpy2
from gmpy2 import mpq

Rat = type(mpq(0))
_ZERO = mpq(0)

__all__ = [
    "FieldCtx",
    "FieldElem",
    "QQ",
    "FieldError",
    "ContextMismatch",
    "NotASquare",
    "NegativeRadicand",
    "quad_field",
    "parse_field",
    "is_square_fraction",
    "sign",
    "sqrt_exact",
    "conjugate",
]


class FieldError(ArithmeticError):
    pass


class ContextMismatch(FieldError):
    pass


class NegativeRadicand(FieldError):
    pass


class NotASquare(FieldError):
    """No square root exists inside the current field.

    ``radicands`` lists every value whose root was needed; callers may restart
    in a quadratic extension that contains one of them.
    """

    def __init__(self, *radicands):
        self.radicands = tuple(radicands)
        super().__init__("not a square in this field: " + ", ".join(str(r) for r in radicands))

    @property
    def radicand(self):
        return self.radicands[0]


def _squarefree_part(d: int) -> tuple[int, int]:
    """Return ``(s, k)`` with ``d == k*k*s`` and ``s`` square-free."""
    k = 1
    s = d
    f = 2
    while f * f <= s:
        while s % (f * f) == 0:
            s //= f * f
            k *= f
        f += 1
    return s, k


def _isqrt_exact(n):
    if n < 0 or not gmpy2.is_square(n):
        return None
    return gmpy2.isqrt(n)


def _rat(x) -> Rat:
    if type(x) is Rat:
        return x
    if isinstance(x, Fraction):
        # Fractions built from mpz parts are rejected by mpq()
        return mpq(int(x.numerator), int(x.denominator))
    return mpq(x)


def is_square_fraction(x):
    """Return the non-negative rational square root of ``x`` or None."""
    x = _rat(x)
    if x < 0:
        return None
    num = _isqrt_exact(x.numerator)
    den = _isqrt_exact(x.denominator)
    if num is None or den is None:
        return None
    return mpq(num, den)


class FieldCtx:
    """Either Q (``d is None``) or Q(sqrt d) with square-free ``d >= 2``."""

    __slots__ = ("d",)

    def __init__(self, d: int | None = None):
        if d is not None:
            d = int(d)
            if d < 2:
                raise ValueError(f"quadratic extension needs d >= 2, got {d}")
            s, _ = _squarefree_part(d)
            if s == 1:
                raise ValueError(f"{d} is a perfect square")
            d = s
        self.d = d

    @property
    def is_rational(self) -> bool:
        return self.d is None

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.d == other.d

    def __hash__(self):
        return hash(("FieldCtx", self.d))

    def __repr__(self):
        return "QQ" if self.d is None else f"quad_field({self.d})"

    def __str__(self):
        return "Q" if self.d is None else f"Q(rt{self.d})"

    def __call__(self, a=0, b=0) -> FieldElem:
        return FieldElem(a, b, self)

    def zero(self) -> FieldElem:
        return FieldElem(0, 0, self)

    def one(self) -> FieldElem:
        return FieldElem(1, 0, self)

    def root(self) -> FieldElem:
        if self.d is None:
            raise ContextMismatch("Q has no adjoined root")
        return FieldElem(0, 1, self)

    def parse(self, text: str) -> FieldElem:
        return FieldElem.parse(text, self)


QQ = FieldCtx()


def quad_field(d: int) -> FieldCtx:
    return FieldCtx(d)


_FIELD_RE = re.compile(r"^\s*Q(?:\(\s*rt(\d+)\s*\))?\s*$")


def parse_field(text: str) -> FieldCtx:
    """Parse ``"Q"`` or ``"Q(rtD)"``."""
    m = _FIELD_RE.match(text)
    if not m:
        raise ValueError(f"bad field literal {text!r}; expected Q or Q(rtD)")
    return QQ if m.group(1) is None else FieldCtx(int(m.group(1)))


Number = Union[int, Fraction, Rat, "FieldElem"]

_RAT = r"[+-]?\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"^{_RAT}$")
_PURE_RE = re.compile(r"^(?P<sign>[+-])?(?P<b>\d+(?:/\d+)?)\*rt$")
_QUAD_RE = re.compile(
    rf"^(?P<a>{_RAT})?\s*(?:(?P<sign>[+-])?\s*(?P<b>\d+(?:/\d+)?)\s*\*\s*rt)?$"
)


class FieldElem:
    """Immutable element ``a + b*sqrt(d)`` of a :class:`FieldCtx`."""

    __slots__ = ("a", "b", "ctx")

    def __init__(self, a=0, b=0, ctx: FieldCtx = QQ):
        a = a if type(a) is Rat else _rat(a)
        b = b if type(b) is Rat else _rat(b)
        if b and ctx.d is None:
            raise ContextMismatch("irrational part in Q context")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "ctx", ctx)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    # -- construction helpers -------------------------------------------
    @classmethod
    def _raw(cls, a: Rat, b: Rat, ctx: FieldCtx) -> FieldElem:
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "ctx", ctx)
        return obj

    def _coerce(self, other) -> FieldElem:
        if type(other) is Rat:
            return FieldElem._raw(other, _ZERO, self.ctx)
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                # rationals embed into every extension
                if other.b == 0 and other.ctx.d is None:
                    return FieldElem._raw(other.a, other.b, self.ctx)
                if self.b == 0 and self.ctx.d is None:
                    raise _Promote(other.ctx)
                raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, (int, Fraction, Rat)):
            return FieldElem._raw(_rat(other), _ZERO, self.ctx)
        raise TypeError(f"cannot combine FieldElem with {type(other).__name__}")

    def in_ctx(self, ctx: FieldCtx) -> FieldElem:
        """Re-home this element in ``ctx`` (rationals embed anywhere)."""
        if ctx == self.ctx:
            return self
        if self.b != 0:
            raise ContextMismatch(f"{self} does not lie in {ctx}")
        return FieldElem._raw(self.a, self.b, ctx)

    # -- arithmetic -----------------------------------------------------
    def _binop(self, other, op):
        try:
            o = self._coerce(other)
        except _Promote as p:
            return op(self.in_ctx(p.ctx), other)
        return op(self, o)

    def __add__(self, other):
        return self._binop(other, _add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, _sub)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return self._binop(other, _mul)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binop(other, lambda x, y: _mul(x, y.inv()))

    def __rtruediv__(self, other):
        return self.inv() * other

    def __neg__(self):
        return FieldElem._raw(-self.a, -self.b, self.ctx)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def norm(self) -> Rat:
        """Field norm ``a^2 - b^2 d`` (``a^2`` over Q)."""
        if self.ctx.d is None:
            return self.a * self.a
        return self.a * self.a - self.b * self.b * self.ctx.d

    def inv(self) -> FieldElem:
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.b == 0:
            return FieldElem._raw(1 / self.a, self.b, self.ctx)
        n = self.norm()
        return FieldElem._raw(self.a / n, -self.b / n, self.ctx)

    def conjugate(self) -> FieldElem:
        """The automorphism ``a + b*rt -> a - b*rt``.  It does not preserve order."""
        if self.ctx.d is None:
            raise ContextMismatch("conjugation needs a quadratic extension")
        return FieldElem._raw(self.a, -self.b, self.ctx)

    # -- order ------------------------------------------------------------
    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sa == sb or sa == 0:
            return sb
        # opposite signs: whichever of a^2 and b^2 d is larger wins
        diff = a * a - b * b * self.ctx.d
        if diff > 0:
            return sa
        if diff < 0:
            return sb
        return 0  # pragma: no cover - d is not a square

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx and (self.b or other.b):
                return False
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction, Rat)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.ctx.d))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- roots ------------------------------------------------------------
    def sqrt(self) -> FieldElem:
        """Exact non-negative square root, or :class:`NotASquare`."""
        s = self.sign()
        if s < 0:
            raise NegativeRadicand(str(self))
        if s == 0:
            return self.ctx.zero()
        a, b, d = self.a, self.b, self.ctx.d
        if d is None or b == 0:
            r = is_square_fraction(a)
            if r is not None:
                return FieldElem._raw(r, _ZERO, self.ctx)
            if d is not None:
                q = is_square_fraction(a / d)
                if q is not None:
                    return FieldElem._raw(_ZERO, q, self.ctx)
            raise NotASquare(self)
        # (p + q rt)^2 = a + b rt  <=>  p^2 + q^2 d = a, 2 p q = b
        disc = is_square_fraction(a * a - b * b * d)
        if disc is not None:
            for p2 in ((a + disc) / 2, (a - disc) / 2):
                p = is_square_fraction(p2)
                if p:
                    q = b / (2 * p)
                    root = FieldElem._raw(p, q, self.ctx)
                    return root if root.sign() > 0 else -root
        raise NotASquare(self)

    # -- text -------------------------------------------------------------
    def __str__(self):
        if self.ctx.d is None or self.b == 0:
            return _fmt_rat(self.a)
        bpart = _fmt_rat(abs(self.b)) + "*rt"
        if self.a == 0:
            return bpart if self.b > 0 else "-" + bpart
        return _fmt_rat(self.a) + ("+" if self.b > 0 else "-") + bpart

    def __repr__(self):
        return f"FieldElem({self}, {self.ctx})"

    @classmethod
    def parse(cls, text: str, ctx: FieldCtx = QQ) -> FieldElem:
        s = text.strip().replace(" ", "")
        if _RAT_RE.match(s):
            return cls._raw(mpq(s), _ZERO, ctx)
        m = _PURE_RE.match(s)
        if m:
            if ctx.d is None:
                raise ContextMismatch(f"{text!r} uses rt but the field is Q")
            b = mpq(m.group("b"))
            return cls._raw(_ZERO, -b if m.group("sign") == "-" else b, ctx)
        m = _QUAD_RE.match(s)
        if not m or m.group("b") is None:
            raise ValueError(f"bad field literal {text!r}")
        if ctx.d is None:
            raise ContextMismatch(f"{text!r} uses rt but the field is Q")
        a = mpq(m.group("a")) if m.group("a") else _ZERO
        b = mpq(m.group("b"))
        sign = m.group("sign")
        if sign is None and m.group("a") is not None:
            # "a" absorbed a leading sign only when there is no a-part
            raise ValueError(f"bad field literal {text!r}")
        if sign == "-":
            b = -b
        return cls._raw(a, b, ctx)


class _Promote(Exception):
    def __init__(self, ctx):
        self.ctx = ctx


def _fmt_rat(x: Rat) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _add(x: FieldElem, y: FieldElem) -> FieldElem:
    return FieldElem._raw(x.a + y.a, x.b + y.b, x.ctx)


def _sub(x: FieldElem, y: FieldElem) -> FieldElem:
    return FieldElem._raw(x.a - y.a, x.b - y.b, x.ctx)


def _mul(x: FieldElem, y: FieldElem) -> FieldElem:
    if x.b == 0:
        if y.b == 0:
            return FieldElem._raw(x.a * y.a, y.b, x.ctx)
        return FieldElem._raw(x.a * y.a, x.a * y.b, x.ctx)
    if y.b == 0:
        return FieldElem._raw(x.a * y.a, x.b * y.a, x.ctx)
    d = x.ctx.d
    return FieldElem._raw(x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a, x.ctx)


def sign(x: FieldElem) -> int:
    return x.sign()


def sqrt_exact(x: FieldElem) -> FieldElem:
    return x.sqrt()


def conjugate(x: FieldElem) -> FieldElem:
    return x.conjugate()
