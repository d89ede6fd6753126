"""Exact scalars: rationals, quadratic fields Q(sqrt D), and the projective line.

Rationals are plain ``fractions.Fraction``. A :class:`QuadNum` is ``a + b*sqrt(D)``
with rational ``a, b`` and a squarefree integer ``D``; ``D = 1`` stands for the
rational case. Projective values are either a ``QuadNum`` or the singleton
:data:`INF`.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

__all__ = [
    "Fraction",
    "QuadNum",
    "Infinity",
    "INF",
    "ProjValue",
    "FieldMismatch",
    "NotRealField",
    "NotWellDefined",
    "NegativeRadicand",
    "ParseError",
    "squarefree_split",
    "as_quad",
    "parse_lambda",
    "proj_inv_add",
    "proj_recip",
    "proj_eq",
    "cmp_real",
    "floor_ceil_real",
    "nonzero_neighbors",
    "round_away",
    "rational_sqrt_enclosure",
    "sqrt_in_field",
]


class FieldMismatch(ValueError):
    pass


class NotRealField(ValueError):
    pass


class NotWellDefined(ArithmeticError):
    pass


class NegativeRadicand(ValueError):
    pass


class ParseError(ValueError):
    pass


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(c, d)`` with ``n = c*c*d`` and ``d`` squarefree (sign kept on ``d``)."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    c = 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            c *= p
        p += 1 if p == 2 else 2
    return c, sign * n


def _frac(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


class QuadNum:
    """Element ``a + b*sqrt(d)`` of a quadratic field (``d = 1``: rational)."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, a=0, b=0, d: int = 1):
        a = _frac(a)
        b = _frac(b)
        if d == 0:
            raise ValueError("discriminant must be nonzero")
        if d != 1:
            c, sf = squarefree_split(d)
            if sf == 1:
                a, b, d = a + b * c, Fraction(0), 1
            else:
                b, d = b * c, sf
        else:
            a, b = a + b, Fraction(0)
        self._a = a
        self._b = b
        self._d = d

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> "QuadNum":
        obj = object.__new__(cls)
        obj._a = a
        obj._b = b
        obj._d = d
        return obj

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def d(self) -> int:
        return self._d

    def is_rational(self) -> bool:
        return self._b == 0

    def is_real(self) -> bool:
        return self._b == 0 or self._d > 0

    def is_integer(self) -> bool:
        return self._b == 0 and self._a.denominator == 1

    def with_field(self, d: int) -> "QuadNum":
        """The same value tagged with discriminant ``d`` (rationals only move freely)."""
        if d == self._d:
            return self
        if self._b != 0 and self._d != 1:
            raise FieldMismatch(f"cannot move sqrt({self._d}) value into Q(sqrt({d}))")
        return QuadNum._raw(self._a, self._b, d)

    def _coerce(self, other) -> "QuadNum | None":
        if isinstance(other, QuadNum):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNum._raw(_frac(other), Fraction(0), self._d)
        return None

    def _field(self, other: "QuadNum") -> int:
        d1, d2 = self._d, other._d
        if d1 == d2:
            return d1
        if d1 == 1:
            return d2
        if d2 == 1:
            return d1
        raise FieldMismatch(f"sqrt({d1}) and sqrt({d2}) in one computation")

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum._raw(self._a + o._a, self._b + o._b, self._field(o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum._raw(self._a - o._a, self._b - o._b, self._field(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return QuadNum._raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __abs__(self):
        if not self.is_real():
            raise TypeError("abs() of a non-real number; use abs_sq()")
        return -self if _real_sign(self) < 0 else self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._field(o)
        a1, b1, a2, b2 = self._a, self._b, o._a, o._b
        if b1 == 0:
            return QuadNum._raw(a1 * a2, a1 * b2, d)
        if b2 == 0:
            return QuadNum._raw(a1 * a2, b1 * a2, d)
        return QuadNum._raw(a1 * a2 + d * b1 * b2, a1 * b2 + a2 * b1, d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``a^2 - d*b^2`` (equals ``|z|^2`` when ``d < 0``)."""
        return self._a * self._a - self._d * self._b * self._b

    def conjugate(self) -> "QuadNum":
        return QuadNum._raw(self._a, -self._b, self._d)

    def inverse(self) -> "QuadNum":
        if self._b == 0:
            if self._a == 0:
                raise ZeroDivisionError("division by zero")
            return QuadNum._raw(1 / self._a, Fraction(0), self._d)
        n = self.norm()
        return QuadNum._raw(self._a / n, -self._b / n, self._d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o._b == 0:
            if o._a == 0:
                raise ZeroDivisionError("division by zero")
            return QuadNum._raw(self._a / o._a, self._b / o._a, self._field(o))
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = QuadNum._raw(Fraction(1), Fraction(0), self._d)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def abs_sq(self) -> Fraction:
        """``|z|^2`` as an exact rational. Needs an imaginary field or a rational value."""
        if self._b == 0:
            return self._a * self._a
        if self._d < 0:
            return self.norm()
        raise NotRealField("abs_sq of an irrational real value is not rational")

    def real_part(self) -> "QuadNum":
        if self._d < 0:
            return QuadNum._raw(self._a, Fraction(0), self._d)
        return self

    def imag_sq(self) -> Fraction:
        """``Im(z)^2``, exact."""
        if self._d < 0:
            return -self._d * self._b * self._b
        return Fraction(0)

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._a != o._a or self._b != o._b:
            return False
        return self._b == 0 or self._d == o._d

    def __hash__(self):
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b, self._d))

    def __lt__(self, other):
        return cmp_real(self, other) < 0

    def __le__(self, other):
        return cmp_real(self, other) <= 0

    def __gt__(self, other):
        return cmp_real(self, other) > 0

    def __ge__(self, other):
        return cmp_real(self, other) >= 0

    def __float__(self):
        if self._d < 0 and self._b != 0:
            raise NotRealField("complex value")
        return float(self._a) + float(self._b) * math.sqrt(self._d)

    def __complex__(self):
        if self._d < 0:
            return complex(float(self._a), float(self._b) * math.sqrt(-self._d))
        return complex(float(self))

    def __repr__(self):
        return f"QuadNum({self})"

    def __str__(self):
        if self._b == 0:
            return str(self._a)
        rad = f"sqrt({self._d})"
        b = self._b
        bpart = rad if b == 1 else f"-{rad}" if b == -1 else f"{b}*{rad}"
        if self._a == 0:
            return bpart
        if bpart.startswith("-"):
            return f"{self._a}{bpart}"
        return f"{self._a}+{bpart}"


def as_quad(x, d: int = 1) -> QuadNum:
    if isinstance(x, QuadNum):
        return x
    return QuadNum._raw(_frac(x), Fraction(0), d)


class Infinity:
    """The single point at infinity of the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()
ProjValue = Union[QuadNum, Infinity]


def proj_eq(x, y) -> bool:
    if x is INF or y is INF:
        return x is y
    return x == y


def proj_recip(v):
    if v is INF:
        return as_quad(0)
    if not v:
        return INF
    return as_quad(v).inverse()


def proj_inv_add(v, n, inv_lam):
    """One continued-fraction layer ``v -> inv_lam / (n + v)`` on the projective line.

    ``n`` is an integer or :data:`INF`; ``inv_lam`` is ``1/lambda``.
    """
    if n is INF:
        if v is INF:
            raise NotWellDefined("inf + inf in a continued-fraction layer")
        return as_quad(0, getattr(inv_lam, "d", 1))
    if v is INF:
        return as_quad(0, getattr(inv_lam, "d", 1))
    den = v + n
    if not den:
        return INF
    return inv_lam / den


def _real_sign(x: QuadNum) -> int:
    a, b, d = x.a, x.b, x.d
    if b == 0:
        return (a > 0) - (a < 0)
    if d < 0:
        raise NotRealField(f"{x} is not real")
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sa == sb or sa == 0:
        return sb
    # opposite signs: compare a^2 with d*b^2
    lhs, rhs = a * a, d * b * b
    return sa if lhs > rhs else -sa


def cmp_real(x, y) -> int:
    """Exact comparison in the real embedding: -1, 0 or 1."""
    return _real_sign(as_quad(x) - as_quad(y))


def _floor_real(x: QuadNum) -> int:
    if x.b == 0:
        return math.floor(x.a)
    if x.d < 0:
        raise NotRealField(f"{x} is not real")
    # float guess, then exact correction
    try:
        g = math.floor(float(x))
    except OverflowError:
        g = math.floor(x.a + x.b * Fraction(math.isqrt(x.d)))
    while cmp_real(x, g) < 0:
        g -= 1
    while cmp_real(x, g + 1) >= 0:
        g += 1
    return g


def floor_ceil_real(x) -> tuple[int, int]:
    x = as_quad(x)
    f = _floor_real(x)
    if x.is_integer():
        return f, f
    return f, f + 1


def nonzero_neighbors(x) -> tuple[int, int]:
    lo, hi = floor_ceil_real(x)
    if lo == 0 or hi == 0:
        return -1, 1
    return lo, hi


def round_away(x) -> int:
    """Nearest integer, halves rounded away from zero."""
    x = as_quad(x)
    s = _real_sign(x)
    if s < 0:
        return -round_away(-x)
    return _floor_real(x + Fraction(1, 2))


def rational_sqrt_enclosure(r, eps) -> tuple[Fraction, Fraction]:
    """Rationals ``lo <= sqrt(r) <= hi`` with ``hi - lo <= eps``."""
    r = _frac(r)
    eps = _frac(eps)
    if r < 0:
        raise NegativeRadicand(str(r))
    if eps <= 0:
        raise ValueError("eps must be positive")
    if r == 0:
        return Fraction(0), Fraction(0)
    p, q = r.numerator, r.denominator
    sp, sq = math.isqrt(p), math.isqrt(q)
    if sp * sp == p and sq * sq == q:
        v = Fraction(sp, sq)
        return v, v
    # sqrt(p/q) = sqrt(p*q*scale^2) / (q*scale); the gap is 1/(q*scale)
    scale = max(1, math.ceil(1 / (eps * q)))
    n = p * q * scale * scale
    s = math.isqrt(n)
    lo = Fraction(s, q * scale)
    hi = lo if s * s == n else Fraction(s + 1, q * scale)
    return lo, hi


def _rational_sqrt(r: Fraction) -> Fraction | None:
    if r < 0:
        return None
    p, q = r.numerator, r.denominator
    sp, sq = math.isqrt(p), math.isqrt(q)
    if sp * sp == p and sq * sq == q:
        return Fraction(sp, sq)
    return None


def sqrt_in_field(x: QuadNum) -> QuadNum | None:
    """A square root of ``x`` inside its own field, or ``None``."""
    a, b, d = x.a, x.b, x.d
    if b == 0:
        c = _rational_sqrt(a)
        if c is not None:
            return QuadNum._raw(c, Fraction(0), d)
        if d != 1:
            e = _rational_sqrt(a / d)
            if e is not None:
                return QuadNum._raw(Fraction(0), e, d)
        return None
    # (c + e*sqrt d)^2 = a + b sqrt d  =>  c^2 + d e^2 = a, 2ce = b
    disc = _rational_sqrt(a * a - d * b * b)
    if disc is None:
        return None
    for e2 in ((a + disc) / (2 * d), (a - disc) / (2 * d)):
        e = _rational_sqrt(e2)
        if e:
            cand = QuadNum._raw(b / (2 * e), e, d)
            if cand * cand == x:
                return cand
    return None


_RAT = r"[+-]?\d+(?:/\d+)?"
_LAMBDA_RE = re.compile(
    rf"^(?P<a>{_RAT})?"
    rf"(?:(?P<bs>[+-])?(?:(?P<b>\d+(?:/\d+)?)\*)?sqrt\((?P<d>[+-]?\d+)\))?$"
)


_PURE_SQRT_RE = re.compile(r"^(?P<bs>[+-])?(?:(?P<b>\d+(?:/\d+)?)\*)?sqrt\((?P<d>[+-]?\d+)\)$")


_GROUPED_RE = re.compile(r"^(?P<sign>[+-])?\((?P<inner>[^()]*(?:\([^()]*\))?[^()]*)\)(?:/(?P<q>\d+))?$")


def parse_lambda(text: str) -> QuadNum:
    """Parse ``p/q``, ``p``, ``a/b+c/d*sqrt(D)`` or ``(a+b*sqrt(D))/q`` (whitespace ignored)."""
    s = re.sub(r"\s+", "", text)
    grouped = _GROUPED_RE.match(s)
    if grouped is not None:
        q = int(grouped.group("q") or 1)
        if q == 0:
            raise ParseError(f"zero denominator in {text!r}")
        x = parse_lambda(grouped.group("inner")) * Fraction(1, q)
        return -x if grouped.group("sign") == "-" else x
    pure = _PURE_SQRT_RE.match(s)
    if pure is not None:
        try:
            b = Fraction(pure.group("b")) if pure.group("b") else Fraction(1)
        except ZeroDivisionError as exc:
            raise ParseError(f"zero denominator in {text!r}") from exc
        d = int(pure.group("d"))
        b = -b if pure.group("bs") == "-" else b
        return QuadNum(0, b, d) if d else QuadNum(0)
    m = _LAMBDA_RE.match(s)
    if not s or m is None or (m.group("a") is None and m.group("d") is None):
        raise ParseError(f"cannot parse number: {text!r}")
    try:
        a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
        if m.group("d") is None:
            return QuadNum(a)
        if m.group("a") is not None and m.group("bs") is None:
            raise ParseError(f"missing sign before sqrt term: {text!r}")
        b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
        if m.group("bs") == "-":
            b = -b
        d = int(m.group("d"))
    except ZeroDivisionError as exc:
        raise ParseError(f"zero denominator in {text!r}") from exc
    if d == 0:
        return QuadNum(a)
    return QuadNum(a, b, d)
