"""Integer-sequence Chebyshev polynomials, symbolically and at u = sqrt(-lambda).

For a sequence ``n = (n_1, ..., n_k)`` the polynomials obey

    g_{j+1}(t) = n_j * t * g_j(t) - g_{j-1}(t)

with ``s_0 = 0``, ``s_1 = 1`` (so ``s_{-1} = -1``). ``s_poly(n)`` is the top
member ``s_{k+1}``, of degree ``k`` when no entry is zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .numeric import QuadNum, as_quad

__all__ = [
    "IntPoly",
    "T",
    "AlgElem",
    "s_index",
    "s_poly",
    "vTtt_polys",
    "eval_s_at_u",
    "eval_s_trace",
    "reduce_zero_entries",
    "flip_signs",
    "reverse",
    "shift",
    "classical_factor_check",
    "ts_identity_check",
    "rotate_quarter",
    "jang_kim_poly",
]


class IntPoly:
    """Dense polynomial in ``t`` with integer coefficients, lowest degree first."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, deg: int, c: int = 1) -> "IntPoly":
        return cls([0] * deg + [c])

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def __len__(self):
        return len(self._c)

    def __getitem__(self, i: int) -> int:
        return self._c[i] if 0 <= i < len(self._c) else 0

    def __bool__(self):
        return bool(self._c)

    @staticmethod
    def _lift(x) -> "IntPoly | None":
        if isinstance(x, IntPoly):
            return x
        if isinstance(x, int):
            return IntPoly((x,))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self._c, o._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-v for v in self._c)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(other * v for v in self._c)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self._c, o._c
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = IntPoly((1,))
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self):
        return hash(self._c)

    def shift_t(self) -> "IntPoly":
        """Multiply by ``t``."""
        return IntPoly((0,) + self._c) if self._c else self

    def div_t(self) -> "IntPoly":
        """Exact division by ``t``."""
        if self._c and self._c[0] != 0:
            raise ArithmeticError("polynomial not divisible by t")
        return IntPoly(self._c[1:])

    def neg_t(self) -> "IntPoly":
        """``p(-t)``."""
        return IntPoly(v if i % 2 == 0 else -v for i, v in enumerate(self._c))

    def scale_t(self, c: int) -> "IntPoly":
        """``p(c*t)``."""
        return IntPoly(v * c**i for i, v in enumerate(self._c))

    def compose(self, q: "IntPoly") -> "IntPoly":
        out = IntPoly()
        for v in reversed(self._c):
            out = out * q + v
        return out

    def derivative(self) -> "IntPoly":
        return IntPoly(i * v for i, v in enumerate(self._c) if i)

    def is_even(self) -> bool:
        return all(v == 0 for v in self._c[1::2])

    def is_odd(self) -> bool:
        return all(v == 0 for v in self._c[0::2])

    def __call__(self, x):
        """Horner evaluation at any ring element that mixes with ints."""
        acc = 0
        for v in reversed(self._c):
            acc = acc * x + v
        return acc

    def __repr__(self):
        return f"IntPoly({list(self._c)})"

    def __str__(self):
        return "[" + ", ".join(str(v) for v in self._c) + "]" if self._c else "[0]"

    def pretty(self, var: str = "t") -> str:
        terms = []
        for i in range(len(self._c) - 1, -1, -1):
            v = self._c[i]
            if v == 0:
                continue
            mag = abs(v)
            mon = "" if i == 0 else var if i == 1 else f"{var}^{i}"
            body = str(mag) if (mag != 1 or i == 0) else ""
            body = body + mon
            terms.append(("-" if v < 0 else "+", body))
        if not terms:
            return "0"
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {s} {b}" for s, b in terms[1:])

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"expected [c0, c1, ...], got {text!r}")
        inner = body[1:-1].strip()
        return cls(int(x) for x in inner.split(",")) if inner else cls()


T = IntPoly((0, 1))


class AlgElem:
    """``a + b*u`` in ``Base[u]/(u^2 + lam)``."""

    __slots__ = ("a", "b", "lam")

    def __init__(self, a, b, lam):
        self.lam = as_quad(lam)
        self.a = as_quad(a, self.lam.d)
        self.b = as_quad(b, self.lam.d)

    @classmethod
    def u(cls, lam) -> "AlgElem":
        return cls(0, 1, lam)

    def _lift(self, other) -> "AlgElem | None":
        if isinstance(other, AlgElem):
            return other
        if isinstance(other, (int, Fraction, QuadNum)):
            return AlgElem(other, 0, self.lam)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AlgElem(self.a + o.a, self.b + o.b, self.lam)

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(-self.a, -self.b, self.lam)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AlgElem(self.a - o.a, self.b - o.b, self.lam)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadNum)):
            return AlgElem(self.a * other, self.b * other, self.lam)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.a, self.b, o.a, o.b
        return AlgElem(a * c - self.lam * b * d, a * d + b * c, self.lam)

    __rmul__ = __mul__

    def mul_u(self) -> "AlgElem":
        # (a + b u) u = -lam b + a u
        return AlgElem(-self.lam * self.b, self.a, self.lam)

    def div_u(self) -> "AlgElem":
        # 1/u = -u/lam
        return AlgElem(self.b, -self.a / self.lam, self.lam)

    def conj(self) -> "AlgElem":
        """Image under ``u -> -u``."""
        return AlgElem(self.a, -self.b, self.lam)

    def norm(self) -> QuadNum:
        return self.a * self.a + self.lam * self.b * self.b

    def inverse(self) -> "AlgElem":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("zero divisor in Base[u]/(u^2+lam)")
        return AlgElem(self.a / n, -self.b / n, self.lam)

    def in_base(self) -> bool:
        return not self.b

    def at(self, root: QuadNum) -> QuadNum:
        """Specialize ``u`` to an explicit base-field root of ``u^2 = -lam``."""
        return self.a + self.b * root

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"AlgElem({self.a}, {self.b})"


def shift(n: Sequence[int]) -> tuple[int, ...]:
    return tuple(n[1:])


def reverse(n: Sequence[int]) -> tuple[int, ...]:
    return tuple(reversed(n))


def s_index(n: Sequence[int], j: int) -> IntPoly:
    """``s^n_j(t)`` for ``-1 <= j <= len(n) + 1``; uses ``n_1 .. n_{j-1}``."""
    if j < -1 or j > len(n) + 1:
        raise IndexError(f"s_{j} needs {j - 1} entries, sequence has {len(n)}")
    if j == -1:
        return IntPoly((-1,))
    prev, cur = IntPoly(), IntPoly((1,))
    if j == 0:
        return prev
    for i in range(j - 1):
        prev, cur = cur, (cur * n[i]).shift_t() - prev
    return cur


def s_poly(n: Sequence[int]) -> IntPoly:
    """``s^n_{k+1}(t)`` with ``k = len(n)``."""
    return s_index(n, len(n) + 1)


def vTtt_polys(n: Sequence[int]) -> tuple[IntPoly, IntPoly, IntPoly, IntPoly]:
    """``(v, T, T~, T^)`` for a sequence of length ``k >= 1``."""
    k = len(n)
    if k < 1:
        raise ValueError("need a sequence of length >= 1")
    sn = tuple(n)
    sig = sn[1:]
    top = s_index(sn, k + 1)
    v = top - s_index(sig, k)
    tee = top - s_index(sn, k - 1)
    tee_tilde = top - s_index(sig, k - 1)
    tee_hat = top + s_index(sig, k - 1)
    return v, tee, tee_tilde, tee_hat


def eval_s_trace(n: Sequence[int], lam) -> list[AlgElem]:
    """Values ``s_0(u), s_1(u), ..., s_{k+1}(u)``. Consecutive values never both vanish."""
    lam = as_quad(lam)
    if not lam:
        raise ZeroDivisionError("lambda must be nonzero")
    prev = AlgElem(0, 0, lam)
    cur = AlgElem(1, 0, lam)
    out = [prev, cur]
    for nj in n:
        nxt = cur.mul_u() * nj - prev
        if not nxt and not cur:
            raise AssertionError("consecutive Chebyshev values both vanish")
        prev, cur = cur, nxt
        out.append(cur)
    return out


def eval_s_at_u(n: Sequence[int], lam) -> AlgElem:
    """``s^n_{k+1}(u)`` exactly, with u^2 = -lam."""
    return eval_s_trace(n, lam)[-1]


def reduce_zero_entries(n: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Remove zero entries while tracking the sign of the s-polynomial.

    Returns ``(m, sign)`` with ``s_poly(n) == sign * s_poly(m)``; ``sign = 0``
    means ``s_poly(n)`` is the zero polynomial.
    """
    m = list(n)
    sign = 1
    while 0 in m:
        k = len(m)
        j = m.index(0)
        if k == 1:
            return (), 0
        if j == 0:
            m = m[2:]
        elif j == k - 1:
            m = m[:-2]
        else:
            m = m[: j - 1] + [m[j - 1] + m[j + 1]] + m[j + 2 :]
        sign = -sign
    return tuple(m), sign


def flip_signs(n: Sequence[int], mode: str = "alternate") -> tuple[int, ...]:
    """``mode='all'``: negate every entry. ``mode='alternate'``: ``m_i = (-1)^i n_i``."""
    if mode == "all":
        return tuple(-x for x in n)
    if mode == "alternate":
        return tuple(-x if i % 2 == 0 else x for i, x in enumerate(n))
    raise ValueError(f"unknown mode {mode!r}")


def rotate_quarter(p: IntPoly) -> IntPoly:
    """The integer polynomial ``p(i t)`` (even ``p``) or ``-i p(i t)`` (odd ``p``)."""
    if p.is_even():
        return IntPoly(v * (-1) ** (i // 2) if i % 2 == 0 else 0 for i, v in enumerate(p.coeffs))
    if p.is_odd():
        return IntPoly(v * (-1) ** ((i - 1) // 2) if i % 2 else 0 for i, v in enumerate(p.coeffs))
    raise ValueError("polynomial has mixed parity")


def _even_part_in_x(p: IntPoly, sign: int = 1) -> IntPoly:
    """For even ``p(t) = P(t^2)`` return ``P(sign * x)``."""
    return IntPoly(v * sign ** (i // 2) for i, v in enumerate(p.coeffs) if i % 2 == 0)


def jang_kim_poly(k: int) -> IntPoly:
    """``p_k(alpha)`` whose roots are ``4cos^2((2j-1)pi/(4k+2))``, from the all-ones T-polynomial."""
    ones = (1,) * (2 * k + 1)
    tee = vTtt_polys(ones)[1]
    return _even_part_in_x(tee.div_t())


def _cos_product_coeffs(k: int, angles: list[float]) -> list[float]:
    import mpmath

    mpmath.mp.dps = 50
    poly = [mpmath.mpf(1)]
    for ang in angles:
        r = 4 * mpmath.cos(ang) ** 2
        nxt = [mpmath.mpf(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= r * c
        poly = nxt
    return poly


def _matches(p: IntPoly, approx: list) -> bool:
    coeffs = list(p.coeffs) + [0] * (len(approx) - len(p.coeffs))
    return len(coeffs) == len(approx) and all(abs(c - a) < 1e-30 for c, a in zip(coeffs, approx))


def classical_factor_check(k: int) -> dict[str, bool]:
    """Closed-form factorizations of the alternating-sequence polynomials.

    Each integer polynomial in ``x = -t^2`` is compared with its image from the
    all-ones sequence under ``t -> i t``, and with a high-precision expansion of
    the cosine product.
    """
    if k < 1:
        raise ValueError("k >= 1")
    import mpmath

    mpi = mpmath.pi
    alt = lambda m: tuple((-1) ** i for i in range(m))  # noqa: E731
    ones = lambda m: (1,) * m  # noqa: E731
    out: dict[str, bool] = {}

    s_even = s_poly(alt(2 * k - 1))
    s_odd = s_poly(alt(2 * k))
    out["s_even_rotation"] = s_even == rotate_quarter(s_poly(ones(2 * k - 1)))
    out["s_odd_rotation"] = s_odd == rotate_quarter(s_poly(ones(2 * k)))
    out["s_even_cos_product"] = _matches(
        _even_part_in_x(s_even.div_t(), -1),
        _cos_product_coeffs(k - 1, [i * mpi / (2 * k) for i in range(1, k)]),
    )
    out["s_odd_cos_product"] = _matches(
        _even_part_in_x(s_odd, -1),
        _cos_product_coeffs(k, [i * mpi / (2 * k + 1) for i in range(1, k + 1)]),
    )
    t_even = vTtt_polys(alt(2 * k))[1]
    t_odd = vTtt_polys(alt(2 * k + 1))[1]
    out["T_even_rotation"] = t_even == rotate_quarter(vTtt_polys(ones(2 * k))[1])
    out["T_odd_rotation"] = t_odd == rotate_quarter(vTtt_polys(ones(2 * k + 1))[1])
    out["T_even_cos_product"] = _matches(
        _even_part_in_x(t_even, -1),
        _cos_product_coeffs(k, [(2 * i - 1) * mpi / (4 * k) for i in range(1, k + 1)]),
    )
    out["T_odd_cos_product"] = _matches(
        _even_part_in_x(t_odd.div_t(), -1),
        _cos_product_coeffs(k, [(2 * i - 1) * mpi / (4 * k + 2) for i in range(1, k + 1)]),
    )
    pk = jang_kim_poly(k)
    out["jang_kim"] = pk.compose(IntPoly((0, 0, -1))) == t_odd.div_t()
    out["jang_kim_roots"] = _matches(
        pk, _cos_product_coeffs(k, [(2 * j - 1) * mpi / (4 * k + 2) for j in range(1, k + 1)])
    )
    return out


def ts_identity_check(n: Sequence[int]) -> bool:
    """``2 s^n_{k+1} == T^{(n_1..n_{k-1}, 2 n_k)}_k``."""
    if len(n) < 1:
        raise ValueError("need length >= 1")
    doubled = tuple(n[:-1]) + (2 * n[-1],)
    return s_poly(n) * 2 == vTtt_polys(doubled)[1]
