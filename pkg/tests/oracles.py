"""Reference computations that share no code with relnum.

Polynomials and matrices go through sympy; s-values and continued fractions for
rational lambda use plain Fraction pairs ``a + b*u`` with ``u^2 = -lam``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy as sp

t = sp.Symbol("t")


def s_sym(n, j=None):
    """``s^n_j`` by the raw recursion (default ``j = len(n) + 1``)."""
    j = len(n) + 1 if j is None else j
    g = [sp.Integer(0), sp.Integer(1)]
    for i in range(1, j):
        g.append(sp.expand(n[i - 1] * t * g[-1] - g[-2]))
    return g[j]


def coeffs(expr) -> list[int]:
    """Low-first integer coefficients of a polynomial in ``t``."""
    expr = sp.expand(expr)
    if expr == 0:
        return []
    p = sp.Poly(expr, t)
    return [int(c) for c in reversed(p.all_coeffs())]


def tridiag_det(c, plus=False):
    """``K`` (off-diagonals +1, +1) or ``K+`` (off-diagonals +1, -1) as a determinant."""
    n = len(c)
    if n == 0:
        return sp.Integer(1)
    m = sp.zeros(n, n)
    for i in range(n):
        m[i, i] = c[i]
        if i + 1 < n:
            m[i, i + 1] = 1
            m[i + 1, i] = -1 if plus else 1
    return sp.expand(m.det(method="berkowitz"))


def lam_sym(a, b=0, d=1):
    return sp.Rational(a) + sp.Rational(b) * sp.sqrt(d)


def vanishes_at_u(expr, lam) -> bool:
    """``p(sqrt(-lam)) = 0`` for ``p`` of definite parity, via ``p = t^e P(t^2)``."""
    p = sp.Poly(sp.expand(expr), t)
    if p.is_zero:
        return True
    terms = p.terms()
    parity = {m[0] % 2 for m, _ in terms}
    assert len(parity) == 1, "needs a polynomial of definite parity"
    e = parity.pop()
    val = sum(c * (-lam) ** ((m[0] - e) // 2) for m, c in terms)
    return sp.simplify(sp.radsimp(sp.expand(val))) == 0


# ---------------------------------------------------------------------------
# Fraction-only arithmetic for rational lambda
# ---------------------------------------------------------------------------


def s_value_rational(n, lam: Fraction):
    """``s^n_{k+1}(u)`` as ``(a, b)`` meaning ``a + b*u`` where ``u^2 = -lam``."""
    neg = -Fraction(lam)
    prev, cur = (Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))
    for x in n:
        # x * u * (a + b u) = x*b*u^2 + x*a*u
        a, b = cur
        nxt = (x * b * neg - prev[0], x * a - prev[1])
        prev, cur = cur, nxt
    return cur


def wcf_rational(n, lam: Fraction):
    """``[n_1, ..., n_k]`` with ``None`` standing for infinity."""
    inv = 1 / Fraction(lam)
    v = Fraction(0)
    for x in reversed(n):
        if v is None:
            v = Fraction(0)
            continue
        den = x + v
        v = None if den == 0 else inv / den
    return v


def min_zero_length(lam: Fraction, bounds) -> int | None:
    """Smallest ``k`` with a zero of ``s`` among sequences in ``bounds[k]``."""
    for k in sorted(bounds):
        for n in boxes(bounds[k]):
            if s_value_rational(n, lam) == (0, 0):
                return k
    return None


def boxes(radii):
    rngs = [[x for x in range(-r, r + 1) if x] for r in radii]
    return itertools.product(*rngs)


def any_zero(lam: Fraction, radii) -> tuple | None:
    for n in boxes(radii):
        if s_value_rational(n, lam) == (0, 0):
            return n
    return None


def max_abs_wcf(lam: Fraction, k: int, r: int):
    """Brute-force maximum of ``|[n]|`` over ``n in ({-r..r} minus 0)^k``."""
    best, arg = Fraction(0), None
    for n in boxes([r] * k):
        v = wcf_rational(n, lam)
        if v is None:
            return None, n
        if abs(v) > best:
            best, arg = abs(v), n
    return best, arg


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


def word_sym(n, lam, x_first=True):
    m = sp.eye(2)
    for i, e in enumerate(n):
        if (i % 2 == 0) == x_first:
            m = m * sp.Matrix([[1, e], [0, 1]])
        else:
            m = m * sp.Matrix([[1, 0], [e * lam, 1]])
    return m.applyfunc(lambda z: sp.radsimp(sp.expand(z)))


def syllables_sym(word, lam):
    m = sp.eye(2)
    for g, e in word:
        if g == "x":
            m = m * sp.Matrix([[1, e], [0, 1]])
        else:
            m = m * sp.Matrix([[1, 0], [e * lam, 1]])
        # expanding as we go keeps sqrt(d) products reduced
        m = m.applyfunc(sp.expand)
    return m


def expr(p) -> sp.Expr:
    """A relnum ``IntPoly`` as a sympy expression in ``t``."""
    return sum((c * t**i for i, c in enumerate(p.coeffs)), sp.Integer(0))
