"""Continuants over an arbitrary commutative ring and their 2x2 matrix forms.

``K`` uses ``K_n = c_n K_{n-1} - K_{n-2}``, ``K+`` uses ``K_n = c_n K_{n-1} + K_{n-2}``;
both start from ``K_0 = 1``, ``K_{-1} = 0``. Entries may be ints, ``IntPoly``
or ``AlgElem``; anything that mixes with ``int`` under ``+ - *`` works.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .chebyshev import T

__all__ = [
    "Mat2",
    "continuant_K",
    "K",
    "Kplus",
    "mobius_product",
    "kn_matrix",
    "tridiagonal_det",
    "qpw_polys",
    "identity_suite",
]


@dataclass(frozen=True)
class Mat2:
    m11: Any
    m12: Any
    m21: Any
    m22: Any

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.m11 * o.m11 + self.m12 * o.m21,
            self.m11 * o.m12 + self.m12 * o.m22,
            self.m21 * o.m11 + self.m22 * o.m21,
            self.m21 * o.m12 + self.m22 * o.m22,
        )

    def det(self):
        return self.m11 * self.m22 - self.m12 * self.m21

    def scale(self, c) -> "Mat2":
        return Mat2(self.m11 * c, self.m12 * c, self.m21 * c, self.m22 * c)

    def inverse_unimodular(self) -> "Mat2":
        """Inverse assuming determinant 1."""
        return Mat2(self.m22, -self.m12, -self.m21, self.m11)

    def entries(self) -> tuple:
        return (self.m11, self.m12, self.m21, self.m22)

    def is_identity(self) -> bool:
        return self.m11 == 1 and self.m12 == 0 and self.m21 == 0 and self.m22 == 1

    @staticmethod
    def identity() -> "Mat2":
        return Mat2(1, 0, 0, 1)


def continuant_K(c: Sequence, kind: str = "K"):
    """Continuant by the linear recursion; ``kind`` is ``"K"`` or ``"Kplus"``."""
    if kind == "K":
        sgn = -1
    elif kind == "Kplus":
        sgn = 1
    else:
        raise ValueError(f"unknown kind {kind!r}")
    prev, cur = 0, 1
    for x in c:
        prev, cur = cur, x * cur + prev * sgn
    return cur


def K(*c):
    """Shorthand: ``K(c1, c2, ...)`` or ``K(seq)``."""
    if len(c) == 1 and isinstance(c[0], (list, tuple)):
        c = c[0]
    return continuant_K(c, "K")


def Kplus(*c):
    if len(c) == 1 and isinstance(c[0], (list, tuple)):
        c = c[0]
    return continuant_K(c, "Kplus")


def mobius_product(c: Sequence, kind: str = "M") -> Mat2:
    """``prod [[c_i, -1], [1, 0]]`` (``M``) or ``prod [[c_i, 1], [1, 0]]`` (``Mplus``)."""
    if kind == "M":
        off = -1
    elif kind == "Mplus":
        off = 1
    else:
        raise ValueError(f"unknown kind {kind!r}")
    out = Mat2.identity()
    for x in c:
        out = out @ Mat2(x, off, 1, 0)
    return out


def kn_matrix(c: Sequence, kind: str = "M") -> Mat2:
    """The four sub-continuants that ``mobius_product`` must reproduce."""
    c = list(c)
    n = len(c)
    if kind == "M":
        f = lambda s: continuant_K(s, "K")  # noqa: E731
        sg = -1
    else:
        f = lambda s: continuant_K(s, "Kplus")  # noqa: E731
        sg = 1
    if n == 0:
        return Mat2.identity()
    inner = f(c[1 : n - 1]) if n >= 2 else 0
    return Mat2(f(c), sg * f(c[: n - 1]), f(c[1:]), sg * inner)


def _det(m: list[list]):
    # fraction-free cofactor expansion; fine for the small sizes used in checks
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def tridiagonal_det(c: Sequence, kind: str = "K"):
    """Determinant definition (test cross-check only)."""
    n = len(c)
    up, low = (1, 1) if kind == "K" else (1, -1)
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = c[i]
        if i + 1 < n:
            m[i][i + 1] = up
            m[i + 1][i] = low
    return _det(m)


def qpw_polys(c: Sequence, x=T):
    """``(q_c(x), p_c(x), w_c(x))``; ``x`` defaults to the polynomial variable."""
    c = list(c)
    kn = continuant_K(c)
    head = continuant_K(c[:-1]) if c else 0
    tail = continuant_K(c[1:]) if c else 0
    xk = x * kn
    return xk - 2 * head, xk - head - tail, xk - head + tail


def identity_suite(trials: int = 200, max_len: int = 5, coeff_bound: int = 5, seed: int = 0):
    """Run the randomized identity checks; see :mod:`relnum.identities`."""
    from .identities import run_suite

    return run_suite(trials=trials, max_len=max_len, coeff_bound=coeff_bound, seed=seed)

