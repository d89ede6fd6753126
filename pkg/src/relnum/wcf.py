"""Weighted continued fractions on the projective line.

``[n_1, ..., n_k] = (1/lam) / (n_1 + [n_2, ..., n_k])`` with ``[] = 0``. Entries are
nonzero integers or :data:`~relnum.numeric.INF`; an infinite entry cuts the
tail off, ``[L, inf, R] = [L]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .chebyshev import AlgElem, eval_s_at_u
from .numeric import INF, QuadNum, as_quad, proj_eq, proj_inv_add

__all__ = [
    "WcfContext",
    "InfiniteComponent",
    "parse_seq",
    "format_seq",
    "wcf_eval",
    "wcf_eval_reversed",
    "chebyshev_ratio",
    "wcf_ratio_check",
    "singular_point",
    "d_value",
    "root_condition_check",
    "PrefixTracker",
]


class InfiniteComponent(ArithmeticError):
    pass


@dataclass(frozen=True)
class WcfContext:
    lam: QuadNum
    inv_lam: QuadNum = field(init=False)

    def __post_init__(self):
        lam = as_quad(self.lam)
        if not lam:
            raise ZeroDivisionError("lambda must be nonzero")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "inv_lam", lam.inverse())

    def zero(self) -> QuadNum:
        return as_quad(0, self.lam.d)

    def layer(self, v, n):
        return proj_inv_add(v, n, self.inv_lam)


def _ctx(ctx) -> WcfContext:
    return ctx if isinstance(ctx, WcfContext) else WcfContext(as_quad(ctx))


def parse_seq(text: str) -> tuple:
    """``"13,-7,1"`` or ``"1,inf,-2"``; brackets/parentheses allowed around it."""
    body = text.strip().strip("()[]").strip()
    if not body:
        return ()
    out = []
    for tok in body.split(","):
        tok = tok.strip()
        if tok.lower() in ("inf", "oo", "infinity"):
            out.append(INF)
        else:
            out.append(int(tok))
    return tuple(out)


def format_seq(n: Sequence) -> str:
    return ",".join("inf" if x is INF else str(x) for x in n)


def wcf_eval(n: Sequence, ctx):
    """``[n_1, ..., n_k]`` by right-to-left folding."""
    ctx = _ctx(ctx)
    v = ctx.zero()
    for x in reversed(n):
        if x == 0 and x is not INF:
            raise ValueError("zero entry in a continued fraction")
        v = ctx.layer(v, x)
    return v


def wcf_eval_reversed(n: Sequence, ctx):
    """``[n_k, ..., n_1]``, folded left-to-right (the incremental orientation)."""
    return wcf_eval(tuple(reversed(n)), ctx)


def _proj_ratio(num: AlgElem, den: AlgElem):
    """``num/den`` where both land in the base field, or INF if ``den = 0``."""
    if not den:
        return INF
    q = num * den.inverse()
    if not q.in_base():
        raise ArithmeticError("ratio does not lie in the base field")
    return q.a


def chebyshev_ratio(n: Sequence[int], ctx, reversed_: bool = False):
    """``-s^{sigma n}_k(u) / (u s^n_{k+1}(u))`` (or ``-s^n_k(u)/(u s^n_{k+1}(u))``)."""
    ctx = _ctx(ctx)
    n = tuple(n)
    k = len(n)
    top = eval_s_at_u(n, ctx.lam).mul_u()
    if reversed_:
        num = eval_s_at_u(n[: k - 1], ctx.lam) if k else AlgElem(0, 0, ctx.lam)
    else:
        num = eval_s_at_u(n[1:], ctx.lam) if k else AlgElem(0, 0, ctx.lam)
    return _proj_ratio(-num, top)


def wcf_ratio_check(n: Sequence[int], ctx) -> bool:
    ctx = _ctx(ctx)
    n = tuple(n)
    if any(x == 0 for x in n):
        raise ValueError("sequence must be nonzero")
    fwd = proj_eq(wcf_eval(n, ctx), chebyshev_ratio(n, ctx))
    rev = proj_eq(wcf_eval_reversed(n, ctx), chebyshev_ratio(n, ctx, reversed_=True))
    return fwd and rev


def singular_point(nL: Sequence[int], nR: Sequence, ctx) -> QuadNum:
    """``x_inf = -([n_{i-1}, ..., n_1] + [n_{i+1}, ..., n_k])``."""
    ctx = _ctx(ctx)
    left = wcf_eval_reversed(nL, ctx)
    right = wcf_eval(nR, ctx)
    if left is INF or right is INF:
        raise InfiniteComponent("a component fraction is infinite")
    return -(left + right)


def d_value(nL: Sequence[int], ctx):
    """``[n_{i-1}, ..., n_1] - [n_{i-1}, ..., n_2]``; INF when ``nL`` is empty."""
    ctx = _ctx(ctx)
    if not nL:
        return INF
    a = wcf_eval_reversed(nL, ctx)
    b = wcf_eval_reversed(tuple(nL)[1:], ctx)
    if a is INF or b is INF:
        return INF
    return a - b


def root_condition_check(n: Sequence[int], i: int, ctx) -> bool:
    """Whether ``s^n_{k+1}(u) = 0``, decided through split index ``i`` (1-based).

    True iff ``n_i`` is the singular point of the split, or both side fractions
    are infinite.
    """
    ctx = _ctx(ctx)
    n = tuple(n)
    if not 1 <= i <= len(n):
        raise IndexError(i)
    nL, ni, nR = n[: i - 1], n[i - 1], n[i:]
    left = wcf_eval_reversed(nL, ctx)
    right = wcf_eval(nR, ctx)
    if left is INF and right is INF:
        return True
    if left is INF or right is INF:
        return False
    return as_quad(ni) == -(left + right)


class PrefixTracker:
    """Incremental prefix data along a depth-first path ``n_1, n_2, ...``.

    Level ``j`` keeps ``r_j = [n_j, ..., n_1]``, ``r'_j = [n_j, ..., n_2]`` and the
    Moebius matrix ``P_j`` of ``v -> [n_1, ..., n_j + v]``-style composition, so
    that ``[n_1, ..., n_j]`` and extensions are O(1).
    """

    def __init__(self, ctx):
        self.ctx = _ctx(ctx)
        z = self.ctx.zero()
        one = as_quad(1, self.ctx.lam.d)
        self.rev = [z]
        self.rev_tail = [z]
        self.mats = [(one, z, z, one)]
        self.path: list[int] = []

    def push(self, n: int) -> None:
        mu = self.ctx.inv_lam
        self.rev.append(self._layer(self.rev[-1], n, mu))
        if self.path:
            self.rev_tail.append(self._layer(self.rev_tail[-1], n, mu))
        else:
            self.rev_tail.append(self.ctx.zero())
        a, b, c, d = self.mats[-1]
        # compose with v -> mu / (n + v), matrix [[0, mu], [1, n]]
        self.mats.append((b, a * mu + b * n, d, c * mu + d * n))
        self.path.append(n)

    def _layer(self, r, n, mu):
        if r is INF:
            return self.ctx.zero()
        den = r + n
        return INF if not den else mu / den

    def pop(self) -> None:
        self.rev.pop()
        self.rev_tail.pop()
        self.mats.pop()
        self.path.pop()

    def center(self):
        """``-[n_j, ..., n_1]`` for the current depth ``j``."""
        r = self.rev[-1]
        return INF if r is INF else -r

    def d_value(self):
        if not self.path:
            return INF
        r, rt = self.rev[-1], self.rev_tail[-1]
        if r is INF or rt is INF:
            return INF
        return r - rt

    def forward(self):
        """``[n_1, ..., n_j]``."""
        a, b, c, d = self.mats[-1]
        return INF if not d else b / d

    def forward_with(self, x):
        """``[n_1, ..., n_j, x]`` without pushing."""
        a, b, c, d = self.mats[-1]
        mu = self.ctx.inv_lam
        if x is INF:
            return self.forward()
        num = a * mu + b * x
        den = c * mu + d * x
        return INF if not den else num / den



