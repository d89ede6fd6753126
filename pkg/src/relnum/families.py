"""Closed-form families of rational relation numbers with their witness sequences.

Each generator returns the sequence from the factorisation of ``s_4``, ``s_6`` or
``s_8`` that produces the family. That factorisation yields the root ``-lam``, so
the sequence is sign-corrected by the alternating flip before verification.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .chebyshev import flip_signs
from .decide import verify_witness

__all__ = [
    "ConditionViolated",
    "FamilyWitness",
    "KINDS",
    "scale_witness",
    "family_generate",
    "family_sweep",
]


class ConditionViolated(ValueError):
    pass


@dataclass(frozen=True)
class FamilyWitness:
    lam: Fraction
    sequence: tuple
    kind: str
    params: dict = field(default_factory=dict)


def scale_witness(n, r: int) -> tuple:
    """Witness for ``lam / r`` from one for ``lam``: multiply the ``y``-exponents by ``r``.

    Only valid for odd-length ``n``, where the last entry is an ``x``-exponent.
    """
    if len(n) % 2 == 0:
        raise ValueError("scaling needs an odd-length witness")
    return tuple(x * r if i % 2 else x for i, x in enumerate(n))


def _require(cond: bool, what: str):
    if not cond:
        raise ConditionViolated(what)


def _nonzero(**kw):
    for k, v in kw.items():
        if v == 0:
            raise ConditionViolated(f"{k} must be nonzero")


def _one_step(a, b, c):
    _nonzero(a=a, b=b, c=c)
    _require(a + b != 0, "a + b != 0")
    return Fraction(a + b, a * b * c), (a, c, b)


def _two_step_i(r, s, t, v=None):
    if v is None:
        _nonzero(r=r, s=s, t=t)
        _require(r + s + t != 0, "r + s + t != 0")
        return Fraction(r + s + t, r * s * t), (r, s, t, r, s)
    _nonzero(r=r, s=s, t=t, v=v)
    _require(r + v != 0, "r + v != 0")
    num = r * r * s + t * v * v
    _require(num != 0, "r^2 s + t v^2 != 0")
    return Fraction(num, r * r * s * t * v + r * s * t * v * v), (r, s, -r - v, t, v)


def _two_step_ii(r, s, t, w):
    _nonzero(r=r, s=s, t=t, w=w)
    _require((r * s) % w == 0, "w | r s")
    _require(r + w + t != 0, "r + w + t != 0")
    return Fraction(r + w + t, r * s * t), (r, s, t, r * s // w, w)


def _two_step_iii(r, s, t, v, w):
    _nonzero(r=r, s=s, t=t, v=v, w=w)
    _require((r * s * t) % (v * w) == 0, "v w | r s t")
    _require(r * v + t * v + t * w == 0, "r v + t v + t w = 0")
    _require(t + v != 0, "t + v != 0")
    _require(r + t + v + w != 0, "r + t + v + w != 0")
    return Fraction(r + t + v + w, r * s * t), (r, s, t + v, r * s * t // (v * w), w)


def _two_step_cor(r, s, t):
    # base 1 + 1/s + 1/(t s) via the w = r s, t = 1 case, then divide by r
    _nonzero(r=r, s=s, t=t)
    _require(s * t + t + 1 != 0, "s t + t + 1 != 0")
    base = (t, s, 1, 1, t * s)
    lam = Fraction(1, r) + Fraction(1, r * s) + Fraction(1, r * s * t)
    return lam, scale_witness(base, r)


def _three_step(r, s, t, v, w):
    _nonzero(r=r, s=s, t=t, v=v, w=w)
    _require(r * s * t == v * w, "r s t = v w")
    _require(r * r * s + w * w + r * s * t == (r + t) * (v + w), "r^2 s + w^2 + r s t = (r + t)(v + w)")
    _require(r + t + v + w != 0, "r + t + v + w != 0")
    return Fraction(r + t + v + w, r * s * t), (r, s, t, 1, v, 1, w)


_GEN = {
    "one_step": (_one_step, ("a", "b", "c")),
    "two_step_i": (_two_step_i, ("r", "s", "t")),
    "two_step_i_b": (_two_step_i, ("r", "s", "t", "v")),
    "two_step_ii": (_two_step_ii, ("r", "s", "t", "w")),
    "two_step_iii": (_two_step_iii, ("r", "s", "t", "v", "w")),
    "two_step_cor": (_two_step_cor, ("r", "s", "t")),
    "three_step": (_three_step, ("r", "s", "t", "v", "w")),
}

KINDS = tuple(_GEN)


def family_generate(kind: str, **params) -> FamilyWitness:
    """Build and verify one family member; ``two_step_i`` also accepts ``v`` for its second form.

    ``kind="two_step_i"`` with ``r, s, t`` gives ``(r+s+t)/(rst)``; adding ``v``
    gives ``(r^2 s + t v^2)/(r^2 s t v + r s t v^2)``.
    """
    if kind not in _GEN:
        raise ValueError(f"unknown family {kind!r}")
    fn, names = _GEN[kind]
    if kind == "two_step_i" and "v" in params:
        names = _GEN["two_step_i_b"][1]
    missing = [k for k in names if k not in params]
    extra = [k for k in params if k not in names]
    if missing or extra:
        raise TypeError(f"{kind} takes {names}, got {tuple(params)}")
    args = [int(params[k]) for k in names]
    lam, seq = fn(*args)
    seq = flip_signs(seq, "alternate")
    if not -4 < lam < 4:
        raise AssertionError(f"family value {lam} outside (-4, 4)")
    chk = verify_witness(lam, seq, word=False)
    if not chk.ok:
        raise AssertionError(f"{kind}{tuple(args)}: sequence {seq} does not verify for {lam}")
    return FamilyWitness(lam, seq, kind, dict(zip(names, args)))


def _box(bound: int, width: int) -> Iterator[tuple]:
    vals = [x for x in range(-bound, bound + 1) if x]
    return itertools.product(vals, repeat=width)


def family_sweep(kind: str, bound: int) -> Iterator[FamilyWitness]:
    """Every valid parameter tuple with entries in ``[-bound, bound]``."""
    if kind == "two_step_i":
        kinds = ("two_step_i", "two_step_i_b")
    else:
        kinds = (kind,)
    for k in kinds:
        names = _GEN[k][1]
        for tup in _box(bound, len(names)):
            try:
                yield family_generate(kind, **dict(zip(names, tup)))
            except ConditionViolated:
                continue
