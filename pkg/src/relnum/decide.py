"""Decision engines: exhaustive ladder searches, greedy search, and prechecks.

A witness is a nonzero integer sequence ``n`` with ``s^n_{k+1}(sqrt(-lam)) = 0``,
equivalently ``[n] = inf``. The ladder ``M_k`` is the maximum of ``|[n]|`` over
length-``k`` sequences; the first infinite level is the minimal u-degree.
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .chebyshev import eval_s_at_u, flip_signs, reduce_zero_entries
from .numeric import (
    INF,
    NotRealField,
    QuadNum,
    as_quad,
    cmp_real,
    floor_ceil_real,
    nonzero_neighbors,
    parse_lambda,
    rational_sqrt_enclosure,
    round_away,
)
from .wcf import PrefixTracker, WcfContext, root_condition_check, wcf_eval, wcf_eval_reversed

log = logging.getLogger(__name__)

__all__ = [
    "ZeroLambda",
    "NotComplexField",
    "SearchTimeout",
    "LadderEntry",
    "MkLadder",
    "DecisionReport",
    "GreedyParams",
    "free_region_precheck",
    "mindeg_lower_bound",
    "exhaustive_decide_real",
    "exhaustive_decide_complex",
    "mk_table",
    "greedy_find",
    "verify_witness",
    "decide",
    "delta_fn",
    "complex_candidates",
]

RELATION = "relation_number"
FREE = "free_by_region"
UNKNOWN = "unknown"

_CHECK_EVERY = 4096


class ZeroLambda(ValueError):
    pass


class NotComplexField(ValueError):
    pass


class SearchTimeout(Exception):
    pass


# ---------------------------------------------------------------------------
# report types
# ---------------------------------------------------------------------------


def _num_to_json(x):
    if x is None:
        return None
    if x is INF:
        return "inf"
    return str(x)


def _num_from_json(s):
    if s is None:
        return None
    if s == "inf":
        return INF
    q = parse_lambda(s)
    return q.a if q.is_rational() else q


def _seq_to_json(n):
    if n is None:
        return None
    return ["inf" if x is INF else int(x) for x in n]


def _seq_from_json(n):
    if n is None:
        return None
    return tuple(INF if x == "inf" else int(x) for x in n)


@dataclass
class LadderEntry:
    k: int
    value: object  # exact M_k (real), INF when infinite, None for complex
    abs_sq: Optional[Fraction]  # complex: exact |M_k|^2
    upper: Optional[Fraction]  # complex: rational upper bound on M_k
    sequence: tuple
    status: str = "finite"

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "value": _num_to_json(self.value),
            "abs_sq": _num_to_json(self.abs_sq),
            "upper": _num_to_json(self.upper),
            "sequence": _seq_to_json(self.sequence),
            "status": self.status,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LadderEntry":
        return cls(
            k=d["k"],
            value=_num_from_json(d["value"]),
            abs_sq=_num_from_json(d["abs_sq"]),
            upper=_num_from_json(d["upper"]),
            sequence=_seq_from_json(d["sequence"]),
            status=d["status"],
        )


@dataclass
class MkLadder:
    entries: list = field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def values(self) -> list:
        return [e.value for e in self.entries]

    def to_dict(self) -> list:
        return [e.to_dict() for e in self.entries]

    @classmethod
    def from_dict(cls, d: list) -> "MkLadder":
        return cls([LadderEntry.from_dict(x) for x in d])


@dataclass
class DecisionReport:
    lam: QuadNum
    verdict: str
    witness: Optional[tuple] = None
    mindeg: Optional[int] = None
    mindeg_lo: int = 1
    mindeg_hi: Optional[int] = None
    ladder: MkLadder = field(default_factory=MkLadder)
    elapsed: float = 0.0
    method: str = "exhaustive"
    cutoffs: dict = field(default_factory=dict)
    verification: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "lambda": str(self.lam),
            "verdict": self.verdict,
            "witness": _seq_to_json(self.witness),
            "mindeg": self.mindeg,
            "mindeg_lo": self.mindeg_lo,
            "mindeg_hi": self.mindeg_hi,
            "ladder": self.ladder.to_dict(),
            "elapsed": self.elapsed,
            "method": self.method,
            "cutoffs": dict(self.cutoffs),
            "verification": dict(self.verification),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DecisionReport":
        return cls(
            lam=parse_lambda(d["lambda"]),
            verdict=d["verdict"],
            witness=_seq_from_json(d["witness"]),
            mindeg=d["mindeg"],
            mindeg_lo=d["mindeg_lo"],
            mindeg_hi=d["mindeg_hi"],
            ladder=MkLadder.from_dict(d["ladder"]),
            elapsed=d["elapsed"],
            method=d["method"],
            cutoffs=dict(d["cutoffs"]),
            verification=dict(d["verification"]),
        )


@dataclass(frozen=True)
class GreedyParams:
    N: int = 5
    W: Fraction = Fraction(13)
    k_max: int = 30

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N >= 1")
        if Fraction(self.W) <= 0:
            raise ValueError("W > 0")
        if self.k_max < self.N:
            raise ValueError("k_max >= N")

    @classmethod
    def default_for(cls, lam, k_max: int = 30) -> "GreedyParams":
        lam = as_quad(lam)
        w = lam.a.denominator if lam.is_rational() else 13
        return cls(N=5, W=Fraction(w), k_max=max(k_max, 5))


class _Clock:
    def __init__(self, timeout: Optional[float]):
        self.deadline = None if timeout is None else time.monotonic() + timeout
        self.count = 0

    def tick(self):
        self.count += 1
        if self.deadline is not None and self.count % _CHECK_EVERY == 0:
            if time.monotonic() > self.deadline:
                raise SearchTimeout()


def _check_lambda(lam) -> QuadNum:
    lam = as_quad(lam)
    if not lam:
        raise ZeroLambda("lambda must be nonzero")
    return lam


# ---------------------------------------------------------------------------
# prechecks
# ---------------------------------------------------------------------------


def _parts(lam: QuadNum):
    """Real part (a real QuadNum) and exact Im^2."""
    return lam.real_part(), lam.imag_sq()


def free_region_precheck(lam) -> str:
    """``"free"`` if a classical freeness criterion certifies ``lam``, else ``"undetermined"``."""
    lam = _check_lambda(lam)
    for z in _symmetric_images(lam):
        if _free_one(z):
            return "free"
    return "undetermined"


def _symmetric_images(lam: QuadNum):
    out = [lam, -lam]
    if lam.d < 0:
        out += [lam.conjugate(), -lam.conjugate()]
    return out


def _free_one(lam: QuadNum) -> bool:
    x, y2 = _parts(lam)
    # |lam| >= 4
    if cmp_real(x * x + y2, 16) >= 0:
        return True
    # outside the three open discs of radius 2 at -2, 0, 2
    if all(cmp_real((x - c) * (x - c) + y2, 4) >= 0 for c in (-2, 0, 2)):
        return True
    # outside the interior of the hull of |z| = 2 and +-4
    if not _in_hull_interior(x, y2):
        return True
    # |lam +- i| >= 1 and |lam +- 2| >= 2
    ok_i = all(_im_shift_ge(lam, s) for s in (1, -1))
    ok_2 = all(cmp_real((x - c) * (x - c) + y2, 4) >= 0 for c in (2, -2))
    if ok_i and ok_2:
        return True
    # Ignatov: |lam - 2| > 1 and 2 <= Re lam < 5/2
    if cmp_real((x - 2) * (x - 2) + y2, 1) > 0 and cmp_real(x, 2) >= 0 and cmp_real(x, Fraction(5, 2)) < 0:
        return True
    # Ignatov: |lam| > 2 and |Im lam| > 1
    if cmp_real(x * x + y2, 4) > 0 and y2 > 1:
        return True
    return False


def _im_shift_ge(lam: QuadNum, s: int) -> bool:
    """``|lam + s*i|^2 >= 1`` exactly."""
    if lam.d > 0:
        return True  # real: |lam + s i|^2 = lam^2 + 1
    # x^2 + y^2 + 2 s b sqrt(-d) >= 0 with y = b sqrt(-d)
    inner = QuadNum(lam.abs_sq(), 2 * s * lam.b, -lam.d)
    return cmp_real(inner, 0) >= 0


def _in_hull_interior(x: QuadNum, y2: Fraction) -> bool:
    """Interior of the convex hull of the circle ``|z| = 2`` and ``+-4``."""
    ax = x if cmp_real(x, 0) >= 0 else -x
    if cmp_real(ax, 4) >= 0:
        return False
    if cmp_real(ax, 1) <= 0:
        return cmp_real(ax * ax + y2, 4) < 0
    # tangent lines |y| < (4 - |x|)/sqrt(3)
    gap = 4 - ax
    return cmp_real(3 * y2, gap * gap) < 0


def mindeg_lower_bound(lam, cap: int = 10_000) -> int:
    """Largest ``n`` with ``|lam| >= 4cos^2(pi/(n+1))``, by the alternating values ``F_k``.

    ``n`` is certified when ``F_1, ..., F_{n-2}`` lie in ``(0, 1)`` and ``F_{n-1}``
    in ``(0, 1]``. For ``|lam| >= 4`` every ``n`` qualifies and ``cap`` is returned.
    """
    lam = _check_lambda(lam)
    if not lam.is_real():
        raise NotRealField("lower bound needs a real lambda")
    a = lam if cmp_real(lam, 0) > 0 else -lam
    mu = a.inverse()
    n = 1
    f = as_quad(0)
    for j in range(1, cap):
        f = mu / (1 - f)  # F_j, with F_{j-1} < 1 established
        if cmp_real(f, 0) <= 0 or cmp_real(f, 1) > 0:
            break
        n = j + 1
        if cmp_real(f, 1) == 0:
            break
    else:
        return cap
    return n


# ---------------------------------------------------------------------------
# real exhaustive search, rational fast path
# ---------------------------------------------------------------------------


def _order_near(lo: int, hi: int, c: float) -> list[int]:
    """Nonzero integers in ``[lo, hi]``, nearest to ``c`` first."""
    if lo > hi:
        return []
    start = min(max(round(c), lo), hi)
    out = [start] if start != 0 else []
    left, right = start - 1, start + 1
    while left >= lo or right <= hi:
        dl = c - left if left >= lo else math.inf
        dr = right - c if right <= hi else math.inf
        if dr < dl:
            if right != 0:
                out.append(right)
            right += 1
        else:
            if left != 0:
                out.append(left)
            left -= 1
    return out


def _open_window(c: Fraction, R: Fraction) -> tuple[int, int]:
    """Integer range of the open interval ``(c - R, c + R)``."""
    lo = math.floor(c - R) + 1
    hi = math.ceil(c + R) - 1
    return lo, hi


def _rational_level(
    p: int, q: int, k: int, M: list, clock: _Clock, first: Optional[list] = None, nearest: bool = False
):
    """One exhaustive level for ``lam = p/q > 0``.

    Returns ``(witness, best_num, best_den, best_seq)``; ``M[j]`` are the exact
    lower levels as Fractions.
    """
    A = [0] * (k + 1)
    B = [1] + [0] * k
    # forward Moebius matrices, scaled so entries stay integral
    PA = [1] + [0] * k
    PB = [0] * (k + 1)
    PC = [0] * (k + 1)
    PD = [1] + [0] * k
    path = [0] * k
    best = [0, 1, None]  # num, den, seq
    radii = [None] + [M[k - i] + 2 for i in range(1, k)]

    def leaf():
        a, b = A[k - 1], B[k - 1]
        if a != 0 and a % b == 0:
            return tuple(path[: k - 1]) + (-a // b,)
        negc = Fraction(-a, b)
        lo, hi = nonzero_neighbors(negc) if negc.denominator != 1 else (negc, negc)
        if nearest:
            lo = hi = round_away(negc) or (1 if negc > 0 else -1)
        pa, pb, pc, pd = PA[k - 1], PB[k - 1], PC[k - 1], PD[k - 1]
        bn, bd = best[0], best[1]
        for x in (lo, hi) if lo != hi else (lo,):
            num = pa * q + pb * p * x
            den = pc * q + pd * p * x
            num, den = abs(num), abs(den)
            if num * bd > bn * den:
                bn, bd = num, den
                best[2] = tuple(path[: k - 1]) + (x,)
        best[0], best[1] = bn, bd
        clock.tick()
        return None

    def rec(i):
        # choose n_i; prefix n_1..n_{i-1} is set
        a, b = A[i - 1], B[i - 1]
        c = Fraction(-a, b)
        lo, hi = _open_window(c, radii[i])
        cands = _order_near(lo, hi, float(c))
        if i == 1 and first is not None:
            cands = [n for n in cands if n in first]
        pa, pb, pc, pd = PA[i - 1], PB[i - 1], PC[i - 1], PD[i - 1]
        for n in cands:
            nb = n * b + a
            if nb == 0:
                raise AssertionError("shorter witness inside the search")
            A[i] = q * b
            B[i] = p * nb
            PA[i] = pb * p
            PB[i] = pa * q + pb * p * n
            PC[i] = pd * p
            PD[i] = pc * q + pd * p * n
            path[i - 1] = n
            if i == k - 1:
                w = leaf()
            else:
                w = rec(i + 1)
            if w is not None:
                return w
        return None

    if k == 1:
        w = leaf()
    else:
        w = rec(1)
    return w, best[0], best[1], best[2]


def _level_worker(args):
    p, q, k, M, first, timeout, nearest = args
    clock = _Clock(timeout)
    return _rational_level(p, q, k, M, clock, first, nearest)


def _rational_level_parallel(p, q, k, M, threads, timeout, nearest=False):
    # depth-1 candidates, split across workers; merge maxima, earliest witness wins
    c = Fraction(0)
    lo, hi = _open_window(c, M[k - 1] + 2)
    cands = _order_near(lo, hi, 0.0)
    chunks = [[n] for n in cands]
    results = []
    with ProcessPoolExecutor(max_workers=threads) as ex:
        futs = [ex.submit(_level_worker, (p, q, k, M, ch, timeout, nearest)) for ch in chunks]
        for f in futs:
            r = f.result()
            results.append(r)
            if r[0] is not None:
                for g in futs:
                    g.cancel()
                return r
    bn, bd, bs = 0, 1, None
    for _, num, den, seq in results:
        if num * bd > bn * den:
            bn, bd, bs = num, den, seq
    return None, bn, bd, bs


# ---------------------------------------------------------------------------
# real exhaustive search, general real quadratic field
# ---------------------------------------------------------------------------


def _abs_real(x: QuadNum) -> QuadNum:
    return -x if cmp_real(x, 0) < 0 else x


def _field_open_window(c: QuadNum, R) -> tuple[int, int]:
    lo_f, _ = floor_ceil_real(c - R)
    _, hi_c = floor_ceil_real(c + R)
    return lo_f + 1, hi_c - 1


def _field_level(ctx: WcfContext, k: int, M: list, clock: _Clock):
    tr = PrefixTracker(ctx)
    best = [as_quad(0, ctx.lam.d), None]

    def leaf():
        m = tr.center()
        if m.is_integer() and m:
            return tuple(tr.path) + (int(m.a),)
        l, r = nonzero_neighbors(m)
        for x in (l, r) if l != r else (l,):
            v = tr.forward_with(x)
            if v is INF:
                raise AssertionError("unexpected infinite value at a neighbour")
            av = _abs_real(v)
            if cmp_real(av, best[0]) > 0:
                best[0] = av
                best[1] = tuple(tr.path) + (x,)
        clock.tick()
        return None

    def rec(i):
        c = tr.center()
        lo, hi = _field_open_window(c, M[k - i] + 2)
        for n in _order_near(lo, hi, float(c)):
            tr.push(n)
            try:
                if tr.rev[-1] is INF:
                    raise AssertionError("shorter witness inside the search")
                w = leaf() if i == k - 1 else rec(i + 1)
            finally:
                tr.pop()
            if w is not None:
                return w
        return None

    w = leaf() if k == 1 else rec(1)
    return w, best[0], best[1]


def _alternating(k: int) -> tuple[int, ...]:
    return tuple((-1) ** i for i in range(k))


def _bound_soundness(witness: Sequence[int], ctx: WcfContext, M: list) -> bool:
    """``|n_i + [n_{i-1}, ..., n_1]| < M_{k-i} + 2`` along the witness."""
    k = len(witness)
    for i in range(1, k + 1):
        r = wcf_eval_reversed(witness[: i - 1], ctx)
        val = as_quad(witness[i - 1]) + r
        lim = M[k - i] + 2
        if cmp_real(_abs_real(val), lim) >= 0:
            return False
    return True


def _run_real(
    lam: QuadNum, k_max: int, timeout: Optional[float], threads: int, stop_at: Optional[int], nearest: bool = False
):
    """Shared driver for decide and mk_table on ``lam > 0``."""
    ctx = WcfContext(lam)
    clock = _Clock(timeout)
    ladder = MkLadder()
    M: list = [as_quad(0).a if lam.is_rational() else as_quad(0, lam.d)]
    limit = k_max if stop_at is None else min(k_max, stop_at)
    k = 0
    witness = None
    # alternating prefix while M_k <= 1
    while k < limit and cmp_real(M[k], 1) <= 0:
        seq = _alternating(k + 1)
        v = wcf_eval(seq, ctx)
        k += 1
        if v is INF:
            ladder.entries.append(LadderEntry(k, INF, None, None, seq, "infinite"))
            return ladder, seq, k, False
        v = v.a if v.is_rational() else v
        M.append(v)
        ladder.entries.append(LadderEntry(k, v, None, None, seq))
    rational = lam.is_rational()
    if rational:
        p, q = lam.a.numerator, lam.a.denominator
    while k < limit:
        k += 1
        try:
            if rational:
                if threads > 1 and k > 2:
                    w, bn, bd, bs = _rational_level_parallel(p, q, k, M, threads, timeout, nearest)
                else:
                    w, bn, bd, bs = _rational_level(p, q, k, M, clock, None, nearest)
                val = Fraction(bn, bd)
            else:
                w, val, bs = _field_level(ctx, k, M, clock)
        except SearchTimeout:
            return ladder, None, k - 1, True
        if w is not None:
            witness = w
            ladder.entries.append(LadderEntry(k, INF, None, None, w, "infinite"))
            return ladder, witness, k, False
        if cmp_real(val, M[-1]) <= 0:
            raise AssertionError(f"ladder not strictly increasing at k={k}")
        M.append(val)
        ladder.entries.append(LadderEntry(k, val, None, None, bs))
        log.debug("M_%d = %s", k, val)
    return ladder, None, k, False


def exhaustive_decide_real(lam, k_max: int = 30, timeout: Optional[float] = None, threads: int = 1) -> DecisionReport:
    """Exhaustive ladder search for real ``lam``; negative values go through the sign flip."""
    t0 = time.monotonic()
    lam = _check_lambda(lam)
    if not lam.is_real():
        raise NotRealField("use exhaustive_decide_complex for non-real lambda")
    neg = cmp_real(lam, 0) < 0
    pos = -lam if neg else lam
    ladder, w, k, timed_out = _run_real(pos, k_max, timeout, threads, None)
    lb = mindeg_lower_bound(lam)
    cut = {"k_max": k_max, "timeout": timeout, "timed_out": timed_out}
    if w is not None:
        if neg:
            w = flip_signs(w, "alternate")
        rep = DecisionReport(lam, RELATION, w, k, k, k, ladder, 0.0, "exhaustive", cut)
        M = [Fraction(0)] + [e.value for e in ladder.entries[:-1]]
        rep.verification = verify_witness(lam, w, word=False).flags()
        rep.verification["bound_soundness"] = _bound_soundness(
            flip_signs(w, "alternate") if neg else w, WcfContext(pos), M
        )
    else:
        rep = DecisionReport(lam, UNKNOWN, None, None, max(k + 1, lb), None, ladder, 0.0, "exhaustive", cut)
    rep.elapsed = time.monotonic() - t0
    return rep


def mk_table(
    lam, up_to_k: int, timeout: Optional[float] = None, threads: int = 1, leaf_rule: str = "neighbors"
) -> MkLadder:
    """Exact ``M_1, ..., M_K`` for real ``lam > 0``; stops at the first infinite level.

    ``leaf_rule="nearest"`` is a diagnostic variant that scores only the integer
    nearest to the last singular point instead of both neighbours. It gives lower
    values than the true maxima once ``M_k > 1`` and exists to explain tables
    produced that way. Rational ``lam`` only.
    """
    lam = _check_lambda(lam)
    if not lam.is_real() or cmp_real(lam, 0) <= 0:
        raise ValueError("mk_table needs a real positive lambda")
    if leaf_rule not in ("neighbors", "nearest"):
        raise ValueError(f"unknown leaf rule {leaf_rule!r}")
    nearest = leaf_rule == "nearest"
    if nearest and not lam.is_rational():
        raise ValueError("the nearest leaf rule is only implemented for rational lambda")
    ladder, _, k, timed_out = _run_real(lam, up_to_k, timeout, threads, up_to_k, nearest)
    if timed_out:
        raise SearchTimeout(f"timed out after level {k}")
    return ladder


# ---------------------------------------------------------------------------
# complex exhaustive search
# ---------------------------------------------------------------------------


def _enc_scale(b: Fraction, enc: tuple) -> tuple[Fraction, Fraction]:
    lo, hi = enc
    return (b * lo, b * hi) if b >= 0 else (b * hi, b * lo)


def _sqrt_hi(r: Fraction, eps: Fraction) -> Fraction:
    return rational_sqrt_enclosure(r, eps * max(1, r))[1] if r else Fraction(0)


def delta_fn(D: QuadNum, t: Fraction, sd_enc: tuple, eps: Fraction) -> Fraction:
    """Upper bound for ``|D| |D + t i| - <D, D + t i>`` (exact value when ``t = 0``)."""
    if t == 0:
        return Fraction(0)
    a2 = D.abs_sq()
    dlo, dhi = _enc_scale(D.b, sd_enc)
    y2 = max((dlo + t) ** 2, (dhi + t) ** 2)
    if dlo <= -t <= dhi:
        y2 = max(y2, Fraction(0))
    hi = _sqrt_hi(a2, eps) * _sqrt_hi(D.a * D.a + y2, eps)
    inner_lo = a2 + min(dlo * t, dhi * t)
    return max(hi - inner_lo, Fraction(0))


def complex_candidates(c: QuadNum, D, R: Fraction, sd_enc: tuple, eps: Fraction):
    """Candidate integers for ``n_i`` and whether the ``inf`` branch is needed.

    ``c = -[n_{i-1}, ..., n_1]`` is the centre of the singular-point disc of
    radius ``R``; ``D`` the current D value.
    """
    re_c = c.a
    if D is INF or D.a == 0:
        if D is not INF and not D:
            return [], True
        lo, hi = re_c - R, re_c + R
        lo_i, hi_i = math.floor(lo - 2) + 1, math.ceil(hi + 2) - 1
        return _order_near(lo_i, hi_i, float(re_c)), True
    im_lo, im_hi = _enc_scale(c.b, sd_enc)
    ta, tb = 2 * (im_lo - R), 2 * (im_hi + R)
    delta = max(delta_fn(D, ta, sd_enc, eps), delta_fn(D, tb, sd_enc, eps))
    s = delta / (2 * abs(D.a))
    if D.a > 0:
        lo, hi = re_c - R - s, re_c + R
    else:
        lo, hi = re_c - R, re_c + R + s
    lo_i, hi_i = math.floor(lo - 2) + 1, math.ceil(hi + 2) - 1
    return _order_near(lo_i, hi_i, float((lo + hi) / 2)), False


def _upper_sqrt(a2: Fraction, rel: Fraction = Fraction(1, 2**20)) -> Fraction:
    """Rational upper bound on ``sqrt(a2)`` within relative slack ``rel``."""
    if a2 == 0:
        return Fraction(0)
    rough = Fraction(math.sqrt(float(a2))) / 2  # below sqrt(a2)
    return rational_sqrt_enclosure(a2, rel * rough)[1]


def _complex_level(ctx: WcfContext, k: int, U: list, clock: _Clock, sd_enc: tuple, eps: Fraction):
    tr = PrefixTracker(ctx)
    best = [Fraction(-1), None]

    def consider(val, seq):
        if val is INF:
            raise AssertionError("infinite value outside the witness test")
        a2 = val.abs_sq()
        if a2 > best[0]:
            best[0] = a2
            best[1] = seq

    def visit(i):
        # choose n_i with prefix n_1..n_{i-1} on the tracker
        c = tr.center()
        if c is INF:
            raise AssertionError("shorter witness inside the search")
        if i == k and c.is_integer() and c:
            return tuple(tr.path) + (int(c.a),)
        D = tr.d_value()
        cands, with_inf = complex_candidates(c, D, U[k - i], sd_enc, eps)
        if with_inf:
            consider(tr.forward(), tuple(tr.path) + (INF,) * (k - i + 1))
        for n in cands:
            if i == k:
                consider(tr.forward_with(n), tuple(tr.path) + (n,))
                clock.tick()
                continue
            tr.push(n)
            try:
                if tr.rev[-1] is INF:
                    raise AssertionError("shorter witness inside the search")
                w = visit(i + 1)
            finally:
                tr.pop()
            if w is not None:
                return w
        return None

    w = visit(1)
    return w, best[0], best[1]


def exhaustive_decide_complex(
    lam, k_max: int = 30, timeout: Optional[float] = None, eps_bits: int = 30
) -> DecisionReport:
    """Exhaustive ladder search for non-real ``lam`` in an imaginary quadratic field."""
    t0 = time.monotonic()
    lam = _check_lambda(lam)
    if lam.is_real():
        raise NotComplexField("lambda is real")
    ctx = WcfContext(lam)
    eps = Fraction(1, 2**eps_bits)
    sd_enc = rational_sqrt_enclosure(-lam.d, eps)
    clock = _Clock(timeout)
    ladder = MkLadder()
    U = [Fraction(0)]
    last_sq = Fraction(0)
    witness = None
    k = 0
    timed_out = False
    while k < k_max:
        k += 1
        try:
            w, a2, seq = _complex_level(ctx, k, U, clock, sd_enc, eps)
        except SearchTimeout:
            timed_out = True
            k -= 1
            break
        if w is not None:
            witness = w
            ladder.entries.append(LadderEntry(k, INF, None, None, w, "infinite"))
            break
        if a2 < last_sq:
            raise AssertionError(f"complex ladder decreased at k={k}")
        last_sq = a2
        up = _upper_sqrt(a2)
        U.append(up)
        ladder.entries.append(LadderEntry(k, None, a2, up, seq))
    cut = {"k_max": k_max, "timeout": timeout, "timed_out": timed_out, "eps_bits": eps_bits}
    if witness is not None:
        rep = DecisionReport(lam, RELATION, witness, k, k, k, ladder, 0.0, "exhaustive_complex", cut)
        rep.verification = verify_witness(lam, witness, word=False).flags()
    else:
        rep = DecisionReport(lam, UNKNOWN, None, None, k + 1, None, ladder, 0.0, "exhaustive_complex", cut)
    rep.elapsed = time.monotonic() - t0
    return rep


# ---------------------------------------------------------------------------
# greedy search
# ---------------------------------------------------------------------------


def _closed_window(c: Fraction, W: Fraction) -> tuple[int, int]:
    return math.ceil(c - W), math.floor(c + W)


def _greedy_rational(p: int, q: int, params: GreedyParams, clock: _Clock):
    N, W, k_max = params.N, Fraction(params.W), params.k_max
    A = [0] * (k_max + 1)
    B = [1] + [0] * k_max
    path = [0] * k_max

    def tail(i0):
        a, b = A[i0 - 1], B[i0 - 1]
        for i in range(i0, k_max + 1):
            # centre m = -a/b
            if a % b == 0:
                m = -a // b
                if m != 0:
                    return tuple(path[: i - 1]) + (m,)
            # round half away from zero
            num, den = -a, b
            if den < 0:
                num, den = -num, -den
            if num >= 0:
                n = (2 * num + den) // (2 * den)
            else:
                n = -((-2 * num + den) // (2 * den))
            if n == 0:
                n = 1
            path[i - 1] = n
            a, b = q * b, p * (n * b + a)
        clock.tick()
        return None

    def rec(i):
        a, b = A[i - 1], B[i - 1]
        if a % b == 0 and a != 0:
            return tuple(path[: i - 1]) + (-a // b,)
        if i > N:
            return tail(i)
        c = Fraction(-a, b)
        lo, hi = _closed_window(c, W)
        for n in _order_near(lo, hi, float(c)):
            A[i] = q * b
            B[i] = p * (n * b + a)
            path[i - 1] = n
            w = rec(i + 1)
            if w is not None:
                return w
        return None

    return rec(1)


def _greedy_field(ctx: WcfContext, params: GreedyParams, clock: _Clock):
    tr = PrefixTracker(ctx)
    N, W, k_max = params.N, Fraction(params.W), params.k_max

    def rec(i):
        m = tr.center()
        if m.is_integer() and m:
            return tuple(tr.path) + (int(m.a),)
        if i > k_max:
            clock.tick()
            return None
        if i > N:
            n = round_away(m) or 1
            tr.push(n)
            try:
                return rec(i + 1)
            finally:
                tr.pop()
        lo, _ = floor_ceil_real(m - W)
        _, hi = floor_ceil_real(m + W)
        lo = lo if (m - W).is_integer() else lo + 1
        hi = hi if (m + W).is_integer() else hi - 1
        for n in _order_near(lo, hi, float(m)):
            tr.push(n)
            try:
                w = rec(i + 1)
            finally:
                tr.pop()
            if w is not None:
                return w
        return None

    return rec(1)


def greedy_find(lam, params: Optional[GreedyParams] = None, timeout: Optional[float] = None):
    """Windowed search over the first ``N`` entries, rounding afterwards; first hit wins."""
    lam = _check_lambda(lam)
    if not lam.is_real():
        raise NotRealField("greedy search needs a real lambda")
    if params is None:
        params = GreedyParams.default_for(lam)
    neg = cmp_real(lam, 0) < 0
    pos = -lam if neg else lam
    clock = _Clock(timeout)
    try:
        if pos.is_rational():
            w = _greedy_rational(pos.a.numerator, pos.a.denominator, params, clock)
        else:
            w = _greedy_field(WcfContext(pos), params, clock)
    except SearchTimeout:
        return None
    if w is not None and neg:
        w = flip_signs(w, "alternate")
    return w


# ---------------------------------------------------------------------------
# verification and top-level entry
# ---------------------------------------------------------------------------


@dataclass
class WitnessCheck:
    sequence: tuple
    reduced: tuple
    s_zero: bool
    wcf_infinite: bool
    root_conditions: bool
    word_identity: Optional[bool]

    @property
    def ok(self) -> bool:
        core = self.s_zero and self.wcf_infinite and self.root_conditions
        return core and self.word_identity is not False

    def flags(self) -> dict:
        return {
            "s_zero": self.s_zero,
            "wcf_infinite": self.wcf_infinite,
            "root_conditions": self.root_conditions,
            "word_identity": self.word_identity,
            "all_pass": self.ok,
        }


def verify_witness(lam, n: Sequence[int], word: bool = True) -> WitnessCheck:
    """Independent checks that ``n`` certifies ``lam`` as a relation number."""
    lam = _check_lambda(lam)
    n = tuple(int(x) for x in n)
    m, sign = reduce_zero_entries(n)
    if sign == 0 or not m:
        return WitnessCheck(n, m, sign == 0, False, False, None if not word else False)
    ctx = WcfContext(lam)
    s_zero = not eval_s_at_u(m, lam)
    wcf_inf = wcf_eval(m, ctx) is INF
    roots = all(root_condition_check(m, i, ctx) for i in range(1, len(m) + 1))
    word_ok = None
    if word:
        if s_zero:
            from .witness import relation_word

            try:
                word_ok = relation_word(m, lam).verified
            except Exception:  # noqa: BLE001 - any failure counts as a failed check
                word_ok = False
        else:
            word_ok = False
    return WitnessCheck(n, m, s_zero, wcf_inf, roots, word_ok)


def decide(
    lam,
    k_max: int = 30,
    timeout: Optional[float] = None,
    threads: int = 1,
    eps_bits: int = 30,
    precheck: bool = True,
) -> DecisionReport:
    """Precheck, then the exhaustive search that matches the field of ``lam``.

    ``precheck=False`` goes straight to the search, which can only ever report
    ``unknown`` for a free ``lam``.
    """
    t0 = time.monotonic()
    lam = _check_lambda(lam)
    if precheck and free_region_precheck(lam) == "free":
        rep = DecisionReport(lam, FREE, None, None, 1, None, MkLadder(), 0.0, "precheck", {"k_max": k_max})
        rep.elapsed = time.monotonic() - t0
        return rep
    if lam.is_real():
        return exhaustive_decide_real(lam, k_max=k_max, timeout=timeout, threads=threads)
    return exhaustive_decide_complex(lam, k_max=k_max, timeout=timeout, eps_bits=eps_bits)
