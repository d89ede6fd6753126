"""Randomised exact checks of the continuant and Chebyshev identity kit.

Every check draws its own inputs from ``random.Random(trial_seed)``, so a failing
trial can be replayed from the seed stored in the report.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Callable

from .chebyshev import IntPoly, T, flip_signs, rotate_quarter, s_index, s_poly, vTtt_polys
from .continuant import K, Kplus, kn_matrix, mobius_product, qpw_polys, tridiagonal_det
from .numeric import QuadNum, as_quad
from .wcf import wcf_ratio_check

__all__ = ["CHECKS", "run_suite", "run_check"]

ONE = IntPoly((1,))
X = T  # a second symbol in identities that only need one variable


def _nz(rng: random.Random, b: int) -> int:
    v = rng.randint(1, b)
    return v if rng.random() < 0.5 else -v


def _seq(rng, n, b):
    return [_nz(rng, b) for _ in range(n)]


def _sub(c, a, b):
    """``K(c_a, ..., c_b)`` with 1-based indices; ``b = a - 2`` gives ``K_{-1} = 0``."""
    if b == a - 2:
        return 0
    return K(c[a - 1 : b])


def _lin(rng, b):
    return IntPoly((_nz(rng, b), _nz(rng, b)))


# ---------------------------------------------------------------------------
# continuant identities
# ---------------------------------------------------------------------------


def _euler(rng, L, b):
    n = rng.randint(2, max(L, 2)) + 2
    c = _seq(rng, n, b)
    i, j, k, l = sorted(rng.sample(range(0, n + 2), 4))
    lhs = _sub(c, i + 1, k - 1) * _sub(c, j + 1, l - 1)
    rhs = _sub(c, i + 1, j - 1) * _sub(c, k + 1, l - 1) + _sub(c, j + 1, k - 1) * _sub(c, i + 1, l - 1)
    return lhs == rhs


def _ei_cor(rng, L, b):
    n = rng.randint(2, max(L, 2)) + 2
    c = _seq(rng, n, b)
    i, j, l = sorted(rng.sample(range(0, n + 2), 3))
    if l < j + 2:
        l = j + 2
        if l > n + 1:
            return True
    lhs = _sub(c, i + 1, j) * _sub(c, j + 1, l - 1)
    rhs = _sub(c, i + 1, j - 1) * _sub(c, j + 2, l - 1) + _sub(c, i + 1, l - 1)
    return lhs == rhs


def _alt(c, x, start_x: bool):
    return [v * x if (i % 2 == 0) == start_x else v for i, v in enumerate(c)]


def _alt_even(rng, L, b):
    n = rng.randint(1, max(L // 2, 1))
    c = _seq(rng, 2 * n, b)
    a, d = _alt(c, X, True), _alt(c, X, False)
    return K(a) == K(d) and Kplus(a) == Kplus(d)


def _alt_odd(rng, L, b):
    n = rng.randint(0, max(L // 2, 1))
    c = _seq(rng, 2 * n + 1, b)
    a, d = _alt(c, X, True), _alt(c, X, False)
    return K(a) == X * K(d) and Kplus(a) == X * Kplus(d)


def _reversal(rng, L, b):
    c = [_lin(rng, b) for _ in range(rng.randint(0, L))]
    return K(c) == K(c[::-1]) and Kplus(c) == Kplus(c[::-1])


def _negation(rng, L, b):
    c = [_lin(rng, b) for _ in range(rng.randint(0, L))]
    neg = [-v for v in c]
    s = (-1) ** len(c)
    return K(neg) == s * K(c) and Kplus(neg) == s * Kplus(c)


_MT2 = IntPoly((0, 0, -1))  # x = -t^2


def _kk_i(rng, L, b):
    n = rng.randint(1, max(L // 2, 1))
    c = _seq(rng, 2 * n, b)
    ct = [v * T for v in c]
    ok = Kplus(_alt(c, _MT2, False)) == (-1) ** n * K(ct)
    c2 = c[:-1]
    # K+_{2n-1}(c_1, c_2 x, ..., c_{2n-1}) = (-1)^{n-1}/t K_{2n-1}(c t); cleared of 1/t
    ok &= T * Kplus(_alt(c2, _MT2, False)) == (-1) ** (n - 1) * K([v * T for v in c2])
    return ok


def _kk_ii(rng, L, b):
    n = rng.randint(1, max(L // 2, 1))
    c = _seq(rng, 2 * n - 1, b)
    ok = Kplus(_alt(c, _MT2, True)) == (-1) ** n * T * K([v * T for v in c])
    c = _seq(rng, 2 * n, b)
    ok &= Kplus(_alt(c, _MT2, True)) == (-1) ** n * K([v * T for v in c])
    return ok


def _kn(rng, L, b):
    c = [_lin(rng, b) for _ in range(rng.randint(0, L))]
    cc = _seq(rng, rng.randint(0, L), b)
    ok = mobius_product(c, "M") == kn_matrix(c, "M") and mobius_product(c, "Mplus") == kn_matrix(c, "Mplus")
    ok &= K(cc) == tridiagonal_det(cc, "K") and Kplus(cc) == tridiagonal_det(cc, "Kplus")
    return ok


def _ei1_i(rng, L, b):
    n = rng.randint(1, L)
    c = _seq(rng, n, b)
    x = X
    r, m, mr = c[::-1], [-v for v in c], [-v for v in c[::-1]]
    Kn, K1, Kh = K(c), K(c[1:]), K(c[:-1])
    ok = K(c + [x] + c) == Kn * (K(c + [x]) - K1)
    ok &= K(c + [x] + m) == (-1) ** n * Kn * (K(c + [x]) + K1)
    ok &= K(c + [x] + r) == Kn * (K(c + [x]) - Kh)
    ok &= K(c + [x] + mr) == (-1) ** n * x * Kn * Kn
    return ok


def _ei1_ii(rng, L, b):
    n = rng.randint(1, L)
    c = [_lin(rng, b) if rng.random() < 0.3 else _nz(rng, b) for _ in range(n)]
    r, m = c[::-1], [-v for v in c]
    Kn, K1 = K(c), K(c[1:])
    Kin = K(c[1:-1]) if n >= 2 else 0
    ok = K(r + c) == Kn * Kn - K1 * K1
    ok &= K(c + c) == Kn * (Kn - Kin) - 1
    ok &= K(c + m) == (-1) ** n * (Kn * (Kn + Kin) + 1)
    return ok


def _p_q(rng, L, b):
    n = rng.randint(1, L)
    c = _seq(rng, n, b)
    q, p, w = qpw_polys(c, X)
    Kn = K(c)
    ok = K(c + [X] + c[::-1]) == Kn * q
    ok &= K(c + [X] + c) == Kn * p
    ok &= K(c + [X] + [-v for v in c]) == (-1) ** n * Kn * w
    return ok


def _xs(rng, m, b):
    return [_lin(rng, b) for _ in range(m)]


def _cf_i(rng, L, b):
    n, k = rng.randint(1, min(L, 3)), rng.randint(1, 3)
    c = _seq(rng, n, b)
    xs = _xs(rng, k, b)
    seq = []
    for x in xs:
        seq += c + [x]
    seq += c
    return K(seq) == K(c) * K([qpw_polys(c, x)[1] for x in xs])


def _cf_ii(rng, L, b):
    n, k = rng.randint(1, min(L, 3)), rng.randint(1, 2)
    c = _seq(rng, n, b)
    r = c[::-1]
    ok = True
    for m, tail in ((2 * k, c), (2 * k + 1, r)):
        xs = _xs(rng, m, b)
        seq, qs = [], []
        for j, x in enumerate(xs):
            cc = c if j % 2 == 0 else r
            seq += cc + [x]
            qs.append(qpw_polys(cc, x)[0])
        seq += tail
        ok &= K(seq) == K(c) * K(qs)
    return ok


def _cf_iii(rng, L, b):
    # the outer continuant takes all 2k (resp. 2k-1) w-values
    n, k = rng.randint(1, min(L, 3)), rng.randint(1, 2)
    c = _seq(rng, n, b)
    r, m = c[::-1], [-v for v in c]
    ok = True
    for cnt, tail in ((2 * k, c), (2 * k - 1, m)):
        xs = _xs(rng, cnt, b)
        seq, ws = [], []
        for j, x in enumerate(xs):
            seq += (c if j % 2 == 0 else m) + [x]
            ws.append(qpw_polys(c if j % 2 == 0 else r, x)[2])
        seq += tail
        ok &= K(seq) == (-1) ** (k * n) * K(c) * K(ws)
    return ok


# ---------------------------------------------------------------------------
# Chebyshev side
# ---------------------------------------------------------------------------


def _n(rng, L, b, lo=1):
    return tuple(_seq(rng, rng.randint(lo, L), b))


def _ncheby1(rng, L, b):
    n = _n(rng, L, b)
    neg = tuple(-x for x in n)
    m = flip_signs(n, "alternate")
    l = tuple(-x for x in m)
    ok = True
    for j in range(0, len(n) + 2):
        p = s_index(n, j)
        ok &= s_index(neg, j) == (-1) ** (j + 1) * p
        ok &= s_index(neg, j) == p.neg_t()
        if j >= 1:
            if j % 2 == 0:
                # i * p(i t) = -(-i p(i t))
                ok &= s_index(m, j) == -rotate_quarter(p) and s_index(l, j) == rotate_quarter(p)
            else:
                ok &= s_index(m, j) == rotate_quarter(p) and s_index(l, j) == rotate_quarter(p)
    return ok


def _sv(rng, L, b):
    n = _n(rng, L, b)
    k = len(n)
    nt = [x * T for x in n]
    v = vTtt_polys(n)[0]
    ok = s_poly(n) == K(nt)
    ok &= v == K([ONE] + nt) and v == K(nt) - K(nt[1:])
    ok &= v.neg_t() == (-1) ** k * (K(nt) + K(nt[1:]))
    if k >= 2:
        ok &= nt[-1] * K([ONE] + nt[:-1]) == K(nt) - K(nt[1:]) + K([ONE] + nt[:-2])
    return ok


def _ts(rng, L, b):
    n = _n(rng, L, b)
    d = n[:-1] + (2 * n[-1],)
    return 2 * s_poly(n) == vTtt_polys(d)[1]


def _fcp(rng, L, b):
    n = _n(rng, L, b)
    k = len(n)
    x = (_nz(rng, b),)
    r, neg = n[::-1], tuple(-y for y in n)
    S = s_poly
    v, _, tt, th = vTtt_polys(n)
    ext = vTtt_polys(n + x)
    ok = S(n + x + r) == S(n) * ext[1]
    ok &= S(n + x + n) == S(n) * ext[2]
    # the sign (-1)^k accompanies the T^ factor
    ok &= S(n + x + neg) == (-1) ** k * S(n) * ext[3]
    ok &= S(r + n) == (-1) ** k * v * v.neg_t()
    ok &= S(n + n) == S(n) * tt - 1
    ok &= S(n + neg) == (-1) ** k * (S(n) * th + 1)
    return ok


def _split(rng, L, b):
    n = _n(rng, L, b)
    k = len(n)
    top = s_poly(n)
    _, _, tt, th = vTtt_polys(n)
    ok = True
    for i in range(1, k + 1):
        nL, nR, ni = n[: i - 1], n[i:], n[i - 1]
        nLp = n[: max(i - 2, 0)]
        sL = s_index(nL, i)
        sLp = s_index(nLp, i - 1) if i >= 2 else IntPoly()
        sR = s_index(nR, k - i + 1)
        sRp = s_index(n[i + 1 :], k - i) if i <= k - 1 else IntPoly()
        ok &= top == (sL * sR * ni).shift_t() - sLp * sR - sL * sRp
        if 1 < i < k:
            mid = nLp + (n[i - 2] + n[i],) + n[i + 1 :]
            ok &= top == (sL * sR * ni).shift_t() - s_index(mid, k - 1)
        if k == 1:
            continue
        # at i = k the pair (n_R', n_L) stands for n_L without its first entry
        rl = n[i + 1 :] + nL if i < k else nL[1:]
        nLn, nLpn = tuple(-y for y in nL), tuple(-y for y in nLp)
        rln = n[i + 1 :] + nLn if i < k else nLn[1:]
        ok &= tt == (s_index(nR + nL, k) * ni).shift_t() - s_index(nR + nLp, k - 1) - s_index(rl, k - 1)
        ok &= th == (-1) ** (i - 1) * (
            (s_index(nR + nLn, k) * ni).shift_t() + s_index(nR + nLpn, k - 1) - s_index(rln, k - 1)
        )
    return ok


def _cont_ts(rng, L, b):
    n = _n(rng, min(L, 3), b)
    k = len(n)
    j = rng.randint(1, 2)
    ms = [_nz(rng, b) for _ in range(2 * j + 1)]
    r = n[::-1]
    S = s_poly
    ok = True
    # (i): T~ factors of (n, m_1, n, ..., m_j, n)
    seq = ()
    for mm in ms[:j]:
        seq += n + (mm,)
    ok &= S(seq + n) == S(n) * K([vTtt_polys(n + (mm,))[2] for mm in ms[:j]])
    # (ii)/(iii): T factors, alternating n and reversed n
    for cnt, tail in ((2 * j, n), (2 * j + 1, r)):
        seq, fs = (), []
        for idx, mm in enumerate(ms[:cnt]):
            cc = n if idx % 2 == 0 else r
            seq += cc + (mm,)
            fs.append(vTtt_polys(cc + (mm,))[1])
        ok &= S(seq + tail) == S(n) * K(fs)
    # (iv)/(v): T^ factors, alternating n and -n
    neg = tuple(-y for y in n)
    for cnt, tail in ((2 * j, n), (2 * j - 1, neg)):
        seq, fs = (), []
        for idx, mm in enumerate(ms[:cnt]):
            seq += (n if idx % 2 == 0 else neg) + (mm,)
            fs.append(vTtt_polys((n if idx % 2 == 0 else r) + (mm,))[3])
        ok &= S(seq + tail) == (-1) ** (j * k) * S(n) * K(fs)
    return ok


# ---------------------------------------------------------------------------
# matrix and continued-fraction statements
# ---------------------------------------------------------------------------


def _rand_lambda(rng, b):
    kind = rng.random()
    if kind < 0.5:
        return as_quad(Fraction(_nz(rng, 4 * b), rng.randint(1, b)))
    d = rng.choice([-3, -1, 2, 5, -7])
    return QuadNum(Fraction(rng.randint(-b, b), rng.randint(1, 3)), Fraction(_nz(rng, b), rng.randint(1, 3)), d)


def _w_eq(rng, L, b):
    from .witness import weq_check, even_lemma_check

    m = rng.randint(1, max(L // 2, 1))
    n = tuple(rng.randint(-b, b) for _ in range(2 * m))
    lam = _rand_lambda(rng, b)
    return weq_check(n, lam) and even_lemma_check(n, lam)


def _lambdas_from_roots(p: IntPoly) -> list:
    """``lam = -t^2`` for the nonzero roots of ``p`` when ``p / t^j`` is even of degree <= 4."""
    c = list(p.coeffs)
    while c and c[0] == 0:
        c.pop(0)
    q = IntPoly(c)
    if not q.is_even() or q.degree not in (2, 4):
        return []
    e = [q.coeffs[i] for i in range(0, q.degree + 1, 2)]
    if len(e) == 2:
        return [as_quad(Fraction(e[0], e[1]))]
    c0, c1, c2 = e
    disc = c1 * c1 - 4 * c2 * c0
    out = []
    for sgn in (1, -1):
        # x = t^2 root of c2 x^2 + c1 x + c0; lam = -x
        x = (QuadNum(Fraction(-c1), Fraction(sgn), disc) if disc else as_quad(-c1)) / (2 * c2)
        if x:
            out.append(-x)
    return out


def _t_roots(rng, L, b):
    from .witness import t_lemma_check

    k = rng.choice([3, 5]) if rng.random() < 0.7 else rng.choice([2, 4])
    n = tuple(_seq(rng, k, b))
    _, _, tt, th = vTtt_polys(n)
    cands = _lambdas_from_roots(tt) + _lambdas_from_roots(th) + [_rand_lambda(rng, b)]
    ok = True
    for lam in cands:
        if not lam:
            continue
        ok &= t_lemma_check(n, lam)["ok"]
    return ok


def _wcf_cheby(rng, L, b):
    n = _n(rng, L, b)
    lam = _rand_lambda(rng, b)
    return wcf_ratio_check(n, lam)


CHECKS: dict[str, Callable] = {
    "euler_identity": _euler,
    "euler_corollary": _ei_cor,
    "continuant_alternating_even": _alt_even,
    "continuant_alternating_odd": _alt_odd,
    "continuant_reversal": _reversal,
    "continuant_negation": _negation,
    "kplus_to_k_x_even": _kk_i,
    "kplus_to_k_x_odd": _kk_ii,
    "mobius_product_entries": _kn,
    "mirror_with_middle": _ei1_i,
    "mirror_joined": _ei1_ii,
    "p_q_w_factorisation": _p_q,
    "block_factorisation_i": _cf_i,
    "block_factorisation_ii": _cf_ii,
    "block_factorisation_iii": _cf_iii,
    "s_as_continuant": _sv,
    "s_mirror_factors": _fcp,
    "s_split_at_entry": _split,
    "t_equals_two_s": _ts,
    "s_sign_symmetries": _ncheby1,
    "s_block_factors": _cont_ts,
    "word_matrix_entries": _w_eq,
    "t_root_biconditionals": _t_roots,
    "wcf_as_s_ratio": _wcf_cheby,
}


def _trial_seed(seed: int, name: str, i: int) -> int:
    return (seed * 1_000_003 + sum(map(ord, name)) * 7919 + i) & 0xFFFFFFFF


def run_check(name: str, trial_seed: int, max_len: int = 5, coeff_bound: int = 5) -> bool:
    """Replay one trial."""
    rng = random.Random(trial_seed)
    return bool(CHECKS[name](rng, max_len, coeff_bound))


def run_suite(trials: int = 200, max_len: int = 5, coeff_bound: int = 5, seed: int = 0, names=None) -> dict:
    """Run every identity ``trials`` times; failures are recorded with their trial seeds."""
    if trials < 1:
        raise ValueError("trials >= 1")
    t0 = time.monotonic()
    report = {"seed": seed, "trials": trials, "max_len": max_len, "coeff_bound": coeff_bound, "results": {}}
    for name in names or CHECKS:
        fails = []
        for i in range(trials):
            ts = _trial_seed(seed, name, i)
            try:
                ok = run_check(name, ts, max_len, coeff_bound)
            except Exception as exc:  # noqa: BLE001 - any error is a failed trial
                ok = False
                fails.append({"seed": ts, "error": repr(exc)})
                continue
            if not ok:
                fails.append({"seed": ts})
        report["results"][name] = {"trials": trials, "failures": fails}
    report["elapsed"] = time.monotonic() - t0
    report["ok"] = all(not r["failures"] for r in report["results"].values())
    return report
