import json
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import max_abs_wcf, s_value_rational, wcf_rational
from relnum.decide import (
    FREE,
    RELATION,
    UNKNOWN,
    DecisionReport,
    GreedyParams,
    ZeroLambda,
    complex_candidates,
    decide,
    delta_fn,
    exhaustive_decide_complex,
    exhaustive_decide_real,
    free_region_precheck,
    greedy_find,
    mindeg_lower_bound,
    mk_table,
    verify_witness,
)
from relnum.families import family_sweep
from relnum.numeric import INF, QuadNum

F = Fraction


def test_precheck_examples():
    assert free_region_precheck(5) == "free"
    assert free_region_precheck(-4) == "free"
    assert free_region_precheck(F(27, 8)) == "undetermined"
    assert free_region_precheck(QuadNum(2, 2, -1)) == "free"
    with pytest.raises(ZeroLambda):
        free_region_precheck(0)


KNOWN_RELATION = [F(p, 13) for p in range(1, 38) if p not in (13, 26)] + [F(1), F(2), F(3), F(-3)]


@pytest.mark.parametrize("lam", KNOWN_RELATION)
def test_precheck_never_frees_a_relation_number(lam):
    assert free_region_precheck(lam) == "undetermined"


def test_precheck_sound_on_families():
    for kind in ("one_step", "two_step_ii"):
        for fw in family_sweep(kind, 3):
            assert free_region_precheck(fw.lam) == "undetermined"


@pytest.mark.parametrize(
    "lam", [QuadNum(0, 1, -1), QuadNum(F(1, 2), F(1, 2), -3), QuadNum(F(1, 2), F(-1, 2), -3), QuadNum(F(1, 2), F(1, 2), -1)]
)
def test_precheck_keeps_complex_relation_numbers(lam):
    assert free_region_precheck(lam) == "undetermined"


def _lower_bound_oracle(lam: Fraction, cap=60) -> int:
    mpmath.mp.dps = 80
    a = abs(lam)
    exact = {1: 0, 2: 1, 3: 2, 5: 3}  # 4cos^2(pi/(n+1)) rational values
    best = 1
    for n in range(1, cap):
        thr = exact.get(n)
        if thr is not None:
            ok = a >= thr
        else:
            ok = mpmath.mpf(a.numerator) / a.denominator >= 4 * mpmath.cos(mpmath.pi / (n + 1)) ** 2
        if ok:
            best = n
    return best


def test_lower_bound_examples():
    assert mindeg_lower_bound(3) == 5
    assert mindeg_lower_bound(F(1, 13)) == 1
    assert mindeg_lower_bound(F(27, 8)) >= 5
    assert mindeg_lower_bound(-3) == 5
    assert mindeg_lower_bound(5) == 10_000


@settings(max_examples=60)
@given(st.fractions(min_value=F(1, 40), max_value=F(159, 40), max_denominator=40))
def test_lower_bound_matches_cosines(lam):
    assert mindeg_lower_bound(lam) == _lower_bound_oracle(lam)


@pytest.mark.parametrize("lam, deg", [(F(1, 13), 2), (F(2, 13), 3), (F(3), 5), (F(-2, 13), 3), (F(1, 2), 2), (F(-3), 5)])
def test_exhaustive_small(lam, deg):
    rep = exhaustive_decide_real(lam, k_max=10)
    assert rep.verdict == RELATION and rep.mindeg == deg
    assert len(rep.witness) == deg
    assert s_value_rational(rep.witness, lam) == (0, 0)
    assert verify_witness(lam, rep.witness).ok


def test_lambda_four_never_resolves():
    rep = exhaustive_decide_real(4, k_max=20)
    assert rep.verdict == UNKNOWN
    assert rep.ladder.values() == [F(k, 2 * k + 2) for k in range(1, 21)]
    assert decide(4, k_max=20).verdict == FREE
    assert decide(4, k_max=20, precheck=False).verdict == UNKNOWN


def test_ladder_matches_brute_force():
    # while every M_j < 1, the search box has |n_i| < M + M + 2 < 4
    lam = F(27, 8)
    ladder = mk_table(lam, 6)
    for k in range(1, 6):
        best, _ = max_abs_wcf(lam, k, 4)
        assert ladder.values()[k - 1] == best


@pytest.mark.parametrize("lam", [F(5, 13), F(16, 17), F(7, 3)])
def test_ladder_monotone_and_attained(lam):
    ladder = mk_table(lam, 4)
    vals = [v for v in ladder.values() if v is not INF]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    for e in ladder.entries:
        ref = wcf_rational(e.sequence, lam)
        if e.value is INF:
            assert ref is None
        else:
            assert abs(ref) == e.value


def test_mk_table_errors():
    with pytest.raises(ValueError):
        mk_table(-1, 3)
    with pytest.raises(ValueError):
        mk_table(QuadNum(0, 1, -1), 3)


def test_threads_agree():
    a = exhaustive_decide_real(F(5, 13), k_max=6, threads=1)
    b = exhaustive_decide_real(F(5, 13), k_max=6, threads=2)
    assert a.mindeg == b.mindeg
    assert a.ladder.values() == b.ladder.values()


def test_timeout_gives_unknown():
    rep = exhaustive_decide_real(F(51, 13), k_max=40, timeout=2)
    assert rep.verdict == UNKNOWN
    assert rep.mindeg_lo >= 2 and rep.witness is None


def test_report_json_roundtrip():
    rep = decide(F(5, 13))
    text = json.dumps(rep.to_dict())
    back = DecisionReport.from_dict(json.loads(text))
    assert back.to_dict() == rep.to_dict()
    rep = decide(QuadNum(0, 1, -1))
    back = DecisionReport.from_dict(json.loads(json.dumps(rep.to_dict())))
    assert back.to_dict() == rep.to_dict()


def test_complex_examples():
    rep = exhaustive_decide_complex(QuadNum(0, 1, -1))
    assert rep.mindeg == 5 and verify_witness(QuadNum(0, 1, -1), rep.witness).ok
    assert verify_witness(QuadNum(0, 1, -1), (1, 1, -1, -1, 1)).ok
    assert verify_witness(QuadNum(F(1, 2), F(1, 2), -1), (1, -1, -2, 1)).ok
    assert verify_witness(QuadNum(F(1, 2), F(1, 2), -3), (-1, 1, 1, -1)).ok


def test_delta_zero():
    d = QuadNum(F(1, 3), F(2, 5), -1)
    assert delta_fn(d, F(0), (F(1), F(1)), F(1, 1000)) == 0


def test_complex_candidates_inf_branch():
    cands, with_inf = complex_candidates(QuadNum(F(1, 2), 0, -1), INF, F(1), (F(1), F(1)), F(1, 1000))
    assert with_inf and cands and 0 not in cands


@pytest.mark.parametrize(
    "lam, params",
    [(F(1, 13), GreedyParams(5, 13, 30)), (F(25, 13), GreedyParams(5, 13, 30)), (F(42, 13), GreedyParams(6, 13, 20))],
)
def test_greedy_examples(lam, params):
    w = greedy_find(lam, params, timeout=300)
    assert w is not None
    assert verify_witness(lam, w).ok


def test_greedy_negative_and_params():
    w = greedy_find(F(-7, 13))
    assert w is not None and verify_witness(F(-7, 13), w).ok
    assert GreedyParams.default_for(F(9, 22)).W == 22
    with pytest.raises(ValueError):
        GreedyParams(0, 13, 30)
    with pytest.raises(ValueError):
        GreedyParams(5, 0, 30)


def test_verify_examples():
    assert verify_witness(F(1, 13), (-13, 1)).ok
    assert verify_witness(F(2, 13), (13, -7, 1)).ok
    bad = verify_witness(F(1, 13), (1, 2, 3))
    assert not bad.s_zero and not bad.wcf_infinite and not bad.root_conditions and bad.word_identity is False
    # zeros are reduced first: (13, 0, 0, -7, 1) has the same s as (13, -7, 1)
    assert verify_witness(F(2, 13), (13, 0, 0, -7, 1)).ok


@settings(max_examples=40)
@given(st.lists(st.integers(-6, 6).filter(bool), min_size=1, max_size=5), st.fractions(min_value=-4, max_value=4, max_denominator=15).filter(bool))
def test_verify_agrees_with_oracle(n, lam):
    assert verify_witness(lam, n, word=False).ok == (s_value_rational(n, lam) == (0, 0))
