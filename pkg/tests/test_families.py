import re
from fractions import Fraction

import pytest

from relnum.chebyshev import eval_s_at_u
from relnum.decide import verify_witness
from relnum.families import KINDS, ConditionViolated, family_generate, family_sweep, scale_witness
from relnum.witness import relation_word

F = Fraction


def test_one_step_example():
    fw = family_generate("one_step", a=2, b=2, c=1)
    assert fw.lam == 1 and verify_witness(1, fw.sequence).ok


def test_two_step_three():
    fw = family_generate("two_step_i", r=1, s=1, t=1)
    assert fw.lam == 3 and len(fw.sequence) == 5
    assert not eval_s_at_u(fw.sequence, 3)


@pytest.mark.parametrize("r", [1, 2, 3, 5, -4])
def test_three_over_r(r):
    base = family_generate("two_step_i", r=1, s=1, t=1).sequence
    w = scale_witness(base, r)
    assert verify_witness(F(3, r), w).ok


def test_scale_needs_odd_length():
    with pytest.raises(ValueError):
        scale_witness((1, 2), 3)


def test_second_form():
    fw = family_generate("two_step_i", r=1, s=2, t=3, v=1)
    assert fw.lam == F(1 * 2 + 3, 1 * 2 * 3 + 2 * 3)
    assert verify_witness(fw.lam, fw.sequence).ok


def test_corollary():
    fw = family_generate("two_step_cor", r=2, s=3, t=1)
    assert fw.lam == F(1, 2) + F(1, 6) + F(1, 6)


def test_three_step_found_in_box():
    found = list(family_sweep("three_step", 4))
    assert found
    for fw in found:
        assert len(fw.sequence) == 7 and verify_witness(fw.lam, fw.sequence).ok


@pytest.mark.parametrize(
    "kind, params, msg",
    [
        ("one_step", dict(a=1, b=-1, c=1), "a + b"),
        ("one_step", dict(a=0, b=1, c=1), "nonzero"),
        ("two_step_ii", dict(r=1, s=1, t=1, w=2), "w | r s"),
        ("two_step_iii", dict(r=1, s=1, t=1, v=1, w=1), "r v + t v + t w"),
        ("three_step", dict(r=1, s=1, t=1, v=1, w=2), "r s t = v w"),
    ],
)
def test_condition_violations(kind, params, msg):
    with pytest.raises(ConditionViolated, match=re.escape(msg)):
        family_generate(kind, **params)


def test_bad_kind_and_params():
    with pytest.raises(ValueError):
        family_generate("four_step", r=1)
    with pytest.raises(TypeError):
        family_generate("one_step", a=1, b=1)


@pytest.mark.parametrize("kind", [k for k in KINDS if k != "two_step_i_b"])
def test_sweep_values_inside_interval(kind):
    bound = 3
    for fw in family_sweep(kind, bound):
        assert -4 < fw.lam < 4


def test_sample_relation_words():
    for fw in list(family_sweep("two_step_ii", 2))[:20]:
        assert relation_word(fw.sequence, fw.lam).verified
