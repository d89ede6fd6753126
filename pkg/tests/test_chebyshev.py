from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import coeffs, s_sym, s_value_rational, t
from relnum.chebyshev import (
    AlgElem,
    IntPoly,
    classical_factor_check,
    eval_s_at_u,
    eval_s_trace,
    flip_signs,
    jang_kim_poly,
    reduce_zero_entries,
    rotate_quarter,
    s_index,
    s_poly,
    ts_identity_check,
    vTtt_polys,
)
from relnum.numeric import QuadNum

ints = st.integers(-9, 9)
nz = ints.filter(bool)
seqs = st.lists(nz, min_size=1, max_size=7).map(tuple)
zseqs = st.lists(ints, min_size=1, max_size=7).map(tuple)
lams = st.fractions(min_value=-5, max_value=5, max_denominator=20).filter(bool)


def test_s_poly_examples():
    assert s_poly((2, 3)).coeffs == (-1, 0, 6)
    assert s_poly(()).coeffs == (1,)
    assert s_index((1, 2), -1).coeffs == (-1,)
    assert s_index((1, 2), 0).coeffs == ()


@pytest.mark.parametrize("k", range(1, 9))
def test_all_ones_is_u_k_half(k):
    # s^{(1,...,1)}_{k+1}(t) = U_k(t/2); the comparison is done with sympy's U_k
    u = sp.expand(sp.chebyshevu(k, t / 2))
    assert list(s_poly((1,) * k).coeffs) == coeffs(u)


@given(zseqs)
def test_s_poly_matches_recursion_oracle(n):
    assert list(s_poly(n).coeffs) == coeffs(s_sym(n))


def test_vttt_examples():
    assert vTtt_polys((1, -1, -1, -1))[2].coeffs == (2, 0, 0, 0, -1)
    assert vTtt_polys((1, 1, -1, -1))[2].coeffs == (2, 0, 0, 0, 1)
    v, tee, tt, th = vTtt_polys((1,))
    assert v.coeffs == (-1, 1)
    assert tee.coeffs == tt.coeffs == th.coeffs == (0, 1)


@given(seqs)
def test_vttt_definitions(n):
    k = len(n)
    sig = n[1:]
    top = s_sym(n)
    v, tee, tt, th = vTtt_polys(n)
    assert list(v.coeffs) == coeffs(top - s_sym(sig, k))
    assert list(tee.coeffs) == coeffs(top - (s_sym(n, k - 1) if k >= 1 else -1))
    lower = s_sym(sig, k - 1) if k >= 1 else -1
    assert list(tt.coeffs) == coeffs(top - lower)
    assert list(th.coeffs) == coeffs(top + lower)


def test_eval_s_examples():
    assert not eval_s_at_u((-13, 1), Fraction(1, 13))
    assert not eval_s_at_u((1, -1, 1, -1, 1), 3)
    assert eval_s_at_u((1,), Fraction(5, 7)) == AlgElem(0, 1, Fraction(5, 7))
    tr = eval_s_trace((1, -1, 1, -1, 1), 3)
    u = AlgElem.u(3)
    assert tr == [AlgElem(0, 0, 3), AlgElem(1, 0, 3), u, AlgElem(2, 0, 3), u, AlgElem(1, 0, 3), AlgElem(0, 0, 3)]


@given(zseqs, lams)
def test_eval_s_matches_fraction_oracle(n, lam):
    val = eval_s_at_u(n, lam)
    a, b = s_value_rational(n, lam)
    assert val.a == a and val.b == b


@given(seqs, st.sampled_from([QuadNum(0, 1, -1), QuadNum(Fraction(1, 2), Fraction(1, 2), -3), QuadNum(1, 1, 2)]))
def test_eval_s_at_u_matches_polynomial(n, lam):
    p = s_poly(n)
    assert eval_s_at_u(n, lam) == p(AlgElem.u(lam))


def test_reduce_zero_examples():
    assert reduce_zero_entries((0, 5, 2, 7)) == ((2, 7), -1)
    assert reduce_zero_entries((3, 0, 4, 2)) == ((7, 2), -1)
    assert reduce_zero_entries((1, 2, 3)) == ((1, 2, 3), 1)
    assert reduce_zero_entries((0,)) == ((), 0)


@given(zseqs)
def test_reduce_zero_preserves_s(n):
    m, sign = reduce_zero_entries(n)
    assert 0 not in m
    assert s_poly(n) == s_poly(m) * sign


def test_flip_examples():
    assert flip_signs((2, 1, 2), "alternate") == (-2, 1, -2)
    assert flip_signs((1, 2), "all") == (-1, -2)
    assert flip_signs((), "all") == () and flip_signs((), "alternate") == ()
    with pytest.raises(ValueError):
        flip_signs((1,), "sideways")


@given(seqs, lams)
def test_alternate_flip_negates_lambda(n, lam):
    zero = not eval_s_at_u(n, lam)
    assert zero == (not eval_s_at_u(flip_signs(n, "alternate"), -lam))
    assert zero == (not eval_s_at_u(flip_signs(n, "all"), lam))


def test_flip_witness_one_step():
    # (2,1,2) is a witness for -1; the alternate flip gives one for +1
    assert not eval_s_at_u((2, 1, 2), -1)
    assert not eval_s_at_u((-2, 1, -2), 1)


@pytest.mark.parametrize("k", range(1, 7))
def test_classical_factor_check(k):
    rep = classical_factor_check(k)
    assert all(rep.values()), rep


def test_classical_small_cases():
    # s_3^{(1,-1)} = -t^2 - 1, linear in x = -t^2
    assert s_poly((1, -1)).coeffs == (-1, 0, -1)
    # s_5^{(1,-1,1,-1)} = x^2 - 3x + 1 with x = -t^2, the all-ones U_4 under t -> i t
    assert s_poly((1, -1, 1, -1)).coeffs == (1, 0, 3, 0, 1)
    assert rotate_quarter(s_poly((1, 1, 1, 1))) == s_poly((1, -1, 1, -1))


def test_jang_kim_small():
    # the single root of p_1 is 4cos^2(pi/6) = 3
    p = jang_kim_poly(1)
    assert p(3) == 0


@pytest.mark.parametrize("n", [(3,), (1, 2), (2, -1, 4)])
def test_ts_identity_examples(n):
    assert ts_identity_check(n)


@given(seqs)
def test_ts_identity(n):
    assert ts_identity_check(n)


def test_intpoly_ops():
    p = IntPoly((1, 2, 3))
    assert p.pretty() == "3t^2 + 2t + 1"
    assert IntPoly.parse(str(p)) == p
    assert p.neg_t() == IntPoly((1, -2, 3))
    assert (p * p)(2) == p(2) ** 2
    assert IntPoly((0, 0, 5)).div_t() == IntPoly((0, 5))
    with pytest.raises(ValueError):
        rotate_quarter(IntPoly((1, 1)))


@settings(max_examples=50)
@given(st.lists(ints, max_size=6), st.lists(ints, max_size=6), st.integers(-5, 5))
def test_intpoly_ring(a, b, x):
    p, q = IntPoly(a), IntPoly(b)
    assert (p + q)(x) == p(x) + q(x)
    assert (p * q)(x) == p(x) * q(x)
    assert (p - q)(x) == p(x) - q(x)
