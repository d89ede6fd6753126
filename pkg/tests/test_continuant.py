import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import coeffs, expr, t, tridiag_det
from relnum.chebyshev import T, IntPoly
from relnum.continuant import K, Kplus, Mat2, continuant_K, identity_suite, kn_matrix, mobius_product, qpw_polys, tridiagonal_det

ints = st.integers(-9, 9)
seqs = st.lists(ints, max_size=7)


def test_small_values():
    assert K(3, 5) == 14
    assert Kplus(3, 5) == 16
    assert K() == 1 and Kplus() == 1
    assert K([]) == 1
    with pytest.raises(ValueError):
        continuant_K((1,), "K3")


@given(seqs)
def test_k_matches_sympy_determinant(c):
    assert K(c) == tridiag_det(c)
    assert Kplus(c) == tridiag_det(c, plus=True)
    assert K(c) == tridiagonal_det(c) and Kplus(c) == tridiagonal_det(c, "Kplus")


def test_mobius_examples():
    assert mobius_product([7]) == Mat2(7, -1, 1, 0)
    assert mobius_product([2, 3]).m11 == K(2, 3)
    c = [random.Random(1).randint(-5, 5) for _ in range(5)]
    m = mobius_product(c, "Mplus")
    assert m.m11 == Kplus(c) and m.m12 == Kplus(c[:-1]) and m.m21 == Kplus(c[1:]) and m.m22 == Kplus(c[1:-1])


@given(seqs)
def test_mobius_entries(c):
    assert mobius_product(c) == kn_matrix(c)
    assert mobius_product(c, "Mplus") == kn_matrix(c, "Mplus")
    assert mobius_product(c).det() == 1


def test_polynomial_entries():
    c = [IntPoly((1, 2)), IntPoly((0, -1)), 3]
    assert list(K(c).coeffs) == coeffs(tridiag_det([1 + 2 * t, -t, 3]))


def test_qpw_small():
    q, p, w = qpw_polys((4,))
    assert q == 4 * T - 2 and p == 4 * T - 2 and w == 4 * T
    q, p, w = qpw_polys((2, 5))
    assert p == T * K(2, 5) - 2 - 5


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=4))
def test_qpw_factorisations(c):
    # the sympy side expands the long determinants directly
    kn = K(c)
    q, p, w = qpw_polys(c)
    neg = [-v for v in c]
    assert coeffs(tridiag_det(c + [t] + c)) == coeffs(kn * expr(p))
    assert coeffs(tridiag_det(c + [t] + c[::-1])) == coeffs(kn * expr(q))
    assert coeffs(tridiag_det(c + [t] + neg)) == coeffs((-1) ** len(c) * kn * expr(w))


def test_euler_instance():
    c = [3, -2, 5, 1]

    def sub(a, b):  # K(c_a..c_b), 1-based
        return 0 if b == a - 2 else K(c[a - 1 : b])

    i, j, k, l = 0, 2, 3, 5
    lhs = sub(i + 1, k - 1) * sub(j + 1, l - 1)
    rhs = sub(i + 1, j - 1) * sub(k + 1, l - 1) + sub(j + 1, k - 1) * sub(i + 1, l - 1)
    assert lhs == rhs


def test_kplus_k_base_case():
    # K+(c1, c2 x) with x = -t^2 equals -K(c1 t, c2 t)
    x = IntPoly((0, 0, -1))
    for c1, c2 in [(1, 2), (-3, 4), (5, 5)]:
        assert Kplus(c1, c2 * x) == -K(c1 * T, c2 * T)


def test_factor_cont_iv_instance():
    from relnum.chebyshev import s_poly, vTtt_polys

    n = (1, 2)
    v = vTtt_polys(n)[0]
    assert s_poly((2, 1, 1, 2)) == v * v.neg_t() * (-1) ** 2


def test_identity_suite_runs():
    rep = identity_suite(trials=5, seed=3)
    assert rep["ok"] and rep["trials"] == 5
