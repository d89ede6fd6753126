import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from relnum.numeric import (
    INF,
    FieldMismatch,
    NegativeRadicand,
    NotRealField,
    NotWellDefined,
    ParseError,
    QuadNum,
    cmp_real,
    floor_ceil_real,
    nonzero_neighbors,
    parse_lambda,
    proj_inv_add,
    rational_sqrt_enclosure,
    round_away,
    sqrt_in_field,
)

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=30)
ds = st.sampled_from([-7, -3, -1, 2, 3, 5, 13])


def quads(d):
    return st.builds(lambda a, b: QuadNum(a, b, d), fracs, fracs)


def _mp(x: QuadNum):
    mpmath.mp.dps = 60
    return mpmath.mpf(x.a.numerator) / x.a.denominator + mpmath.mpf(x.b.numerator) / x.b.denominator * mpmath.sqrt(
        x.d
    )


def test_field_examples():
    w = QuadNum(Fraction(1, 2), Fraction(1, 2), -3)
    assert w + w.conjugate() == 1
    i = QuadNum(0, 1, -1)
    assert i * i == -1
    assert QuadNum(Fraction(2, 3)) / QuadNum(Fraction(1, 3)) == 2


def test_squarefree_normalisation():
    assert QuadNum(0, 1, 8) == QuadNum(0, 2, 2)
    assert QuadNum(1, 1, 4) == 3
    assert QuadNum(0, 1, -4) == QuadNum(0, 2, -1)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        QuadNum(0, 1, 2) + QuadNum(0, 1, 3)


@given(ds.flatmap(lambda d: st.tuples(quads(d), quads(d), quads(d))))
def test_field_axioms(xyz):
    x, y, z = xyz
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - x == 0
    if x:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@given(ds.flatmap(lambda d: quads(d)))
def test_mul_matches_mpmath(x):
    mpmath.mp.dps = 60
    if x.d > 0:
        assert abs(_mp(x * x) - _mp(x) ** 2) < mpmath.mpf(10) ** -40
    else:
        z = complex(x)
        assert abs(complex(x * x) - z * z) < 1e-6 * (1 + abs(z) ** 2)


def test_cmp_real_examples():
    assert cmp_real(QuadNum(1, 1, 2), Fraction(5, 2)) == -1
    assert cmp_real(0, 0) == 0
    assert cmp_real(Fraction(8, 19), Fraction(8, 27)) == 1
    with pytest.raises(NotRealField):
        cmp_real(QuadNum(0, 1, -1), 0)


@given(st.sampled_from([2, 3, 5, 13]).flatmap(lambda d: st.tuples(quads(d), quads(d))))
def test_cmp_real_matches_high_precision(xy):
    x, y = xy
    c = cmp_real(x, y)
    diff = _mp(x) - _mp(y)
    if x == y:
        assert c == 0
    else:
        assert c == (1 if diff > 0 else -1)


def test_floor_ceil_and_neighbors():
    assert floor_ceil_real(Fraction(7, 2)) == (3, 4)
    assert floor_ceil_real(QuadNum(0, 1, 2)) == (1, 2)
    assert floor_ceil_real(-13) == (-13, -13)
    assert nonzero_neighbors(Fraction(1, 3)) == (-1, 1)
    assert nonzero_neighbors(Fraction(7, 2)) == (3, 4)
    assert nonzero_neighbors(Fraction(-5, 4)) == (-2, -1)


@given(st.sampled_from([2, 3, 5, 7]).flatmap(quads))
def test_floor_matches_mpmath(x):
    lo, hi = floor_ceil_real(x)
    assert lo == int(mpmath.floor(_mp(x)))
    assert hi == (lo if x.is_integer() else lo + 1)


def test_round_away():
    assert round_away(Fraction(5, 2)) == 3
    assert round_away(Fraction(-5, 2)) == -3
    assert round_away(Fraction(-7, 3)) == -2
    assert round_away(0) == 0
    assert round_away(QuadNum(0, 1, 2)) == 1


def test_rational_sqrt_enclosure():
    assert rational_sqrt_enclosure(4, Fraction(1, 10)) == (2, 2)
    lo, hi = rational_sqrt_enclosure(2, Fraction(1, 100))
    assert lo * lo <= 2 <= hi * hi and hi - lo <= Fraction(1, 100)
    assert rational_sqrt_enclosure(0, 1) == (0, 0)
    with pytest.raises(NegativeRadicand):
        rational_sqrt_enclosure(-1, 1)


@given(st.fractions(min_value=0, max_value=1000, max_denominator=97), st.integers(1, 60))
def test_sqrt_enclosure_property(r, bits):
    eps = Fraction(1, 2**bits)
    lo, hi = rational_sqrt_enclosure(r, eps)
    assert lo * lo <= r <= hi * hi
    assert 0 <= hi - lo <= eps


def test_sqrt_in_field():
    assert sqrt_in_field(QuadNum(3, 2, 2)) == QuadNum(1, 1, 2)
    assert sqrt_in_field(QuadNum(2)) is None
    r = sqrt_in_field(QuadNum(-1, 0, -1))
    assert r is not None and r * r == -1


def test_proj_inv_add():
    inv = QuadNum(Fraction(8, 27))
    assert proj_inv_add(QuadNum(0), 1, inv) == Fraction(8, 27)
    assert proj_inv_add(QuadNum(-1), 1, inv) is INF
    assert proj_inv_add(QuadNum(5), INF, inv) == 0
    assert proj_inv_add(INF, 3, inv) == 0
    with pytest.raises(NotWellDefined):
        proj_inv_add(INF, INF, inv)


@pytest.mark.parametrize(
    "text, value",
    [
        ("27/8", QuadNum(Fraction(27, 8))),
        ("-3", QuadNum(-3)),
        ("sqrt(-1)", QuadNum(0, 1, -1)),
        ("1/2+1/2*sqrt(-3)", QuadNum(Fraction(1, 2), Fraction(1, 2), -3)),
        ("1/2 - 1/2*sqrt(-1)", QuadNum(Fraction(1, 2), Fraction(-1, 2), -1)),
    ],
)
def test_parse_lambda(text, value):
    assert parse_lambda(text) == value


@pytest.mark.parametrize("text", ["", "abc", "1/0", "1//2", "sqrt(2)3", "2*sqrt"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_lambda(text)


@given(ds.flatmap(quads))
def test_str_roundtrip(x):
    assert parse_lambda(str(x)) == x


def test_float_conversion():
    assert math.isclose(float(QuadNum(1, 1, 2)), 1 + math.sqrt(2))


@pytest.mark.parametrize(
    "text, want",
    [
        ("(1+sqrt(-3))/2", QuadNum(Fraction(1, 2), Fraction(1, 2), -3)),
        ("(1 - sqrt(-3)) / 2", QuadNum(Fraction(1, 2), Fraction(-1, 2), -3)),
        ("-(1+sqrt(-1))/2", QuadNum(Fraction(-1, 2), Fraction(-1, 2), -1)),
        ("(27/8)", QuadNum(Fraction(27, 8))),
    ],
)
def test_parse_grouped(text, want):
    assert parse_lambda(text) == want


def test_parse_grouped_zero_denominator():
    with pytest.raises(ParseError):
        parse_lambda("(1+sqrt(5))/0")


def test_abs_real_only():
    assert abs(QuadNum(1, -1, 2)) == QuadNum(-1, 1, 2)
    assert abs(QuadNum(Fraction(-3, 4))) == Fraction(3, 4)
    with pytest.raises(TypeError):
        abs(QuadNum(0, 1, -1))
