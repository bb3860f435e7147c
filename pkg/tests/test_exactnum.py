from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from diophlab.exactnum import (
    ExactScalar,
    InvalidRadicandError,
    MixedRadicandError,
    rat,
    sqrt_of,
)

rationals = st.fractions(
    min_value=-50, max_value=50, max_denominator=40
)
radicands = st.sampled_from([2, 3, 5, 6, 7, 10, 11, 13])


def test_parse_forms():
    assert ExactScalar.parse("3/4") == rat(3, 4)
    assert ExactScalar.parse("-7") == rat(-7)
    assert ExactScalar.parse("1+2*sqrt(5)") == ExactScalar(1, 2, 5)
    assert ExactScalar.parse("1-2/3*sqrt(7)") == ExactScalar(1, Fraction(-2, 3), 7)
    assert ExactScalar.parse("sqrt(2)") == sqrt_of(2)
    assert ExactScalar.parse("-sqrt(2)") == sqrt_of(2, -1)


def test_parse_rejects_garbage():
    for bad in ["", "1.5", "x", "sqrt(-2)", "1+sqrt(2)+sqrt(3)"]:
        with pytest.raises(ValueError):
            ExactScalar.parse(bad)


def test_radicand_must_be_squarefree():
    with pytest.raises(InvalidRadicandError):
        ExactScalar(0, 1, 4)
    with pytest.raises(InvalidRadicandError):
        ExactScalar(0, 1, 12)
    with pytest.raises(InvalidRadicandError):
        ExactScalar(0, 1, 1)


def test_mixed_radicands_refuse_to_combine():
    a = sqrt_of(2)
    b = sqrt_of(3)
    with pytest.raises(MixedRadicandError):
        a + b
    with pytest.raises(MixedRadicandError):
        a * b


def test_zero_coefficient_collapses_to_rational():
    v = ExactScalar(Fraction(5, 2), 0, 7)
    assert v.is_rational
    assert v.to_fraction() == Fraction(5, 2)


def test_square_of_sqrt_is_rational():
    v = sqrt_of(5)
    assert (v * v).is_rational
    assert (v * v).to_fraction() == 5


def test_golden_ratio_identity():
    # phi^2 = phi + 1
    phi = ExactScalar(Fraction(1, 2), Fraction(1, 2), 5)
    assert phi * phi == phi + rat(1)


@given(rationals, rationals, radicands)
def test_dyadic_bounds_bracket_value(a, b, D):
    v = ExactScalar(a, b, D)
    lo, hi = v.dyadic_bounds(80)
    assert lo <= hi
    assert hi - lo <= Fraction(1, 2**78)
    # check against a much finer enclosure
    flo, fhi = v.dyadic_bounds(200)
    assert lo <= flo and fhi <= hi


@given(rationals, rationals, radicands)
def test_sign_matches_bounds(a, b, D):
    v = ExactScalar(a, b, D)
    s = v.sign()
    lo, hi = v.dyadic_bounds(120)
    if s > 0:
        assert hi > 0
    elif s < 0:
        assert lo < 0
    else:
        assert v == rat(0)


@given(rationals, rationals, rationals, rationals, radicands)
def test_field_arithmetic(a, b, c, d, D):
    u = ExactScalar(a, b, D)
    v = ExactScalar(c, d, D)
    assert u + v == ExactScalar(a + c, b + d, D)
    assert u - v == ExactScalar(a - c, b - d, D)
    # (a+b s)(c+d s) = ac + bdD + (ad+bc) s
    assert u * v == ExactScalar(a * c + b * d * D, a * d + b * c, D)
    # conjugate product is rational
    conj = ExactScalar(a, -b, D)
    assert (u * conj).is_rational
    assert (u * conj).to_fraction() == a * a - b * b * D


@given(rationals, rationals, radicands)
def test_division_inverts_multiplication(a, b, D):
    v = ExactScalar(a, b, D)
    if v == rat(0):
        return
    w = rat(1) / v
    assert v * w == rat(1)


def test_comparisons_are_exact():
    # sqrt(2) + sqrt(2) vs 2*sqrt(2) and near-miss rationals
    assert sqrt_of(2) + sqrt_of(2) == sqrt_of(2, 2)
    assert sqrt_of(2) > rat(141421356, 100000000)
    assert sqrt_of(2) < rat(141421357, 100000000)


def test_parse_roundtrip_via_str():
    for text in ["3/4", "-7", "1+2*sqrt(5)", "1-2/3*sqrt(7)"]:
        v = ExactScalar.parse(text)
        assert ExactScalar.parse(str(v)) == v
