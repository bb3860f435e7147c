import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from diophlab.game.balls import Ball
from diophlab.polynomials import (
    MultiPolynomial,
    parse_polynomial,
    polynomial_range,
)

sys.path.insert(0, str(Path(__file__).parent))
from oracles import grid_sample_values  # noqa: E402


def test_parse_basic():
    f = parse_polynomial("z1^2*z2 - 3/4*z3 + 2")
    assert f.r == 3
    assert f.terms == {
        (2, 1, 0): Fraction(1),
        (0, 0, 1): Fraction(-3, 4),
        (0, 0, 0): Fraction(2),
    }


def test_parse_infers_variable_count():
    assert parse_polynomial("z2 - 1").r == 2
    assert parse_polynomial("z2 - 1", 4).r == 4


def test_parse_rejects_bad_text():
    for bad in ["", "z0", "z1 +", "w1 - 2", "z1^-1"]:
        with pytest.raises(ValueError):
            parse_polynomial(bad)


def test_str_parse_roundtrip():
    for text in ["z1^2 - 2", "z1*z2 - 1", "z1^3 - 2*z1 + 1", "-1/2*z2^2 + z1"]:
        f = parse_polynomial(text)
        assert parse_polynomial(str(f), f.r) == f


def test_evaluate():
    f = parse_polynomial("z1^2 + z2^2 - 1")
    assert f.evaluate([Fraction(3, 5), Fraction(4, 5)]) == 0
    assert f.evaluate([1, 1]) == 1


def test_gradient():
    f = parse_polynomial("z1^2*z2 - z2")
    gx, gy = f.gradient()
    assert gx == parse_polynomial("2*z1*z2", 2)
    assert gy == parse_polynomial("z1^2 - 1", 2)


def test_arithmetic_matches_parse():
    x = MultiPolynomial.variable(2, 0)
    y = MultiPolynomial.variable(2, 1)
    f = x * x - y * 2 + MultiPolynomial.constant(2, Fraction(1, 3))
    assert f == parse_polynomial("z1^2 - 2*z2 + 1/3")


def test_degree_and_zero():
    assert MultiPolynomial.zero(3).is_zero
    assert MultiPolynomial.zero(3).degree == 0
    assert parse_polynomial("z1*z2*z3 + z1").degree == 3


coef = st.fractions(min_value=-4, max_value=4, max_denominator=6)


@st.composite
def polys(draw, r=2, max_deg=3):
    n_terms = draw(st.integers(1, 5))
    terms = {}
    for _ in range(n_terms):
        exp = tuple(
            draw(st.integers(0, max_deg)) for _ in range(r)
        )
        terms[exp] = draw(coef)
    return MultiPolynomial(r, terms)


@settings(max_examples=60, deadline=None)
@given(polys(), st.fractions(min_value=-2, max_value=2, max_denominator=8),
       st.fractions(min_value=-2, max_value=2, max_denominator=8),
       st.sampled_from([Fraction(1, 4), Fraction(1, 2), Fraction(1)]))
def test_range_encloses_sampled_values(f, cx, cy, rho):
    ball = Ball((cx, cy), rho)
    res = polynomial_range(f, ball, 256)
    for v in grid_sample_values(f, (cx, cy), rho, steps=4):
        assert res.lo <= v <= res.hi


@settings(max_examples=40, deadline=None)
@given(polys(), st.sampled_from([Fraction(1, 2), Fraction(1)]))
def test_abs_lower_is_a_distance_floor(f, rho):
    """abs_lower > 0 certifies the zero set misses the ball, so every
    sampled value keeps that sign and magnitude."""
    ball = Ball((Fraction(0), Fraction(0)), rho)
    res = polynomial_range(f, ball, 256)
    if res.abs_lower > 0:
        for v in grid_sample_values(f, (0, 0), rho, steps=4):
            assert abs(v) >= res.abs_lower
            assert (v > 0) == (res.lo > 0)


def test_more_boxes_never_loosen():
    f = parse_polynomial("z1^2 + z2^2 - 2")
    ball = Ball((Fraction(1, 3), Fraction(1, 5)), Fraction(1, 2))
    coarse = polynomial_range(f, ball, 16)
    fine = polynomial_range(f, ball, 1024)
    assert coarse.lo <= fine.lo and fine.hi <= coarse.hi
    assert fine.abs_lower >= coarse.abs_lower


def test_straddling_and_abs_lower():
    f = parse_polynomial("z1", 1)
    # zero at -1/3 sits strictly inside dyadic boxes: strict straddle
    res = polynomial_range(f, Ball((Fraction(1, 3),), Fraction(1)), 64)
    assert res.straddling
    assert res.abs_lower == 0
    # zero exactly on a box boundary: no strict straddle but no margin either
    edge = polynomial_range(f, Ball((Fraction(0),), Fraction(1)), 64)
    assert edge.abs_lower == 0
    off = polynomial_range(f, Ball((Fraction(3),), Fraction(1)), 64)
    assert not off.straddling
    assert off.abs_lower > 0


def test_partials_of_orders():
    f = parse_polynomial("z1^3 + z1*z2")
    second = f.partials_of_orders(2, 2)
    # d2/dz1dz1 = 6 z1, d2/dz1dz2 = 1, d2/dz2dz2 = 0
    assert parse_polynomial("6*z1", 2) in second
    assert MultiPolynomial.constant(2, 1) in second
