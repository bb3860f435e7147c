"""Closed-form exponent bound constants and their root enclosures.

The enclosure values are cross-checked against sympy's real-root
isolation, which shares nothing with the bisection here.
"""

import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from diophlab.bounds import (
    bound_constants,
    feasible_uniform_exponent,
    g_root,
)
from diophlab.errors import DiophlabError

sys.path.insert(0, str(Path(__file__).parent))
from oracles import sympy_real_root  # noqa: E402


def test_ordinary_constant_is_ratio():
    assert bound_constants(2, 4).ordinary == 1
    assert bound_constants(1, 3).ordinary == Fraction(1, 2)
    assert bound_constants(3, 5).ordinary == Fraction(3, 2)


def test_pair_2_4_uniform_and_subspace_roots():
    bs = bound_constants(2, 4)
    assert bs.ordinary == 1
    # subspace constant: root of x^3 - 2x + 1 in (0, 1), which is (sqrt5 - 1)/2
    ref = sympy_real_root([1, -2, 0, 1], 0.0, 0.99)
    assert bs.subspace is not None
    assert bs.subspace.lo <= ref <= bs.subspace.hi
    assert bs.subspace.hi - bs.subspace.lo < Fraction(1, 10**11)
    assert abs(bs.subspace.value - ((5**0.5 - 1) / 2)) < 1e-9
    # uniform constant: root of its quartic near 0.5437
    refu = sympy_real_root(list(map(Fraction, bs.uniform_poly)), 0.0, 0.99)
    assert bs.uniform is not None
    assert bs.uniform.lo <= refu <= bs.uniform.hi
    assert abs(bs.uniform.value - 0.5436890126) < 1e-9


def test_residual_is_small_and_signed_bracket():
    bs = bound_constants(2, 4)
    for enc in (bs.uniform, bs.subspace):
        assert enc is not None
        assert abs(enc.residual) < Fraction(1, 10**10)
        # endpoints bracket a sign change
        def val(x, coeffs=enc.coefficients):
            return sum(Fraction(c) * x**k for k, c in enumerate(coeffs))

        assert val(enc.lo) * val(enc.hi) <= 0


def test_n1_degenerate_family_d3_to_d8():
    """At n = 1 both constants collapse: identical polynomials for every
    d, and at d = 3 the root at 1/2 is a double root."""
    for d in range(3, 9):
        bs = bound_constants(1, d)
        assert bs.uniform_poly == bs.subspace_poly
    b3 = bound_constants(1, 3)
    assert b3.degenerate
    assert b3.double_root == Fraction(1, 2)
    # verify the double root in rational arithmetic: p(1/2) = p'(1/2) = 0
    coeffs = [Fraction(c) for c in b3.uniform_poly]
    half = Fraction(1, 2)
    p = sum(c * half**k for k, c in enumerate(coeffs))
    dp = sum(k * c * half ** (k - 1) for k, c in enumerate(coeffs) if k)
    assert p == 0 and dp == 0


def test_g_root_r3_exact_identity():
    # at r = 3 the root satisfies c = omega_hat / (1 - omega_hat)
    om = Fraction(9, 16)
    e = g_root(3, om)
    c = om / (1 - om)
    assert e.lo <= c <= e.hi


@settings(max_examples=30, deadline=None)
@given(
    st.integers(3, 7),
    st.fractions(min_value=Fraction(1, 20), max_value=Fraction(19, 20), max_denominator=64),
)
def test_g_root_encloses_a_true_root(r, om):
    e = g_root(r, om)
    # r = 3 roots are exact rationals, so the enclosure may be a point
    assert e.lo <= e.hi

    def val(x):
        return sum(Fraction(c) * x**k for k, c in enumerate(e.coefficients))

    assert val(e.lo) * val(e.hi) <= 0
    assert e.hi - e.lo < Fraction(1, 10**9)


def test_g_root_rejects_bad_args():
    with pytest.raises(DiophlabError):
        g_root(2, Fraction(1, 2))
    with pytest.raises(DiophlabError):
        g_root(3, Fraction(0))
    with pytest.raises(DiophlabError):
        g_root(3, Fraction(1))


def test_feasibility_flips_at_the_subspace_threshold():
    eps = Fraction(1, 10**6)
    for n, d in [(2, 4), (2, 5), (3, 5)]:
        bs = bound_constants(n, d)
        assert bs.subspace is not None
        # the enclosure is far narrower than eps, so midpoints work
        mid = (bs.subspace.lo + bs.subspace.hi) / 2
        assert feasible_uniform_exponent(n, d, mid - eps)
        assert not feasible_uniform_exponent(n, d, mid + eps)


@settings(max_examples=25, deadline=None)
@given(
    st.sampled_from([(2, 4), (2, 5), (3, 5), (3, 7)]),
    st.fractions(min_value=Fraction(1, 100), max_value=Fraction(99, 100), max_denominator=100),
    st.fractions(min_value=Fraction(1, 100), max_value=Fraction(99, 100), max_denominator=100),
)
def test_feasibility_is_monotone(pair, a, b):
    n, d = pair
    lo, hi = min(a, b), max(a, b)
    if feasible_uniform_exponent(n, d, hi):
        assert feasible_uniform_exponent(n, d, lo)


def test_bound_constants_precondition():
    with pytest.raises(DiophlabError):
        bound_constants(0, 3)
    with pytest.raises(DiophlabError):
        bound_constants(2, 2)
