from fractions import Fraction

import pytest

from diophlab.errors import DiophlabError, PrecisionError
from diophlab.exactnum import ExactScalar, rat, sqrt_of
from diophlab.targets import (
    TargetMatrix,
    VectorTarget,
    algebraic_subspace,
    matrix_subspace_basis,
    theta_from_basis,
)


def test_from_rational_is_exact():
    th = TargetMatrix.from_rational([[Fraction(2, 3), Fraction(1, 7)]])
    assert th.err == 0
    assert th.is_exact
    assert th.approx == ((Fraction(2, 3), Fraction(1, 7)),)


def test_from_exact_err_invariant():
    th = TargetMatrix.from_exact([[sqrt_of(2)]], precision=100)
    assert th.err > 0
    assert th.err <= Fraction(1, 2**99)
    lo = th.approx[0][0] - th.err
    hi = th.approx[0][0] + th.err
    # the enclosure really brackets sqrt(2)
    assert lo * lo < 2 < hi * hi


def test_from_exact_accepts_strings():
    th = TargetMatrix.from_exact([["1/2", "1+1/2*sqrt(5)"]])
    ex = th.exact_rows()
    assert ex[0][0] == rat(1, 2)
    assert ex[0][1] == ExactScalar(1, Fraction(1, 2), 5)


def test_with_precision_refines_exact_targets():
    th = TargetMatrix.from_exact([[sqrt_of(2)]], precision=50)
    fine = th.with_precision(300)
    assert fine.err <= Fraction(1, 2**299)


def test_with_precision_fails_on_fixed_targets():
    th = TargetMatrix.from_approx([[Fraction(16, 10)]], Fraction(1, 100))
    with pytest.raises(PrecisionError):
        th.with_precision(256)


def test_from_approx_precision_tracks_err():
    th = TargetMatrix.from_approx([[Fraction(1, 3)]], Fraction(1, 2**40))
    assert th.err <= Fraction(1, 2 ** (th.precision - 1))


def test_vector_target_round_trip():
    v = VectorTarget.from_values([Fraction(1, 2), Fraction(1, 3)])
    assert v.d == 3
    assert v.theta.n == 1
    assert v.theta.m == 2


def test_matrix_subspace_basis_and_back():
    th = TargetMatrix.from_exact([[sqrt_of(2), rat(1, 3)]])
    basis = matrix_subspace_basis(th)
    assert (basis.d, basis.n) == (3, 2)
    # rows are (e_i | column_i)
    assert basis.rows[0][0] == rat(1)
    assert basis.rows[0][2] == sqrt_of(2)
    back = theta_from_basis(basis)
    assert back.exact_rows() == th.exact_rows()


def test_algebraic_subspace_quadratic_exact():
    # x^2 - x - 1: golden ratio line
    sub = algebraic_subspace([-1, -1, 1], 1)
    th = sub.theta
    assert th.is_exact
    phi = ExactScalar(Fraction(1, 2), Fraction(1, 2), 5)
    assert th.exact_rows()[0][0] == phi


def test_algebraic_subspace_quartic_refiner():
    # x^4 - x^3 - 1 has a real root near 1.3803; the 2-plane target in R^4
    sub = algebraic_subspace([-1, 0, 0, -1, 1], 2)
    th = sub.theta
    assert (th.n, th.m) == (2, 2)
    a = th.approx[0][0]
    fine = th.with_precision(400)
    assert fine.err <= Fraction(1, 2**399)
    # refined values stay inside the coarse enclosure
    for j in range(2):
        for i in range(2):
            assert abs(fine.approx[j][i] - th.approx[j][i]) <= th.err + fine.err


def test_algebraic_subspace_rejects_reducible():
    with pytest.raises(DiophlabError):
        algebraic_subspace([1, -2, 1], 1)  # (x-1)^2
    with pytest.raises(DiophlabError):
        algebraic_subspace([-1, 0, 1], 1)  # x^2 - 1


def test_algebraic_subspace_quadratic_follows_construction():
    # q = (x^2 - 2)/(x - sqrt2) = x + sqrt2, so the line is span{(sqrt2, 1)}
    # and theta (graph slope) is 1/sqrt2
    sub = algebraic_subspace([-2, 0, 1], 1)
    v = sub.theta.exact_rows()[0][0]
    assert v == ExactScalar(0, Fraction(1, 2), 2)
    assert v * sqrt_of(2) == rat(1)
