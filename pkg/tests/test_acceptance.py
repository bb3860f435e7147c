"""Full-scale end-to-end checks.

Each test states one headline guarantee of the package and runs it at the
scale a user would: certified constants, scans checked against the
independent extractor, calibration on the golden ratio, exponent windows
for algebraic vectors and planes, record span ranks, the block-diagonal
counterexample, certificate re-verification under adversarial play, and
exhaustive avoidance checks for generated targets.  Tests that carry a
wall-clock ceiling assert it; real runtimes sit far below the limits.
"""

import itertools
import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from diophlab.bounds import bound_constants, feasible_uniform_exponent
from diophlab.exactnum import ExactScalar, rat, sqrt_of
from diophlab.exponents import (
    exponent_bound_report,
    exponent_estimates,
    span_rank_tail,
)
from diophlab.game import (
    CenterCopy,
    DeepSide,
    HawConfig,
    Hugging,
    LazyMinimal,
    RandomHaw,
    RandomSchmidt,
    Retreating,
    SchmidtConfig,
    manifold_escape_haw,
    manifold_escape_schmidt,
)
from diophlab.game.manifolds import generate_irrational_matrix
from diophlab.polynomials import MultiPolynomial, polynomial_range
from diophlab.records import bad_constant_estimate, best_approximations
from diophlab.subspaces import (
    RationalSubspace,
    intersection_dimension,
    irrationality_profile,
    iter_rational_subspaces,
)
from diophlab.targets import (
    TargetMatrix,
    algebraic_subspace,
    block_diagonal_subspace,
    matrix_subspace_basis,
)

sys.path.insert(0, str(Path(__file__).parent))
from oracles import brute_force_records, fibonacci_upto, sympy_intersection_dim  # noqa: E402

GOLDEN = ExactScalar(Fraction(1, 2), Fraction(1, 2), 5)
QUARTIC_MINPOLY = [-1, 0, 0, -1, 1]  # x^4 - x^3 - 1, totally real part is 2-dim


def _poly_at(coeffs, x: Fraction) -> Fraction:
    return sum(c * x**i for i, c in enumerate(coeffs))


def _poly_derivative_at(coeffs, x: Fraction) -> Fraction:
    return sum(i * c * x ** (i - 1) for i, c in enumerate(coeffs) if i)


def test_bound_constants_for_the_smallest_plane_case():
    t0 = time.monotonic()
    bs = bound_constants(2, 4)

    assert bs.ordinary == Fraction(1)

    sub = bs.subspace
    assert sub is not None
    # enclosure is a certified bracket inside (0, 1): exact sign change
    assert Fraction(0) < sub.lo <= sub.hi < Fraction(1)
    assert _poly_at(sub.coefficients, sub.lo) * _poly_at(sub.coefficients, sub.hi) <= 0
    assert list(bs.subspace_poly) == [1, -2, 0, 1]
    assert abs(sub.value - (math.sqrt(5) - 1) / 2) < 1e-9

    uni = bs.uniform
    assert uni is not None
    assert abs(uni.value - 0.54) < 0.01
    assert uni.residual < Fraction(1, 10**10)

    assert time.monotonic() - t0 < 1.0


def test_single_row_bound_family_collapses_to_double_roots():
    t0 = time.monotonic()
    for d in range(3, 9):
        bs = bound_constants(1, d)
        assert bs.uniform_poly == bs.subspace_poly
        assert bs.degenerate
        w = bs.double_root
        assert w == Fraction(1, d - 1)
        # double root verified in exact rational arithmetic
        assert _poly_at(bs.subspace_poly, w) == 0
        assert _poly_derivative_at(bs.subspace_poly, w) == 0
    assert bound_constants(1, 3).double_root == Fraction(1, 2)
    assert time.monotonic() - t0 < 1.0


def test_feasibility_flips_across_the_certified_root():
    eps = Fraction(1, 10**6)
    for n, d in [(2, 4), (2, 5), (3, 5)]:
        enc = bound_constants(n, d).subspace
        assert enc is not None
        # the bracket is far tighter than the probe offset
        assert enc.width < Fraction(1, 10**8)
        assert feasible_uniform_exponent(n, d, enc.mid - eps)
        assert not feasible_uniform_exponent(n, d, enc.mid + eps)


def test_scans_match_brute_force_on_random_rational_targets():
    t0 = time.monotonic()
    shapes = ((1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 2))
    rng = random.Random(20260822)
    for i in range(50):
        n, m = shapes[i % len(shapes)]
        rows = [
            [Fraction(rng.randrange(-120, 121), rng.randrange(1, 41)) for _ in range(n)]
            for _ in range(m)
        ]
        seq = best_approximations(TargetMatrix.from_rational(rows), T=200)
        oracle = brute_force_records(rows, 200)
        got = [(r.x, r.y, r.M, r.psi_lo, r.tied) for r in seq.records]
        want = [(r.x, r.y, r.M, r.psi, r.tied) for r in oracle.records]
        assert got == want, (n, m, rows)
        assert seq.exact_hit == oracle.exact_hit
        assert seq.tie_flag == oracle.tie_flag
        if not oracle.exact_hit:
            assert seq.product_min_lo <= oracle.product_min <= seq.product_min_hi
    assert time.monotonic() - t0 < 120.0


def test_golden_ratio_full_calibration():
    t0 = time.monotonic()
    seq = best_approximations(TargetMatrix.from_exact([[GOLDEN]]), T=10**6)
    assert [r.M for r in seq.records] == fibonacci_upto(10**6)
    est = exponent_estimates(seq)
    assert abs(est.omega_est - 1.0) <= 0.05
    assert abs(est.omega_hat_est - 1.0) <= 0.05
    bad = bad_constant_estimate(seq, 1, 1)
    assert Fraction(2, 5) <= bad <= Fraction(1, 2)
    assert time.monotonic() - t0 < 60.0


def test_surd_vector_uniform_exponents_stay_in_the_window():
    # pairs (sqrt a, sqrt b) with a != b squarefree are, with 1, linearly
    # independent over Q, so the uniform exponent lives in [1/2, 1]
    squarefree = [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29, 31, 33, 34, 35, 37]
    rng = random.Random(20260822)
    from diophlab.targets import VectorTarget

    for _ in range(20):
        a, b = rng.sample(squarefree, 2)
        vt = VectorTarget.from_values([sqrt_of(a), sqrt_of(b)])
        seq = best_approximations(vt, T=10**5)
        est = exponent_estimates(seq)
        assert 0.45 <= est.omega_hat_est <= 1.05, (a, b, est.omega_hat_est)


def test_quartic_plane_uniform_exponents_under_threshold():
    t0 = time.monotonic()
    plane = algebraic_subspace(QUARTIC_MINPOLY, 2)
    rep = exponent_bound_report(plane, 10, 10**4, seed=20260822)
    assert (rep.n, rep.d) == (2, 4)
    assert len(rep.samples) == 10
    # consistency with the subspace constant, not a proof of it
    assert rep.max_omega_hat <= 0.6680
    assert time.monotonic() - t0 < 600.0


def test_record_span_ranks_reach_the_ambient_dimension():
    quartic = algebraic_subspace(QUARTIC_MINPOLY, 2)
    rq = span_rank_tail(best_approximations(quartic.theta, T=1500))
    assert rq.stable and rq.stabilized_R == 4

    golden = TargetMatrix.from_exact([[GOLDEN]])
    root2_line = algebraic_subspace([-2, 0, 1], 1)
    cubic_line = algebraic_subspace([-1, -1, 0, 1], 1)

    # the quadratic lines admit exact complete-irrationality certificates
    for theta in (golden, root2_line.theta):
        prof = irrationality_profile(matrix_subspace_basis(theta), 5)
        assert prof.certified_m == 1 and prof.blocker is None

    cases = [
        (golden, 1, 2, 10**4),
        (root2_line.theta, 1, 2, 10**4),
        (cubic_line.vector_target(), 1, 3, 10**4),
    ]
    for target, n, d, T in cases:
        rep = span_rank_tail(best_approximations(target, T=T))
        assert rep.stable
        assert rep.stabilized_R >= d - n + 1
        assert rep.stabilized_R == d


def test_repeated_sqrt2_block_is_not_completely_irrational():
    root2 = sqrt_of(2)
    theta = block_diagonal_subspace(TargetMatrix.from_exact([[root2]]), 2)
    rows = theta.exact_rows()
    assert rows[0][0] == root2 and rows[1][1] == root2
    assert rows[0][1] == rat(0) and rows[1][0] == rat(0)

    basis = matrix_subspace_basis(theta)
    prof = irrationality_profile(basis, 5)
    assert prof.certified_m == 1  # every line is fine
    assert prof.blocker is not None and prof.blocker_dimension == 2
    span_e1_e3 = RationalSubspace.from_rows([[1, 0, 0, 0], [0, 0, 1, 0]])
    assert intersection_dimension(basis, span_e1_e3) == 1


def test_adversarial_escape_certificates_all_reverify():
    t0 = time.monotonic()
    exps = {
        r: [e for e in itertools.product(range(4), repeat=r) if sum(e) <= 3]
        for r in (1, 2, 3)
    }
    rng = random.Random(20260822)
    certs = 0
    for i in range(200):
        r = rng.randint(1, 3)
        while True:
            terms = {}
            for e in exps[r]:
                c = rng.randint(-5, 5)
                if c:
                    terms[e] = Fraction(c)
            if terms:
                break
        f = MultiPolynomial(r, terms)
        seed = rng.randrange(2**30)
        if i % 2 == 0:
            opp = rng.choice(
                [None, CenterCopy(), Retreating(), Hugging(), RandomSchmidt(seed)]
            )
            out = manifold_escape_schmidt(
                f,
                SchmidtConfig(r, Fraction(1, 4), Fraction(1, 4)),
                opponent=opp,
                seed=seed,
            )
        else:
            opp = rng.choice([None, DeepSide(), LazyMinimal(), RandomHaw(seed)])
            out = manifold_escape_haw(
                f, HawConfig(r, Fraction(1, 4)), opponent=opp, seed=seed
            )
        assert out.epsilon > 0
        assert out.transcript.certificates
        for cert in out.transcript.certificates:
            res = polynomial_range(cert.polynomial, out.ball, out.range_budget)
            assert res.abs_lower >= cert.epsilon, (i, str(f))
            certs += 1
    assert certs >= 200
    assert time.monotonic() - t0 < 600.0


def test_generated_targets_avoid_every_low_height_subspace():
    t0 = time.monotonic()

    g1 = generate_irrational_matrix(1, 1, 20, seed=2026)
    theta = g1.outcome.ball.center[0]
    eps = g1.epsilon_min
    assert eps > 0
    primitive = sum(
        1
        for p in range(-20, 21)
        for q in range(-20, 21)
        if (p, q) != (0, 0) and math.gcd(p, q) == 1 and (q > 0 or (q == 0 and p > 0))
    )
    assert len(g1.certificates) == primitive
    worst = min(
        abs(q * theta - p) for q in range(1, 21) for p in range(-20, 21)
    )
    assert worst > eps

    g2 = generate_irrational_matrix(2, 1, 2, seed=7)
    center = g2.outcome.ball.center
    graph_rows = [
        [center[0], Fraction(1), Fraction(0)],
        [center[1], Fraction(0), Fraction(1)],
    ]
    graph = RationalSubspace.from_rows(graph_rows, d=3)
    lines = list(iter_rational_subspaces(3, 1, 2))
    assert len(lines) == len(g2.certificates)
    for line in lines:
        assert intersection_dimension(graph, line) == 0
        assert sympy_intersection_dim(graph_rows, [list(r) for r in line.rows]) == 0

    assert time.monotonic() - t0 < 300.0
