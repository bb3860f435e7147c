"""End-to-end escape runs: every certificate must survive re-verification
by an independent range evaluation at the recorded budget."""

from fractions import Fraction

import pytest

from diophlab.errors import DiophlabError, GameAbort
from diophlab.game import (
    Ball,
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
    schmidt_escape_halfspace,
)
from diophlab.game.engine import SchmidtPlay, unitize
from diophlab.polynomials import parse_polynomial, polynomial_range

ALPHA = Fraction(1, 4)
BETA = Fraction(1, 4)


def _recheck(outcome):
    """Every certified polynomial stays at least eps away from zero on the
    final ball, checked by direct range evaluation."""
    ball = outcome.ball
    for cert in outcome.transcript.certificates:
        res = polynomial_range(cert.polynomial, ball, outcome.range_budget)
        assert res.abs_lower >= cert.epsilon, (
            str(cert.polynomial),
            float(res.abs_lower),
            float(cert.epsilon),
        )


def test_schmidt_escape_simple_poly():
    f = parse_polynomial("z1^2 - 2", 1)
    out = manifold_escape_schmidt(f, SchmidtConfig(1, ALPHA, BETA))
    assert out.epsilon > 0
    _recheck(out)


def test_schmidt_escape_every_opponent():
    f = parse_polynomial("z1^2 + z2^2 - 1")
    for opp in [None, CenterCopy(), RandomSchmidt(11), Retreating(), Hugging()]:
        out = manifold_escape_schmidt(
            f, SchmidtConfig(2, ALPHA, BETA), opponent=opp, seed=4
        )
        assert out.epsilon > 0
        _recheck(out)


def test_haw_escape_every_opponent():
    f = parse_polynomial("z1*z2 - 1")
    for opp in [None, DeepSide(), LazyMinimal(), RandomHaw(17)]:
        out = manifold_escape_haw(f, HawConfig(2, BETA), opponent=opp, seed=2)
        assert out.epsilon > 0
        _recheck(out)


def test_escape_linear_polynomial():
    f = parse_polynomial("2*z1 - 3*z2 + 1/3")
    out = manifold_escape_schmidt(f, SchmidtConfig(2, ALPHA, BETA), seed=9)
    assert out.epsilon > 0
    _recheck(out)


def test_escape_cubic_three_vars():
    f = parse_polynomial("z1*z2*z3 - z1 + 2*z2 - 1")
    out = manifold_escape_schmidt(f, SchmidtConfig(3, ALPHA, BETA), seed=1)
    assert out.epsilon > 0
    _recheck(out)


def test_escape_constant_polynomial():
    f = parse_polynomial("5", 2)
    out = manifold_escape_schmidt(f, SchmidtConfig(2, ALPHA, BETA))
    assert out.epsilon == Fraction(5, 2)
    assert out.rounds == 0


def test_escape_zero_polynomial_rejected():
    from diophlab.polynomials import MultiPolynomial

    with pytest.raises(DiophlabError):
        manifold_escape_schmidt(
            MultiPolynomial.zero(2), SchmidtConfig(2, ALPHA, BETA)
        )


def test_escape_final_ball_nested_in_start():
    f = parse_polynomial("z1^2 - z2")
    start = Ball((Fraction(0), Fraction(0)), Fraction(1))
    out = manifold_escape_schmidt(
        f, SchmidtConfig(2, ALPHA, BETA), seed=6, start=start
    )
    assert start.contains_ball(out.ball)


def test_transcript_moves_all_validated():
    f = parse_polynomial("z1^2 + z2^2 - 1")
    out = manifold_escape_schmidt(
        f, SchmidtConfig(2, ALPHA, BETA), opponent=Hugging(), seed=8
    )
    assert out.transcript.moves
    for mv in out.transcript.moves:
        assert mv.verdict.ok, mv.verdict.violations


def test_forfeiting_opponent_is_substituted():
    class Exploder(CenterCopy):
        def __init__(self):
            self.calls = 0

        def reply(self, prev, config, ctx):
            self.calls += 1
            if self.calls == 2:
                raise RuntimeError("boom")
            return super().reply(prev, config, ctx)

    f = parse_polynomial("z1^2 + z2^2 - 1")
    out = manifold_escape_schmidt(
        f, SchmidtConfig(2, ALPHA, BETA), opponent=Exploder(), seed=5
    )
    assert out.epsilon > 0
    _recheck(out)
    notes = [mv.note for mv in out.transcript.moves]
    assert any("forfeit" in note for note in notes)


def test_cheating_opponent_is_substituted():
    class Cheat(CenterCopy):
        def reply(self, prev, config, ctx):
            # wrong ratio: radius far too large
            return Ball(prev.center, prev.radius * Fraction(9, 10))

    f = parse_polynomial("z1^2 - 2", 1)
    out = manifold_escape_schmidt(
        f, SchmidtConfig(1, ALPHA, BETA), opponent=Cheat(), seed=3
    )
    assert out.epsilon > 0
    _recheck(out)


def test_halfspace_escape_reaches_clearance():
    play = SchmidtPlay(
        SchmidtConfig(2, ALPHA, BETA), CenterCopy(), 0,
        Ball((Fraction(0), Fraction(0)), Fraction(1)),
    )
    u, err = unitize((Fraction(1), Fraction(0)), 160)
    esc = schmidt_escape_halfspace(play, u)
    res = esc.execute()
    assert res.clearance > res.threshold
    # the final ball sits beyond the reference center in direction u
    off = sum(
        (a - b) * uu
        for a, b, uu in zip(play.current.center, res.reference.center, u)
    )
    assert off > 0


def test_gamma_must_be_positive():
    # alpha = beta = 1/2 makes 1 + ab - 2a = 3/4 - 1 + ... <= 0 infeasible;
    # use a legal config but a degenerate mirrored one instead
    with pytest.raises((DiophlabError, GameAbort)):
        play = SchmidtPlay(
            SchmidtConfig(2, Fraction(1, 100), Fraction(99, 100)), CenterCopy(), 0,
            Ball((Fraction(0), Fraction(0)), Fraction(1)),
        )
        u, _ = unitize((Fraction(1), Fraction(0)), 160)
        schmidt_escape_halfspace(play, u).execute()


def test_deterministic_for_fixed_seed():
    f = parse_polynomial("z1^2 + z2^2 - 1")
    a = manifold_escape_schmidt(
        f, SchmidtConfig(2, ALPHA, BETA), opponent=RandomSchmidt(7), seed=7
    )
    b = manifold_escape_schmidt(
        f, SchmidtConfig(2, ALPHA, BETA), opponent=RandomSchmidt(7), seed=7
    )
    assert a.epsilon == b.epsilon
    assert a.ball == b.ball
    assert a.rounds == b.rounds
