"""Opponent strategies: random-legal, center-copy, manifold-hugging, and
the hyperplane-game responders used for adversarial coverage.

An opponent only proposes moves; the engine validates every proposal and
substitutes a canonical legal move (recording a forfeit) when a proposal
is illegal.  Strategies therefore aim a safe margin inside every bound.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .balls import (
    Ball,
    HawConfig,
    HyperplaneNeighborhood,
    SchmidtConfig,
    UNIT_NORM_SLACK,
    dyadic_round_vec,
    norm_sq,
    sqrt_bounds,
    vadd,
    vscale,
    vsub,
)

# Margin factor keeping constructed moves strictly legal after dyadic
# rounding of centers (validators compare exactly).
_SAFE = 1 - Fraction(1, 2**30)
_ROUND_BITS_PAD = 64


def _round_bits(radius: Fraction) -> int:
    """Enough dyadic bits that rounding error is far below radius scale."""
    scale = radius.denominator.bit_length() - radius.numerator.bit_length()
    return max(8, scale + _ROUND_BITS_PAD)


def _toward(center, target, cap: Fraction, bits: int):
    """center + t*(target - center) with |t*(target-center)| <= cap."""
    v = vsub(target, center)
    q = norm_sq(v)
    if q == 0:
        return tuple(center)
    _, up = sqrt_bounds(q)
    t = min(Fraction(1), cap / up)
    return dyadic_round_vec(vadd(center, vscale(v, t * _SAFE)), bits)


class SchmidtOpponent:
    """Base: reply to the escaper's ball with a beta-ratio ball."""

    def reply(self, prev: Ball, config: SchmidtConfig, ctx) -> Ball:
        raise NotImplementedError


class CenterCopy(SchmidtOpponent):
    def reply(self, prev, config, ctx):
        return Ball(prev.center, config.beta * prev.radius)


class RandomSchmidt(SchmidtOpponent):
    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def reply(self, prev, config, ctx):
        rho = config.beta * prev.radius
        cap = (prev.radius - rho) * _SAFE
        bits = _round_bits(rho)
        for _ in range(16):
            v = tuple(
                Fraction(self.rng.randrange(-(1 << 30), (1 << 30) + 1), 1 << 30)
                for _ in range(prev.r)
            )
            q = norm_sq(v)
            if 0 < q <= 1:
                _, up = sqrt_bounds(q)
                scale = cap * Fraction(self.rng.randrange(0, 1 << 20), 1 << 20)
                center = dyadic_round_vec(
                    vadd(prev.center, vscale(v, scale / up)), bits
                )
                cand = Ball(center, rho)
                if prev.contains_ball(cand):
                    return cand
        return Ball(prev.center, rho)


class Retreating(SchmidtOpponent):
    """Worst case for a half-space escape: moves against ctx.direction."""

    def reply(self, prev, config, ctx):
        direction = getattr(ctx, "direction", None)
        if direction is None:
            return Ball(prev.center, config.beta * prev.radius)
        rho = config.beta * prev.radius
        tau = (prev.radius - rho) * _SAFE
        center = dyadic_round_vec(
            vsub(prev.center, vscale(direction, tau)), _round_bits(rho)
        )
        cand = Ball(center, rho)
        if prev.contains_ball(cand):
            return cand
        return Ball(prev.center, rho)


class Hugging(SchmidtOpponent):
    """Moves toward the nearest located manifold point when one is known."""

    def reply(self, prev, config, ctx):
        located = getattr(ctx, "located", None)
        rho = config.beta * prev.radius
        if located is None:
            return Ball(prev.center, rho)
        cap = (prev.radius - rho) * _SAFE
        center = _toward(prev.center, located, cap, _round_bits(rho))
        cand = Ball(center, rho)
        if prev.contains_ball(cand):
            return cand
        return Ball(prev.center, rho)


# ---------------------------------------------------------------------------
# Hyperplane-game responders


def _deep_side_ball(
    prev: Ball, removed: HyperplaneNeighborhood, config: HawConfig
) -> Ball:
    """Maximal travel away from the slab at the minimal legal radius.

    Legal whenever beta < 1/3: travel (1-beta)*rho clears eps + beta*rho
    since eps < beta*rho gives eps + beta*rho < 2*beta*rho < (1-beta)*rho.
    """
    rho = prev.radius
    rho_next = config.beta * rho
    s0 = removed.signed_offset(prev.center)
    sigma = 1 if s0 >= 0 else -1
    tau = (1 - config.beta) * rho * _SAFE
    center = dyadic_round_vec(
        vadd(prev.center, vscale(removed.normal, sigma * tau)),
        _round_bits(rho_next),
    )
    return Ball(center, rho_next)


class HawOpponent:
    def reply(
        self,
        prev: Ball,
        removed: HyperplaneNeighborhood,
        config: HawConfig,
        ctx,
    ) -> Ball:
        raise NotImplementedError


class DeepSide(HawOpponent):
    def reply(self, prev, removed, config, ctx):
        return _deep_side_ball(prev, removed, config)


class LazyMinimal(HawOpponent):
    """Moves only as far as disjointness demands, at the minimal radius."""

    def reply(self, prev, removed, config, ctx):
        rho_next = config.beta * prev.radius
        s0 = removed.signed_offset(prev.center)
        sigma = 1 if s0 >= 0 else -1
        need = (removed.epsilon + rho_next) * (1 + 4 * UNIT_NORM_SLACK)
        q = norm_sq(removed.normal)
        lo, _ = sqrt_bounds(q)
        shortfall = need - abs(s0)
        if shortfall <= 0:
            tau = Fraction(0)
        else:
            # Moving tau along the normal raises |offset| by tau*q >= tau*lo^2.
            tau = shortfall / (lo * lo) + rho_next / 2**40
        center = dyadic_round_vec(
            vadd(prev.center, vscale(removed.normal, sigma * tau)),
            _round_bits(rho_next),
        )
        cand = Ball(center, rho_next)
        if prev.contains_ball(cand):
            off = removed.signed_offset(cand.center)
            if abs(off) > (removed.epsilon + rho_next) * (1 + UNIT_NORM_SLACK):
                return cand
        return _deep_side_ball(prev, removed, config)


class RandomHaw(HawOpponent):
    """Random legal side, depth and radius; deep-side fallback."""

    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def reply(self, prev, removed, config, ctx):
        rho = prev.radius
        bits = _round_bits(config.beta * rho)
        for _ in range(24):
            sigma = self.rng.choice((1, -1))
            tau = (1 - config.beta) * rho * Fraction(
                self.rng.randrange(1 << 18, 1 << 20), 1 << 20
            )
            rho_next = config.beta * rho * Fraction(
                self.rng.randrange(1 << 20, (1 << 21) + 1), 1 << 20
            )
            center = dyadic_round_vec(
                vadd(prev.center, vscale(removed.normal, sigma * tau)), bits
            )
            gap = rho - rho_next
            if gap < 0:
                continue
            if norm_sq(vsub(center, prev.center)) > gap * gap:
                continue
            off = removed.signed_offset(center)
            if abs(off) <= (removed.epsilon + rho_next) * (
                1 + 2 * UNIT_NORM_SLACK
            ):
                continue
            return Ball(center, rho_next)
        return _deep_side_ball(prev, removed, config)


@dataclass
class MoveContext:
    """What the engine discloses to an opponent about the ongoing escape."""

    kind: str = "wait"  # "wait" | "push" | "removal"
    direction: Optional[tuple[Fraction, ...]] = None
    located: Optional[tuple[Fraction, ...]] = None
