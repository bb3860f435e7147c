"""Game state types and exact move validation for the two escaping games.

Centers and radii are kept as exact rationals throughout.  Normal vectors
are dyadic approximations of unit vectors; every comparison that involves
a norm uses a certified rational bound on it, erring on the side of
rejecting a move.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from ..errors import DiophlabError
from ..polynomials import MultiPolynomial

# |u| may deviate from 1 by at most this much for a declared unit vector.
UNIT_NORM_SLACK = Fraction(1, 2**100)
_UNIT_SQ_LO = (1 - UNIT_NORM_SLACK) ** 2
_UNIT_SQ_HI = (1 + UNIT_NORM_SLACK) ** 2


def sqrt_bounds(q: Fraction, bits: int = 120) -> tuple[Fraction, Fraction]:
    """Certified lo <= sqrt(q) <= hi with hi - lo = 2^-bits."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("sqrt of a negative rational")
    if q == 0:
        return Fraction(0), Fraction(0)
    t = (q.numerator << (2 * bits)) // q.denominator
    r = math.isqrt(t)
    return Fraction(r, 1 << bits), Fraction(r + 1, 1 << bits)


def vsub(a, b) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) - Fraction(y) for x, y in zip(a, b))


def vadd(a, b) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) + Fraction(y) for x, y in zip(a, b))


def vdot(a, b) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def vscale(a, s) -> tuple[Fraction, ...]:
    s = Fraction(s)
    return tuple(Fraction(x) * s for x in a)


def norm_sq(a) -> Fraction:
    return sum((Fraction(x) ** 2 for x in a), Fraction(0))


def dyadic_round(value: Fraction, bits: int) -> Fraction:
    """Nearest multiple of 2^-bits (ties toward +inf)."""
    v = Fraction(value)
    scaled = v * (1 << bits)
    k = (2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator)
    return Fraction(k, 1 << bits)


def dyadic_round_vec(vec, bits: int) -> tuple[Fraction, ...]:
    return tuple(dyadic_round(v, bits) for v in vec)


@dataclass(frozen=True)
class Ball:
    """Closed Euclidean ball with exact rational center and radius."""

    center: tuple[Fraction, ...]
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(
            self, "center", tuple(Fraction(v) for v in self.center)
        )
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius <= 0:
            raise DiophlabError("ball radius must be positive")
        if not self.center:
            raise DiophlabError("ball needs at least one coordinate")

    @property
    def r(self) -> int:
        return len(self.center)

    def contains_ball(self, other: "Ball") -> bool:
        gap = self.radius - other.radius
        if gap < 0:
            return False
        return norm_sq(vsub(other.center, self.center)) <= gap * gap

    def contains_point(self, point) -> bool:
        return norm_sq(vsub(point, self.center)) <= self.radius**2


@dataclass(frozen=True)
class SchmidtConfig:
    """Parameters of an (alpha, beta)-game; gamma = 1 + alpha*beta - 2*beta."""

    r: int
    alpha: Fraction
    beta: Fraction
    gamma: Fraction = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.r < 1:
            raise DiophlabError("game dimension must be >= 1")
        if not (0 < self.alpha < 1 and 0 < self.beta < 1):
            raise DiophlabError("alpha and beta must lie strictly in (0, 1)")
        object.__setattr__(
            self, "gamma", 1 + self.alpha * self.beta - 2 * self.beta
        )


@dataclass(frozen=True)
class HawConfig:
    """Hyperplane-removal game parameters; requires beta < 1/3."""

    r: int
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.r < 1:
            raise DiophlabError("game dimension must be >= 1")
        if not (0 < self.beta < Fraction(1, 3)):
            raise DiophlabError("beta must lie strictly in (0, 1/3)")


@dataclass(frozen=True)
class HyperplaneNeighborhood:
    """Closed eps-neighborhood of the hyperplane (normal, z - anchor) = 0."""

    normal: tuple[Fraction, ...]
    anchor: tuple[Fraction, ...]
    epsilon: Fraction

    def __post_init__(self):
        object.__setattr__(
            self, "normal", tuple(Fraction(v) for v in self.normal)
        )
        object.__setattr__(
            self, "anchor", tuple(Fraction(v) for v in self.anchor)
        )
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if len(self.normal) != len(self.anchor):
            raise DiophlabError("normal and anchor dimensions differ")
        if self.epsilon <= 0:
            raise DiophlabError("slab thickness must be positive")
        q = norm_sq(self.normal)
        if not (_UNIT_SQ_LO <= q <= _UNIT_SQ_HI):
            raise DiophlabError("normal vector is not unit to within 2^-100")

    def signed_offset(self, point) -> Fraction:
        """(normal, point - anchor), exact."""
        return vdot(self.normal, vsub(point, self.anchor))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    violations: tuple[str, ...] = ()


@dataclass(frozen=True)
class Move:
    mover: str  # "escaper" | "opponent"
    ball: Optional[Ball]
    removal: Optional[HyperplaneNeighborhood]
    verdict: Verdict
    note: str = ""


class Certificate(NamedTuple):
    polynomial: MultiPolynomial
    epsilon: Fraction


@dataclass
class GameTranscript:
    kind: str  # "schmidt" | "haw"
    config: object
    moves: list[Move] = field(default_factory=list)
    final_ball: Optional[Ball] = None
    certificates: list[Certificate] = field(default_factory=list)


@dataclass(frozen=True)
class EscapeOutcome:
    """A finished escaping play with a certified clearance for f."""

    ball: Ball
    epsilon: Fraction
    transcript: GameTranscript
    rounds: int
    range_budget: int


def validate_schmidt_move(
    prev: Ball, nxt: Ball, role: str, config: SchmidtConfig
) -> Verdict:
    """Exact ratio and containment checks for one ball move."""
    if role not in ("escaper", "opponent"):
        raise DiophlabError(f"unknown role {role!r}")
    violations = []
    if prev.r != nxt.r or prev.r != config.r:
        violations.append("dimension")
        return Verdict(False, tuple(violations))
    ratio = config.alpha if role == "escaper" else config.beta
    if nxt.radius != ratio * prev.radius:
        violations.append("radius-ratio")
    gap = prev.radius - nxt.radius
    if gap < 0 or norm_sq(vsub(nxt.center, prev.center)) > gap * gap:
        violations.append("containment")
    return Verdict(not violations, tuple(violations))


def validate_haw_move(
    prev: Ball,
    removed: HyperplaneNeighborhood,
    nxt: Ball,
    config: HawConfig,
) -> Verdict:
    """Thickness, radius floor, containment and certified disjointness."""
    violations = []
    if prev.r != nxt.r or prev.r != config.r or len(removed.normal) != prev.r:
        violations.append("dimension")
        return Verdict(False, tuple(violations))
    if not (removed.epsilon < config.beta * prev.radius):
        violations.append("thickness")
    if nxt.radius < config.beta * prev.radius:
        violations.append("radius-floor")
    gap = prev.radius - nxt.radius
    if gap < 0 or norm_sq(vsub(nxt.center, prev.center)) > gap * gap:
        violations.append("containment")
    # Certified disjointness: |offset| / |normal| > eps + radius must hold
    # for the worst admissible |normal|, so reject when uncertain.
    off = removed.signed_offset(nxt.center)
    if abs(off) <= (removed.epsilon + nxt.radius) * (1 + UNIT_NORM_SLACK):
        violations.append("overlap")
    return Verdict(not violations, tuple(violations))
