"""Escaping strategies: half-space escape and the recursive polynomial
escape for both game kinds, with exact post-hoc guarantees.

Role convention: the escaper moves first from the current ball and plays
the alpha ratio; the opponent replies with the beta ratio.  The working
guarantee constant is gamma_use = min(1 + ab - 2b, 1 + ab - 2a): the
first is the configured gamma, the second is its mirror for alpha-ratio
escapers.  For alpha = beta the two coincide.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .._config import PRECISION_CAP_BITS
from ..errors import DiophlabError, GameAbort
from ..polynomials import MultiPolynomial, polynomial_range
from .balls import (
    Ball,
    Certificate,
    EscapeOutcome,
    GameTranscript,
    HawConfig,
    HyperplaneNeighborhood,
    Move,
    SchmidtConfig,
    UNIT_NORM_SLACK,
    Verdict,
    dyadic_round,
    dyadic_round_vec,
    norm_sq,
    sqrt_bounds,
    validate_haw_move,
    validate_schmidt_move,
    vadd,
    vdot,
    vscale,
    vsub,
)
from .opponents import (
    CenterCopy,
    DeepSide,
    MoveContext,
    _deep_side_ball,
    _round_bits,
    _SAFE,
)

RANGE_BUDGETS = (256, 1024, 4096, 16384)
NEWTON_STARTS = 32
DYADIC_BITS = 160
_EPS_SHAVE = 1 - Fraction(1, 2**16)
_UNIT_UP = 1 + UNIT_NORM_SLACK


def _bits_of(x: Fraction) -> int:
    """Roughly ceil(-log2 x) for 0 < x <= 1; at least 1."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("positive value required")
    return max(1, x.denominator.bit_length() - x.numerator.bit_length() + 1)


def _sqrt_lower(q: Fraction) -> Fraction:
    """Positive certified lower bound for sqrt(q), q > 0."""
    lo, up = sqrt_bounds(q)
    if lo > 0:
        return lo
    return q / up


def unitize(vec: Sequence[Fraction], bits: int = 160):
    """Dyadic near-unit vector u ~ vec/|vec| with certified direction error.

    Returns (u, err) with |u - vec/|vec|| <= err and ||u| - 1| < 2^-100.
    """
    v = tuple(Fraction(x) for x in vec)
    q = norm_sq(v)
    if q == 0:
        raise DiophlabError("cannot normalize the zero vector")
    bits = max(bits, 140)
    # Scale by a power of two so the norm is near 1, keeping exactness.
    shift = _bits_of(q) // 2 if q < 1 else -((q.numerator.bit_length() - q.denominator.bit_length()) // 2)
    v = tuple(x * Fraction(2) ** shift for x in v)
    q = norm_sq(v)
    lo, hi = sqrt_bounds(q, bits + 10)
    u = tuple(dyadic_round(x / hi, bits) for x in v)
    # |v/hi - v/|v|| <= (hi - lo)/lo, plus per-coordinate rounding.
    err = (hi - lo) / lo + len(v) * Fraction(1, 2**bits)
    if norm_sq(u) > (1 + UNIT_NORM_SLACK) ** 2 or norm_sq(u) < (1 - UNIT_NORM_SLACK) ** 2:
        raise DiophlabError("normalization failed to reach unit tolerance")
    return u, err


def _eval_mp(poly: MultiPolynomial, z) -> mpmath.mpf:
    tot = mpmath.mpf(0)
    for exps, coeff in poly.terms.items():
        t = mpmath.mpf(coeff.numerator) / coeff.denominator
        for zi, e in zip(z, exps):
            if e:
                t *= zi**e
        tot += t
    return tot


# ---------------------------------------------------------------------------
# Play state


class SchmidtPlay:
    """Live alternating play; the escaper owns this object and moves first."""

    def __init__(self, config: SchmidtConfig, opponent, seed: int, start: Ball):
        if start.r != config.r:
            raise DiophlabError("start ball dimension != game dimension")
        self.config = config
        self.opponent = opponent if opponent is not None else CenterCopy()
        self.rng = random.Random(seed)
        self.transcript = GameTranscript("schmidt", config, [], start, [])
        self.current = start
        self.rounds = 0
        self.forfeits = 0
        self.located: Optional[tuple[Fraction, ...]] = None

    def _record(self, mover, ball=None, removal=None, verdict=None, note=""):
        self.transcript.moves.append(Move(mover, ball, removal, verdict, note))

    def play_round(self, center, note, kind="wait", direction=None) -> Ball:
        """One escaper ball at `center` plus the opponent's reply.

        Returns the escaper's ball; afterwards self.current is the reply.
        """
        rho = self.config.alpha * self.current.radius
        ball = Ball(center, rho)
        v = validate_schmidt_move(self.current, ball, "escaper", self.config)
        if not v.ok:
            raise DiophlabError(f"engine produced an illegal move: {v.violations}")
        self._record("escaper", ball=ball, verdict=v, note=note)
        ctx = MoveContext(kind=kind, direction=direction, located=self.located)
        try:
            reply = self.opponent.reply(ball, self.config, ctx)
        except Exception:
            reply = None
        v2 = None
        if reply is not None:
            v2 = validate_schmidt_move(ball, reply, "opponent", self.config)
        if reply is None or not v2.ok:
            self._record(
                "opponent",
                ball=reply,
                verdict=v2 or Verdict(False, ("no-move",)),
                note="forfeit",
            )
            self.forfeits += 1
            reply = Ball(ball.center, self.config.beta * rho)
            v2 = validate_schmidt_move(ball, reply, "opponent", self.config)
            self._record("opponent", ball=reply, verdict=v2, note="forfeit-substituted")
        else:
            self._record("opponent", ball=reply, verdict=v2)
        self.current = reply
        self.transcript.final_ball = reply
        self.rounds += 1
        return ball


class HawPlay:
    """Removal/ball alternation; the escaper removes slabs."""

    def __init__(self, config: HawConfig, opponent, seed: int, start: Ball):
        if start.r != config.r:
            raise DiophlabError("start ball dimension != game dimension")
        self.config = config
        self.opponent = opponent if opponent is not None else DeepSide()
        self.rng = random.Random(seed)
        self.transcript = GameTranscript("haw", config, [], start, [])
        self.current = start
        self.rounds = 0
        self.forfeits = 0
        self.located: Optional[tuple[Fraction, ...]] = None

    def _record(self, mover, ball=None, removal=None, verdict=None, note=""):
        self.transcript.moves.append(Move(mover, ball, removal, verdict, note))

    def play_removal(self, removal: HyperplaneNeighborhood, note) -> Ball:
        ok = 0 < removal.epsilon < self.config.beta * self.current.radius
        v = Verdict(ok, () if ok else ("thickness",))
        if not ok:
            raise DiophlabError("engine produced an illegal removal")
        self._record("escaper", removal=removal, verdict=v, note=note)
        ctx = MoveContext(kind="removal", direction=removal.normal, located=self.located)
        try:
            reply = self.opponent.reply(self.current, removal, self.config, ctx)
        except Exception:
            reply = None
        v2 = None
        if reply is not None:
            v2 = validate_haw_move(self.current, removal, reply, self.config)
        if reply is None or not v2.ok:
            self._record(
                "opponent",
                ball=reply,
                verdict=v2 or Verdict(False, ("no-move",)),
                note="forfeit",
            )
            self.forfeits += 1
            reply = _deep_side_ball(self.current, removal, self.config)
            v2 = validate_haw_move(self.current, removal, reply, self.config)
            if not v2.ok:
                raise GameAbort(f"no legal fallback reply: {v2.violations}")
            self._record("opponent", ball=reply, verdict=v2, note="forfeit-substituted")
        else:
            self._record("opponent", ball=reply, verdict=v2)
        self.current = reply
        self.transcript.final_ball = reply
        self.rounds += 1
        return reply


# ---------------------------------------------------------------------------
# Half-space escape (Schmidt)


@dataclass(frozen=True)
class HalfspaceResult:
    clearance: Fraction  # certified min of (x - o, u) over the final pushed ball
    threshold: Fraction
    reference: Ball
    rounds: int


class HalfspaceEscape:
    """Strategy handle: tangential pushes along u from the current ball.

    Executing plays t rounds, t minimal with (alpha*beta)^t < gamma_use/2,
    then asserts min over the pushed ball of (x - o, u) > gamma_use*rho0/2
    with exact rational bookkeeping.
    """

    def __init__(self, state, u):
        self.play = state
        cfg = state.config
        self.u = tuple(Fraction(x) for x in u)
        q = norm_sq(self.u)
        if not ((1 - UNIT_NORM_SLACK) ** 2 <= q <= (1 + UNIT_NORM_SLACK) ** 2):
            raise DiophlabError("direction must be unit to within 2^-100")
        gamma_mirror = 1 + cfg.alpha * cfg.beta - 2 * cfg.alpha
        self.gamma_use = min(cfg.gamma, gamma_mirror)
        if self.gamma_use <= 0:
            raise DiophlabError("half-space escape needs gamma > 0")
        self.reference = state.current

    def push_rounds(self) -> int:
        cfg = self.play.config
        ab = cfg.alpha * cfg.beta
        t, p = 1, ab
        while p >= self.gamma_use / 2:
            p *= ab
            t += 1
        return t

    def execute(self) -> HalfspaceResult:
        play = self.play
        cfg = play.config
        o = self.reference.center
        threshold = self.gamma_use * self.reference.radius / 2
        t = self.push_rounds()
        done = 0
        while True:
            parent = play.current
            rho_e = cfg.alpha * parent.radius
            tau = (parent.radius - rho_e) * _SAFE
            center = dyadic_round_vec(
                vadd(parent.center, vscale(self.u, tau)), _round_bits(rho_e)
            )
            eball = play.play_round(center, "push", kind="push", direction=self.u)
            done += 1
            clearance = vdot(vsub(eball.center, o), self.u) - eball.radius * _UNIT_UP
            if done >= t and clearance > threshold:
                return HalfspaceResult(clearance, threshold, self.reference, done)
            if done >= t + 8:
                raise GameAbort(
                    "half-space guarantee not reached within t + 8 pushes"
                )


def schmidt_escape_halfspace(state, u) -> HalfspaceEscape:
    """Build the push-along-u strategy for the escaper of a live play."""
    return HalfspaceEscape(state, u)


# ---------------------------------------------------------------------------
# Recursive polynomial escape


class _EscapeEngine:
    def __init__(self, play, kind: str):
        self.play = play
        self.kind = kind  # "schmidt" | "haw"
        self.last_budget = RANGE_BUDGETS[0]
        cfg = play.config
        if kind == "schmidt":
            mirror = 1 + cfg.alpha * cfg.beta - 2 * cfg.alpha
            self.gamma_use = min(cfg.gamma, mirror)
            if self.gamma_use <= 0:
                raise DiophlabError("escaping needs gamma > 0")

    # -- game-kind constants -------------------------------------------

    def _rhs_const(self, eps_prev: Fraction) -> Fraction:
        cfg = self.play.config
        if self.kind == "schmidt":
            return cfg.alpha * cfg.beta * self.gamma_use * eps_prev / 8
        return cfg.beta**2 * eps_prev / 4

    def _thr(self, delta: Fraction) -> Fraction:
        cfg = self.play.config
        if self.kind == "schmidt":
            return cfg.alpha * cfg.beta * self.gamma_use * delta / 8
        return cfg.beta**2 * delta / 8

    def _band_rhs(self, delta: Fraction) -> Fraction:
        cfg = self.play.config
        if self.kind == "schmidt":
            return cfg.alpha * cfg.beta * self.gamma_use * delta / 8
        return cfg.beta**2 * delta / 4

    def _window_lo(self, delta: Fraction) -> Fraction:
        cfg = self.play.config
        if self.kind == "schmidt":
            return cfg.alpha * cfg.beta * delta / 2
        return cfg.beta * delta / 2

    # -- moves ----------------------------------------------------------

    def _waiting_round(self, note: str):
        play = self.play
        if self.kind == "schmidt":
            play.play_round(play.current.center, note, kind="wait")
        else:
            rho = play.current.radius
            normal = tuple(
                Fraction(1) if i == 0 else Fraction(0) for i in range(play.config.r)
            )
            removal = HyperplaneNeighborhood(
                normal, play.current.center, play.config.beta * rho / 2
            )
            play.play_removal(removal, note)

    def _wait_to_window(self, delta: Fraction):
        play = self.play
        hi = delta / 2
        lo = self._window_lo(delta)
        rho_in = play.current.radius
        if rho_in > hi:
            if self.kind == "schmidt":
                shrink = float(play.config.alpha * play.config.beta)
            else:
                shrink = float((1 - play.config.beta / 2) / 2) * 1.01
            cap = int(math.log(float(rho_in / hi)) / -math.log(shrink)) + 4
            count = 0
            while play.current.radius > hi:
                self._waiting_round("wait")
                count += 1
                if count > cap:
                    raise GameAbort("radius window not reached in the guaranteed rounds")
        if not (lo < play.current.radius <= hi):
            raise GameAbort("radius window missed")

    # -- delta ----------------------------------------------------------

    def _pick_delta(self, K: Fraction, s: int, eps_prev: Fraction) -> Fraction:
        r = self.play.config.r
        rho = self.play.current.radius
        if K <= 0:
            return 2 * rho
        rhs = self._rhs_const(eps_prev)

        def lhs(d: Fraction) -> Fraction:
            tot = Fraction(0)
            for k in range(2, s + 2):
                tot += Fraction(r**k, math.factorial(k)) * d ** (k - 1)
            return K * tot

        hi = Fraction(1)
        while lhs(hi) < rhs and hi < 2**40:
            hi *= 2
        if lhs(hi) < rhs:
            delta_bis = hi
        else:
            lo = Fraction(0)
            for _ in range(80):
                mid = (lo + hi) / 2
                if lhs(mid) < rhs:
                    lo = mid
                else:
                    hi = mid
            delta_bis = lo
        if delta_bis <= 0:
            # root below the bisection grain; lhs(d) <= K C d on d <= 1
            # gives the explicit positive fallback
            C = sum(Fraction(r**k, math.factorial(k)) for k in range(2, s + 2))
            delta_bis = rhs / (2 * K * C)
        if delta_bis <= 0:
            raise GameAbort("no positive delta satisfies the escape inequality")
        return min(delta_bis / 2, 2 * rho)

    # -- locating an intersection point --------------------------------

    def _anchor_bits(self, budget_eta: Fraction) -> int:
        rho = self.play.current.radius
        return max(
            DYADIC_BITS,
            _bits_of(min(budget_eta, Fraction(1))) + 64,
            _bits_of(min(rho, Fraction(1))) + 80,
        )

    def _locate_linear(self, f, grads, budget_eta: Fraction):
        """Exact projection of the center onto a degree-1 zero set."""
        ball = self.play.current
        g = tuple(gi.constant_value() for gi in grads)
        gsq = norm_sq(g)
        fc = f.evaluate(ball.center)
        _, g_up = sqrt_bounds(gsq)
        t_hat = fc / gsq
        t_max = ball.radius * (1 - Fraction(1, 2**20)) / g_up
        t = max(-t_max, min(t_hat, t_max))
        exact = vsub(ball.center, vscale(g, t))
        bits = self._anchor_bits(budget_eta)
        for _ in range(4):
            a = dyadic_round_vec(exact, bits)
            if norm_sq(vsub(a, ball.center)) > ball.radius**2:
                a = dyadic_round_vec(
                    vadd(ball.center, vscale(vsub(a, ball.center), _SAFE)), bits
                )
                if norm_sq(vsub(a, ball.center)) > ball.radius**2:
                    bits += 64
                    continue
            eta = abs(f.evaluate(a))
            if eta <= budget_eta:
                return a, eta
            bits += 64
        return None, None

    def _locate(self, f, grads, budget_eta: Fraction):
        """Newton projection from seeded starts; exact residual audit."""
        play = self.play
        ball = play.current
        r = ball.r
        c = [float(x) for x in ball.center]
        rho = float(ball.radius)
        starts = [list(c)]
        for _ in range(NEWTON_STARTS - 1):
            v = [play.rng.gauss(0.0, 1.0) for _ in range(r)]
            nv = math.sqrt(sum(x * x for x in v)) or 1.0
            rad = rho * 0.85 * play.rng.random()
            starts.append([ci + vi / nv * rad for ci, vi in zip(c, v)])
        best, best_val = None, math.inf
        for z in starts:
            z = list(z)
            for _ in range(60):
                fv = f.evaluate_float(z)
                g = [gi.evaluate_float(z) for gi in grads]
                g2 = sum(x * x for x in g)
                if g2 == 0.0 or not math.isfinite(g2):
                    break
                step = fv / g2
                z = [zi - step * gi for zi, gi in zip(z, g)]
                d2 = sum((zi - ci) ** 2 for zi, ci in zip(z, c))
                lim = 0.995 * rho
                if d2 > lim * lim:
                    s = lim / math.sqrt(d2)
                    z = [ci + (zi - ci) * s for zi, ci in zip(z, c)]
            val = abs(f.evaluate_float(z))
            if val < best_val:
                best_val, best = val, z
        if best is None:
            return None, None
        bits = self._anchor_bits(budget_eta)
        while True:
            got = self._mp_refine(f, grads, ball, best, bits, budget_eta)
            if got is not None:
                return got
            if bits > PRECISION_CAP_BITS:
                return None, None
            bits *= 2

    def _mp_refine(self, f, grads, ball, start, bits: int, budget_eta: Fraction):
        c_mp = None
        with mpmath.workprec(bits + 30):
            c_mp = [mpmath.mpf(x.numerator) / x.denominator for x in ball.center]
            rho_mp = mpmath.mpf(ball.radius.numerator) / ball.radius.denominator
            z = [mpmath.mpf(x) for x in start]
            for _ in range(200):
                fv = _eval_mp(f, z)
                g = [_eval_mp(gi, z) for gi in grads]
                g2 = mpmath.fsum(gi * gi for gi in g)
                if g2 == 0:
                    break
                step = fv / g2
                z = [zi - step * gi for zi, gi in zip(z, g)]
                d2 = mpmath.fsum((zi - ci) ** 2 for zi, ci in zip(z, c_mp))
                lim = rho_mp * mpmath.mpf(0.999)
                if d2 > lim * lim:
                    s = lim / mpmath.sqrt(d2)
                    z = [ci + (zi - ci) * s for zi, ci in zip(z, c_mp)]
                if abs(fv) < mpmath.ldexp(1, -(bits - 20)):
                    break
            a = tuple(
                Fraction(int(mpmath.nint(mpmath.ldexp(zi, bits))), 1 << bits)
                for zi in z
            )
        if norm_sq(vsub(a, ball.center)) > ball.radius**2:
            q = norm_sq(vsub(a, ball.center))
            lam = ball.radius * _SAFE / sqrt_bounds(q)[1]
            a = dyadic_round_vec(
                vadd(ball.center, vscale(vsub(a, ball.center), lam)), bits
            )
            if norm_sq(vsub(a, ball.center)) > ball.radius**2:
                return None
        eta = abs(f.evaluate(a))
        if eta > budget_eta:
            return None
        return a, eta

    # -- certificate finisher -------------------------------------------

    def _finish(self, f, eps1: Optional[Fraction]) -> Fraction:
        play = self.play
        shrinks = 0
        while True:
            rr = None
            for budget in RANGE_BUDGETS:
                rr = polynomial_range(f, play.current, budget)
                if rr.abs_lower > 0:
                    break
            if rr.abs_lower > 0:
                break
            if shrinks >= 6:
                raise GameAbort("cannot certify min |f| > 0 on the final ball")
            self._waiting_round("shrink")
            shrinks += 1
        self.last_budget = budget
        ball = play.current
        eps2 = rr.abs_lower
        lam_up = Fraction(0)
        for g in f.gradient():
            if g.is_zero:
                continue
            lam_up += polynomial_range(
                g, Ball(ball.center, 2 * ball.radius), 256
            ).abs_upper
        eps = min(eps2 * _EPS_SHAVE, ball.radius)
        if lam_up > 0:
            eps = min(eps, eps2 / lam_up)
        if eps1 is not None:
            eps = min(eps, eps1)
        play.transcript.certificates.append(Certificate(f, eps))
        return eps

    # -- the recursion ---------------------------------------------------

    def escape(self, f: MultiPolynomial) -> Fraction:
        play = self.play
        cfg = play.config
        if f.r != cfg.r:
            raise DiophlabError("polynomial arity differs from game dimension")
        if f.is_zero:
            raise DiophlabError("cannot escape the zero polynomial")
        s = f.degree
        if s == 0:
            eps = abs(f.constant_value()) / 2
            play.transcript.certificates.append(Certificate(f, eps))
            return eps
        if polynomial_range(f, play.current, RANGE_BUDGETS[0]).abs_lower > 0:
            return self._finish(f, None)
        grads = f.gradient()
        if s >= 2:
            eps_parts = [self.escape(gi) for gi in grads if not gi.is_zero]
            eps_prev = min(eps_parts)
            K = Fraction(0)
            for p in f.partials_of_orders(2, s):
                K = max(K, polynomial_range(p, play.current, 256).abs_upper)
            delta = self._pick_delta(K, s, eps_prev)
            self._wait_to_window(delta)
            g_floor = eps_prev
        else:
            gvec = tuple(gi.constant_value() for gi in grads)
            g_floor = _sqrt_lower(norm_sq(gvec))
            eps_prev = None
            delta = 2 * play.current.radius
        thr = self._thr(delta)
        budget_eta = self._band_rhs(delta) * g_floor / 32

        rr = polynomial_range(f, play.current, RANGE_BUDGETS[0])
        if rr.abs_lower > 0:
            return self._finish(f, None)

        if s == 1:
            a, eta = self._locate_linear(f, grads, budget_eta)
        else:
            a, eta = self._locate(f, grads, budget_eta)
        if a is None:
            for budget in RANGE_BUDGETS[1:]:
                rr = polynomial_range(f, play.current, budget)
                if rr.abs_lower > 0:
                    return self._finish(f, None)
            raise GameAbort(
                "no intersection located and absence not certifiable at "
                f"{RANGE_BUDGETS[-1]} boxes"
            )
        play.located = a

        # Gradient direction at a, with certified direction error.
        gvec = tuple(gi.evaluate(a) for gi in grads)
        gsq = norm_sq(gvec)
        if gsq == 0:
            raise GameAbort("vanishing gradient at the located point")
        g_lo = _sqrt_lower(gsq)
        if eps_prev is not None:
            g_lo = max(g_lo, eps_prev)
        rho_t = play.current.radius
        d_za = 2 * rho_t if s >= 2 else Fraction(2**80)
        u_err_target = self._band_rhs(delta) / (32 * d_za)
        u, u_err = unitize(gvec, _bits_of(min(u_err_target, Fraction(1))) + 20)
        if u_err > u_err_target:
            raise GameAbort("direction error budget exceeded")

        if s >= 2:
            r = cfg.r
            b_taylor = Fraction(0)
            for k in range(2, s + 2):
                b_taylor += Fraction(r**k, math.factorial(k)) * d_za**k
            b_taylor *= K
        else:
            b_taylor = Fraction(0)
        band = (eta + b_taylor) / g_lo + d_za * u_err
        if band > self._band_rhs(delta):
            raise GameAbort("neighborhood band exceeds the guaranteed width")

        if self.kind == "schmidt":
            o = play.current.center
            p_off = vdot(vsub(a, o), u)
            if p_off > 0:
                u = tuple(-x for x in u)
                p_off = -p_off
            res = HalfspaceEscape(play, u).execute()
            sep = (res.clearance - p_off - band) / _UNIT_UP
        else:
            eps_slab = Fraction(99, 100) * cfg.beta * rho_t
            removal = HyperplaneNeighborhood(u, a, eps_slab)
            play.play_removal(removal, "slab")
            ball = play.current
            q1 = abs(vdot(vsub(ball.center, a), u)) - ball.radius * _UNIT_UP
            sep = (q1 - band) / _UNIT_UP
        if sep <= thr:
            raise GameAbort("separation audit failed against the guarantee")
        return self._finish(f, thr)


# ---------------------------------------------------------------------------
# Public entry points


def _default_start(r: int) -> Ball:
    return Ball(tuple(Fraction(0) for _ in range(r)), Fraction(1))


def manifold_escape_schmidt(
    f: MultiPolynomial,
    config: SchmidtConfig,
    opponent=None,
    seed: int = 0,
    start: Optional[Ball] = None,
) -> EscapeOutcome:
    """Play one Schmidt game escaping {f = 0}, returning a certified outcome."""
    start = start if start is not None else _default_start(config.r)
    play = SchmidtPlay(config, opponent, seed, start)
    eng = _EscapeEngine(play, "schmidt")
    eps = eng.escape(f)
    return EscapeOutcome(play.current, eps, play.transcript, play.rounds, eng.last_budget)


def manifold_escape_haw(
    f: MultiPolynomial,
    config: HawConfig,
    opponent=None,
    seed: int = 0,
    start: Optional[Ball] = None,
) -> EscapeOutcome:
    """Hyperplane-removal variant of the polynomial escape."""
    start = start if start is not None else _default_start(config.r)
    play = HawPlay(config, opponent, seed, start)
    eng = _EscapeEngine(play, "haw")
    eps = eng.escape(f)
    return EscapeOutcome(play.current, eps, play.transcript, play.rounds, eng.last_budget)
