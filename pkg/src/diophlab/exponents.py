"""Diophantine exponent estimators, span rank of record tails, and the
sampled comparison against the threshold constants.

The uniform exponent is governed by consecutive records: between M_nu and
M_{nu+1} the best achievable error is psi_nu, so omega_hat is estimated by
min over the tail of -log psi_nu / log M_{nu+1}. The ordinary exponent is
estimated from consecutive-record slopes (with the uniform estimate as a
floor), which is stable against the additive constants that make the raw
ratio -log psi_nu / log M_nu overshoot at any finite T.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import _config
from .bounds import bound_constants
from .errors import DiophlabError
from .linalg import rank
from .records import BestApproxSequence, best_approximations
from .targets import (
    AlgebraicSubspace,
    TargetMatrix,
    VectorTarget,
    theta_from_basis,
)
from .subspaces import SubspaceBasis

__all__ = [
    "RecordRatio",
    "ExponentEstimate",
    "exponent_estimates",
    "SpanRankReport",
    "span_rank_tail",
    "SampleOutcome",
    "BoundCheckReport",
    "exponent_bound_report",
]


def _log_fraction(v: Fraction) -> float:
    if v <= 0:
        raise DiophlabError("log of a nonpositive value")
    return math.log(v.numerator) - math.log(v.denominator)


@dataclass(frozen=True)
class RecordRatio:
    index: int
    M: int
    psi: float
    ratio_point: Optional[float]  # -log psi / log M (None at M = 1)
    ratio_uniform: Optional[float]  # -log psi / log M_next (None at last record)
    slope: Optional[float]  # consecutive-record slope (None at last record)


@dataclass(frozen=True)
class ExponentEstimate:
    omega_est: float
    omega_hat_est: float
    T: int
    tail_start: int
    rows: tuple[RecordRatio, ...]


def exponent_estimates(
    seq: BestApproxSequence, tail_fraction: float = 0.2
) -> ExponentEstimate:
    """Estimates of omega and omega_hat from a record sequence.

    Skips a warm-up prefix (default first 20% of records) before taking
    the min/max; needs at least 3 records and no exact hit.
    """
    if seq.exact_hit:
        raise DiophlabError("exponents are undefined after an exact rational hit")
    recs = seq.records
    if len(recs) < 3:
        raise DiophlabError("need at least 3 records to estimate exponents")
    lpsi = []
    for r in recs:
        mid = (r.psi_lo + r.psi_hi) / 2
        lpsi.append(_log_fraction(mid))
    lM = [math.log(r.M) for r in recs]
    tail_start = int(len(recs) * tail_fraction)
    if tail_start > len(recs) - 2:
        tail_start = len(recs) - 2
    uniform = []
    slopes = []
    for nu in range(tail_start, len(recs) - 1):
        uniform.append(-lpsi[nu] / lM[nu + 1])
        slopes.append((lpsi[nu] - lpsi[nu + 1]) / (lM[nu + 1] - lM[nu]))
    omega_hat = min(uniform)
    omega = max(omega_hat, max(slopes))
    rows = []
    for i, r in enumerate(recs):
        point = (-lpsi[i] / lM[i]) if r.M > 1 else None
        uni = (-lpsi[i] / lM[i + 1]) if i + 1 < len(recs) else None
        slp = (
            (lpsi[i] - lpsi[i + 1]) / (lM[i + 1] - lM[i])
            if i + 1 < len(recs)
            else None
        )
        rows.append(
            RecordRatio(
                index=i,
                M=r.M,
                psi=r.psi,
                ratio_point=point,
                ratio_uniform=uni,
                slope=slp,
            )
        )
    return ExponentEstimate(
        omega_est=omega,
        omega_hat_est=omega_hat,
        T=seq.T,
        tail_start=tail_start,
        rows=tuple(rows),
    )


@dataclass(frozen=True)
class SpanRankReport:
    T: int
    d: int
    ranks: tuple[int, ...]  # rank of {z_nu : nu >= nu0} for each nu0
    stabilized_R: int
    stable: bool
    tail_index: int


def span_rank_tail(seq: BestApproxSequence) -> SpanRankReport:
    """Integer rank of the record tail {z_nu : nu >= nu0} for every nu0.

    The stabilized R is the rank at the largest nu0 that still leaves at
    least max(d+1, 5) records; shorter sequences are flagged unstable.
    """
    recs = seq.records
    if not recs:
        raise DiophlabError("sequence has no records")
    d = seq.d
    vectors = [[Fraction(v) for v in r.z] for r in recs]
    ranks: list[int] = [0] * len(recs)
    basis: list[list[Fraction]] = []
    for nu0 in range(len(recs) - 1, -1, -1):
        basis.append(vectors[nu0])
        ranks[nu0] = rank(basis)
    need = max(d + 1, 5)
    tail_index = len(recs) - need
    if tail_index < 0:
        return SpanRankReport(
            T=seq.T,
            d=d,
            ranks=tuple(ranks),
            stabilized_R=ranks[0],
            stable=False,
            tail_index=0,
        )
    return SpanRankReport(
        T=seq.T,
        d=d,
        ranks=tuple(ranks),
        stabilized_R=ranks[tail_index],
        stable=True,
        tail_index=tail_index,
    )


# ---------------------------------------------------------------------------
# Sampled comparison against the threshold constants


@dataclass(frozen=True)
class SampleOutcome:
    coefficients: tuple[Fraction, ...]
    exact_hit: bool
    estimate: Optional[ExponentEstimate]


@dataclass(frozen=True)
class BoundCheckReport:
    n: int
    d: int
    T: int
    seed: int
    samples: tuple[SampleOutcome, ...]
    resamples: int
    max_omega_hat: Optional[float]
    ordinary_bound: float
    uniform_bound: Optional[float]
    subspace_bound: Optional[float]


def _coerce_theta(L) -> TargetMatrix:
    if isinstance(L, AlgebraicSubspace):
        return L.theta
    if isinstance(L, TargetMatrix):
        return L
    if isinstance(L, SubspaceBasis):
        return theta_from_basis(L)
    raise DiophlabError(
        "expected an AlgebraicSubspace, TargetMatrix, or SubspaceBasis"
    )


def _sample_vector(
    theta: TargetMatrix, coeffs: list[Fraction], bits: int
) -> tuple[list[tuple[Fraction, Fraction]], Fraction]:
    """Intervals for xi_raw = sum_i c_i (e_i | Theta e_i) at `bits` precision."""
    th = theta.with_precision(bits)
    n, m = th.n, th.m
    rad = th.err * sum(abs(c) for c in coeffs)
    out = []
    for k in range(n):
        out.append((coeffs[k], coeffs[k]))  # x-part is exact
    for j in range(m):
        mid = sum(th.approx[j][i] * coeffs[i] for i in range(n))
        out.append((mid - rad, mid + rad))
    return out, rad


def _div_interval(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]):
    if b[0] <= 0 <= b[1]:
        raise ZeroDivisionError
    c = (a[0] / b[0], a[0] / b[1], a[1] / b[0], a[1] / b[1])
    return min(c), max(c)


def exponent_bound_report(
    L,
    sample_count: int,
    T: int,
    seed: int,
    precision: Optional[int] = None,
    workers: int = 1,
) -> BoundCheckReport:
    """Sample unit points of L, estimate exponents, compare to the thresholds.

    Vectors are drawn by seeded rejection sampling of dyadic coefficient
    vectors in [-1, 1]^n whose resulting last coordinate stays at least
    10^-3 away from 0 (rejections are counted); each accepted vector is
    normalized to (xi_1, ..., xi_{d-1}, 1) and scanned with the form
    metric. The threshold comparison is a consistency check, not a proof.
    """
    if sample_count < 1:
        raise DiophlabError("sample_count must be >= 1")
    theta = _coerce_theta(L)
    n = theta.n
    d = theta.n + theta.m
    bits = precision if precision is not None else _config.default_precision()
    rng = random.Random(seed)
    floor_last = Fraction(1, 1000)
    outcomes = []
    resamples = 0
    for _ in range(sample_count):
        while True:
            coeffs = [
                Fraction(rng.getrandbits(48) - (1 << 47), 1 << 47) for _ in range(n)
            ]
            vec, _ = _sample_vector(theta, coeffs, bits)
            last = vec[-1]
            if min(abs(last[0]), abs(last[1])) >= floor_last and not (
                last[0] <= 0 <= last[1]
            ):
                break
            resamples += 1
            if resamples > 1000 * sample_count:
                raise DiophlabError("rejection sampling failed to find usable vectors")

        def refine(req_bits: int, coeffs=coeffs) -> TargetMatrix:
            vec_b, _ = _sample_vector(theta, coeffs, req_bits + 64)
            last_b = vec_b[-1]
            rows = []
            err = Fraction(0)
            for iv in vec_b[:-1]:
                lo, hi = _div_interval(iv, last_b)
                rows.append([(lo + hi) / 2])
                err = max(err, (hi - lo) / 2)
            return TargetMatrix.from_approx(rows, err, refiner=refine)

        vt = VectorTarget(d=d, theta=refine(bits))
        seq = best_approximations(
            vt, metric="form", T=T, precision=bits, workers=workers,
            label=f"sampled point of a {n}-dim subspace of R^{d}",
        )
        if seq.exact_hit:
            outcomes.append(
                SampleOutcome(
                    coefficients=tuple(coeffs), exact_hit=True, estimate=None
                )
            )
        else:
            outcomes.append(
                SampleOutcome(
                    coefficients=tuple(coeffs),
                    exact_hit=False,
                    estimate=exponent_estimates(seq),
                )
            )
    bset = bound_constants(n, d)
    hats = [o.estimate.omega_hat_est for o in outcomes if o.estimate is not None]
    return BoundCheckReport(
        n=n,
        d=d,
        T=T,
        seed=seed,
        samples=tuple(outcomes),
        resamples=resamples,
        max_omega_hat=max(hats) if hats else None,
        ordinary_bound=float(bset.ordinary),
        uniform_bound=None if bset.uniform is None else bset.uniform.value,
        subspace_bound=None if bset.subspace is None else bset.subspace.value,
    )
