"""Best-approximation record scans with certified decisions.

The float kernel only nominates candidates; every record, tie, and
exact hit is decided here on exact rational intervals derived from the
target's error radius. A comparison that intervals cannot settle doubles
the working precision (through the target's refiner) up to a hard cap
and then raises PrecisionError instead of guessing.

A record must beat every point of sup-norm up to and including its own
shell, so shells are processed as groups: the shell minimum (lex-smallest
on ties, tie flagged) is compared against the running minimum of the
previous shells. That reading makes M strictly increasing and psi
strictly decreasing along the sequence by construction.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from . import _config, kernels
from .errors import DiophlabError, PrecisionError, ResourceCapError
from .exactnum import ExactScalar
from .linalg import rref
from .targets import TargetMatrix, VectorTarget

__all__ = [
    "BestApproxRecord",
    "BestApproxSequence",
    "best_approximations",
    "bad_constant_estimate",
]

_MAX_SCAN_POINTS = 6 * 10**8
_MAX_EXACT_POINTS = 5 * 10**5


@dataclass(frozen=True)
class BestApproxRecord:
    x: tuple[int, ...]
    y: tuple[int, ...]
    M: int
    psi_lo: Fraction
    psi_hi: Fraction
    exact_hit: bool = False
    tied: bool = False

    @property
    def z(self) -> tuple[int, ...]:
        return self.x + self.y

    @property
    def psi(self) -> float:
        return float((self.psi_lo + self.psi_hi) / 2)


@dataclass(frozen=True)
class BestApproxSequence:
    label: str
    metric: str
    n: int
    m: int
    T: int
    records: tuple[BestApproxRecord, ...]
    tie_flag: bool
    exact_hit: bool
    product_min_lo: Optional[Fraction]
    product_min_hi: Optional[Fraction]
    # same minimum restricted to |x| > floor(sqrt(T)); None when that
    # window is empty or the scan carries no product stream
    product_tail_lo: Optional[Fraction]
    product_tail_hi: Optional[Fraction]
    tail_window_start: int
    scanned: int
    precision_bits: int
    kernel: str

    @property
    def d(self) -> int:
        return self.n + self.m


def _round_half_up(v: Fraction) -> int:
    return math.floor(v + Fraction(1, 2))


def _dist_to_int_interval(lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Range of dist(v, Z) for v in [lo, hi]."""
    half = Fraction(1, 2)
    if hi - lo >= 1:
        return Fraction(0), half
    k = _round_half_up((lo + hi) / 2)
    a = lo - k
    b = hi - k
    fa = min(abs(a), 1 - abs(a))
    fb = min(abs(b), 1 - abs(b))
    dlo = Fraction(0) if a <= 0 <= b else min(fa, fb)
    dhi = half if (a <= -half <= b or a <= half <= b) else max(fa, fb)
    return dlo, dhi


def _sqrt_bounds(lo: Fraction, hi: Fraction, bits: int = 80) -> tuple[Fraction, Fraction]:
    lo = max(lo, Fraction(0))
    scale = 1 << (2 * bits)
    s_lo = math.isqrt(math.floor(lo * scale))
    s_hi = math.isqrt(math.ceil(hi * scale)) + 1
    return Fraction(s_lo, 1 << bits), Fraction(s_hi, 1 << bits)


class _FormEvaluator:
    """Exact interval values of psi for one target at an adjustable precision."""

    def __init__(self, base: TargetMatrix, bits: int):
        self.base = base
        self.bits = 0
        self.th = base
        self._set(bits)

    def _set(self, bits: int):
        self.th = self.base.with_precision(bits)
        self.bits = bits

    def escalate(self):
        nxt = max(self.bits * 2, 64)
        if nxt > _config.PRECISION_CAP_BITS:
            raise PrecisionError(
                "precision cap reached while separating record comparisons"
            )
        self._set(nxt)

    def value_intervals(self, x: Sequence[int]) -> list[tuple[Fraction, Fraction]]:
        rad = self.th.err * sum(abs(v) for v in x)
        out = []
        for row in self.th.approx:
            mid = sum(c * v for c, v in zip(row, x))
            out.append((mid - rad, mid + rad))
        return out

    def psi_interval(self, x: Sequence[int]) -> tuple[Fraction, Fraction]:
        lo_best = Fraction(0)
        hi_best = Fraction(0)
        for vlo, vhi in self.value_intervals(x):
            dlo, dhi = _dist_to_int_interval(vlo, vhi)
            lo_best = max(lo_best, dlo)
            hi_best = max(hi_best, dhi)
        return lo_best, hi_best

    def compare(self, a, b) -> int:
        """-1/0/+1 for psi(a) vs psi(b); refines until intervals settle.

        0 is returned only on certified exact equality (point intervals).
        """
        while True:
            alo, ahi = self.psi_interval(a)
            blo, bhi = self.psi_interval(b)
            if ahi < blo:
                return -1
            if alo > bhi:
                return 1
            if alo == ahi and blo == bhi:
                return 0
            self.escalate()

    def nearest_vector(self, x: Sequence[int]) -> tuple[int, ...]:
        """Componentwise nearest integer vector to Theta x; refines until
        unambiguous (exact half-integers round half-up)."""
        half = Fraction(1, 2)
        while True:
            ys = []
            ok = True
            for vlo, vhi in self.value_intervals(x):
                k = _round_half_up((vlo + vhi) / 2)
                if vlo == vhi:
                    ys.append(k)
                    continue
                if vlo - k <= -half or vhi - k >= half:
                    ok = False
                    break
                ys.append(k)
            if ok:
                return tuple(ys)
            self.escalate()


def _sup(x: Sequence[int]) -> int:
    return max(abs(v) for v in x)


def _chunk_ranges(T: int, n: int, workers: int) -> list[tuple[int, int]]:
    if workers <= 1 or T < workers * 4:
        return [(1, T)]
    # balance by shell weight ~ M^(n-1)
    total = sum(float(M) ** (n - 1) for M in range(1, T + 1))
    bounds = []
    acc = 0.0
    start = 1
    target = total / workers
    for M in range(1, T + 1):
        acc += float(M) ** (n - 1)
        if acc >= target and M < T:
            bounds.append((start, M))
            start = M + 1
            acc = 0.0
    bounds.append((start, T))
    return bounds


def _run_kernel(theta_f, T, margin_rec, margin_prod, n, m, workers, cap):
    ranges = _chunk_ranges(T, n, workers)
    if len(ranges) == 1:
        rec, prod, _, _, scanned = kernels.scan_stream(
            theta_f, T, margin_rec, margin_prod, n, m, 1, T, cap=cap
        )
        return rec, prod, scanned

    def work(rng):
        lo, hi = rng
        return kernels.scan_stream(
            theta_f, T, margin_rec, margin_prod, n, m, lo, hi, cap=cap
        )

    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(work, ranges))
    rec: list = []
    prod: list = []
    scanned = 0
    for r, p, _, _, s in parts:
        rec.extend(r)
        prod.extend(p)
        scanned += s
    if len(rec) + len(prod) > cap:
        raise ResourceCapError("candidate flood after merging worker chunks")
    return rec, prod, scanned


def _shell_winner(ev: _FormEvaluator, xs: list[tuple[int, ...]]):
    """Lex-smallest point attaining the shell minimum, plus an in-shell tie flag."""
    best = xs[0]
    tied = False
    for x in xs[1:]:
        c = ev.compare(x, best)
        if c < 0:
            best = x
            tied = False
        elif c == 0:
            tied = True  # best stays: it is lex-earlier
    return best, tied


def _form_scan(
    th0: TargetMatrix, T: int, bits: int, workers: int, cap: int, label: str
) -> BestApproxSequence:
    n, m = th0.n, th0.m
    approx_points = ((2 * T + 1) ** n) // 2
    if approx_points > _MAX_SCAN_POINTS:
        raise ResourceCapError(f"scan of ~{approx_points:.2g} points exceeds the cap")
    # float margins want err small against 1/(n T); they stay sound at any
    # err (computed from it below), so a fixed-precision target caps the bump
    need = 62 + (n * T).bit_length()
    if th0.refiner is None and th0.exact is None:
        need = min(need, th0.precision)
    ev = _FormEvaluator(th0, max(bits, need))
    th = ev.th
    err_f = math.nextafter(float(th.err), math.inf)
    sup = th.sup_float()
    e_psi = n * T * (err_f + sup * 2.0**-50)
    margin_rec = 2.5 * e_psi
    e_prod = float(T) ** n * (m * 2.0 ** (1 - m) * e_psi + 2.0**-48)
    margin_prod = 2.5 * e_prod
    theta_f = np.array([[float(c) for c in row] for row in th.approx], dtype=np.float64)
    rec_c, prod_c, scanned = _run_kernel(
        theta_f, T, margin_rec, margin_prod, n, m, workers, cap
    )

    ordered = sorted(set(rec_c), key=lambda x: (_sup(x), x))
    chosen: list[tuple[tuple[int, ...], bool]] = []  # (x, tied)
    tie_flag = False
    exact_hit = False
    incumbent: Optional[tuple[int, ...]] = None
    for M, group in itertools.groupby(ordered, key=_sup):
        xs = list(group)
        best, shell_tie = _shell_winner(ev, xs)
        if incumbent is None:
            take, tie_here = True, shell_tie
        else:
            c = ev.compare(best, incumbent)
            if c < 0:
                take, tie_here = True, shell_tie
            elif c == 0:
                # equal to the running minimum: incumbent keeps the record
                chosen[-1] = (chosen[-1][0], True)
                tie_flag = True
                continue
            else:
                continue
        if take:
            chosen.append((best, tie_here))
            tie_flag = tie_flag or tie_here
            incumbent = best
            plo, phi = ev.psi_interval(best)
            if phi == 0:
                exact_hit = True
                break

    # final evaluation at the settled precision: intervals only shrink, so
    # the strict ordering decided above is preserved
    out_records = []
    for x, tied in chosen:
        plo, phi = ev.psi_interval(x)
        y = ev.nearest_vector(x)
        out_records.append(
            BestApproxRecord(
                x=x,
                y=y,
                M=_sup(x),
                psi_lo=plo,
                psi_hi=phi,
                exact_hit=(phi == 0),
                tied=tied,
            )
        )

    def exact_product_min(cands):
        lo_min = hi_min = None
        for x in sorted(set(cands), key=lambda x: (_sup(x), x)):
            M = _sup(x)
            plo, phi = ev.psi_interval(x)
            scale = Fraction(M) ** n
            lo = scale * plo**m
            hi = scale * phi**m
            if lo_min is None:
                lo_min, hi_min = lo, hi
            else:
                lo_min = min(lo_min, lo)
                hi_min = min(hi_min, hi)
        return lo_min, hi_min

    t0 = math.isqrt(T) + 1
    if exact_hit:
        pm_lo = pm_hi = Fraction(0)
        pt_lo = pt_hi = Fraction(0)
    else:
        pm_lo, pm_hi = exact_product_min(prod_c)
        pt_lo = pt_hi = None
        if t0 <= T:
            # runmin0=0 with a zero record margin keeps the second pass a
            # pure product stream over the tail window
            _, prod_t, _, _, _ = kernels.scan_stream(
                theta_f, T, 0.0, margin_prod, n, m, t0, T, runmin0=0.0, cap=cap
            )
            pt_lo, pt_hi = exact_product_min(prod_t)
    return BestApproxSequence(
        label=label,
        metric="form",
        n=n,
        m=m,
        T=T,
        records=tuple(out_records),
        tie_flag=tie_flag,
        exact_hit=exact_hit,
        product_min_lo=pm_lo,
        product_min_hi=pm_hi,
        product_tail_lo=pt_lo,
        product_tail_hi=pt_hi,
        tail_window_start=t0,
        scanned=scanned,
        precision_bits=ev.bits,
        kernel=kernels.KERNEL_NAME,
    )


def _gram_inverse(ex_rows):
    """Inverse of G = I + Theta Theta^T over the exact scalar field."""
    m = len(ex_rows)
    n = len(ex_rows[0])
    one = ExactScalar.rational(1)
    zero = ExactScalar.rational(0)
    G = []
    for a in range(m):
        row = []
        for b in range(m):
            acc = one if a == b else zero
            for i in range(n):
                acc = acc + ex_rows[a][i] * ex_rows[b][i]
            row.append(acc)
        G.append(row)
    aug = [G[a] + [one if b == a else zero for b in range(m)] for a in range(m)]
    red, pivots = rref(aug)
    if list(pivots) != list(range(m)):
        raise DiophlabError("gram matrix failed to invert")
    return [row[m:] for row in red]


def _subspace_scan(
    th0: TargetMatrix, T: int, bits: int, label: str
) -> BestApproxSequence:
    if not th0.is_exact:
        raise DiophlabError(
            "subspace metric needs exact target entries (rational or quadratic)"
        )
    n, m = th0.n, th0.m
    if (2 * T + 1) ** n > 2 * _MAX_EXACT_POINTS:
        raise ResourceCapError("subspace metric scan is exact-only; T too large")
    ex = th0.exact_rows()
    ginv = _gram_inverse(ex)
    zero = ExactScalar.rational(0)
    sup = th0.sup_float()
    S = m * n * sup * sup
    halfwidth = math.ceil(0.5 * math.sqrt(m * (1.0 + S)) + 0.5)
    offsets = range(-halfwidth, halfwidth + 1)

    def psi_sq_best(x: tuple[int, ...]):
        v = []
        for j in range(m):
            acc = zero
            for i in range(n):
                acc = acc + ex[j][i] * x[i]
            v.append(acc)
        centers = []
        for vj in v:
            lo, hi = vj.dyadic_bounds(64)
            centers.append(_round_half_up((lo + hi) / 2))
        best = None
        best_y = None

        def search(j, y_acc):
            nonlocal best, best_y
            if j == m:
                r = [ExactScalar.rational(y_acc[k]) - v[k] for k in range(m)]
                val = zero
                for a in range(m):
                    for b in range(m):
                        val = val + r[a] * ginv[a][b] * r[b]
                if best is None or (val - best).sign() < 0:
                    best, best_y = val, tuple(y_acc)
                elif (val - best).sign() == 0 and tuple(y_acc) < best_y:
                    best_y = tuple(y_acc)
                return
            for off in offsets:
                search(j + 1, y_acc + [centers[j] + off])

        search(0, [])
        return best, best_y

    chosen = []  # (x, y, psi_sq, tied)
    tie_flag = False
    exact_hit = False
    runmin = None
    prod2_min = None
    prod2_tail = None
    tail_t0 = math.isqrt(T) + 1
    scanned = 0
    for M in range(1, T + 1):
        shell_best = None
        shell_x = None
        shell_y = None
        shell_tie = False
        for row in kernels.shell_points(n, M):
            x = tuple(int(v) for v in row)
            scanned += 1
            val, y = psi_sq_best(x)
            scale2 = ExactScalar.rational(Fraction(M) ** (2 * n))
            p2 = scale2 * (val**m)
            if prod2_min is None or (p2 - prod2_min).sign() < 0:
                prod2_min = p2
            if M >= tail_t0 and (
                prod2_tail is None or (p2 - prod2_tail).sign() < 0
            ):
                prod2_tail = p2
            if shell_best is None or (val - shell_best).sign() < 0:
                shell_best, shell_x, shell_y = val, x, y
                shell_tie = False
            elif (val - shell_best).sign() == 0:
                shell_tie = True
        if runmin is None or (shell_best - runmin).sign() < 0:
            chosen.append((shell_x, shell_y, shell_best, shell_tie))
            tie_flag = tie_flag or shell_tie
            runmin = shell_best
            if shell_best.sign() == 0:
                exact_hit = True
                break
        elif (shell_best - runmin).sign() == 0:
            tie_flag = True
            x0, y0, v0, _ = chosen[-1]
            chosen[-1] = (x0, y0, v0, True)
    records = []
    for x, y, val, tied in chosen:
        hit = val.sign() == 0
        if hit:
            plo = phi = Fraction(0)
        else:
            lo2, hi2 = val.dyadic_bounds(160)
            plo, phi = _sqrt_bounds(lo2, hi2)
        records.append(
            BestApproxRecord(
                x=x, y=y, M=_sup(x), psi_lo=plo, psi_hi=phi,
                exact_hit=hit, tied=tied,
            )
        )
    def sqrt_pair(p2):
        if p2 is None:
            return None, None
        lo2, hi2 = p2.dyadic_bounds(160)
        return _sqrt_bounds(lo2, hi2)

    if exact_hit:
        pm_lo = pm_hi = Fraction(0)
        pt_lo = pt_hi = Fraction(0)
    else:
        pm_lo, pm_hi = sqrt_pair(prod2_min)
        pt_lo, pt_hi = sqrt_pair(prod2_tail)
    return BestApproxSequence(
        label=label,
        metric="subspace",
        n=n,
        m=m,
        T=T,
        records=tuple(records),
        tie_flag=tie_flag,
        exact_hit=exact_hit,
        product_min_lo=pm_lo,
        product_min_hi=pm_hi,
        product_tail_lo=pt_lo,
        product_tail_hi=pt_hi,
        tail_window_start=tail_t0,
        scanned=scanned,
        precision_bits=bits,
        kernel="exact",
    )


def best_approximations(
    target: Union[TargetMatrix, VectorTarget],
    metric: str = "form",
    T: int = 100,
    precision: Optional[int] = None,
    workers: int = 1,
    cap: int = 10**7,
    label: Optional[str] = None,
) -> BestApproxSequence:
    """Record minima of psi over 0 < |x|_sup <= T, scanned exhaustively.

    metric 'form' uses psi = max_j dist((Theta x)_j, Z) with y the nearest
    integer vector; metric 'subspace' uses the Euclidean distance from
    z = (x, y) to the subspace {(x, Theta x)}, minimized over y. The x
    scan covers one representative per antipodal pair (first nonzero
    coordinate positive); sup-norm on x, Euclidean for subspace distance.
    """
    if not isinstance(T, int) or T < 1:
        raise DiophlabError("T must be a positive integer")
    if isinstance(target, VectorTarget):
        th0 = target.theta
        auto_label = f"vector target in R^{target.d}"
    elif isinstance(target, TargetMatrix):
        th0 = target
        auto_label = f"{th0.m}x{th0.n} system"
    else:
        raise DiophlabError("target must be a TargetMatrix or VectorTarget")
    bits = precision if precision is not None else _config.default_precision()
    name = label if label is not None else auto_label
    if metric == "form":
        return _form_scan(th0, T, bits, workers, cap, name)
    if metric == "subspace":
        return _subspace_scan(th0, T, bits, name)
    raise DiophlabError("metric must be 'form' or 'subspace'")


def bad_constant_estimate(seq: BestApproxSequence, n: int, m: int) -> Fraction:
    """Estimate of the asymptotic approximation constant liminf M^n psi^m.

    Takes the minimum of M^n psi^m over every scanned point with
    |x| > floor(sqrt(T)): the constant is a tail property, and products at
    small |x| are transients of the finite box that would otherwise pin
    the minimum forever (q = 1 already does for the golden ratio).  Falls
    back to the full scan range when the window is empty (T <= 3).

    Returns the certified upper endpoint of the tracked interval; for the
    form metric its width is bounded by the scan margins, for the exact
    subspace metric by the dyadic sqrt rounding.
    """
    if not seq.records:
        raise DiophlabError("sequence has no records")
    if seq.n != n or seq.m != m:
        raise DiophlabError(
            f"sequence was scanned with (n, m) = ({seq.n}, {seq.m}), not ({n}, {m})"
        )
    if seq.exact_hit:
        return Fraction(0)
    if seq.product_tail_hi is not None:
        return seq.product_tail_hi
    if seq.product_min_hi is None:
        raise DiophlabError("sequence carries no product stream")
    return seq.product_min_hi
