"""Exponent thresholds for approximation to n-dimensional subspaces of R^d.

The ordinary threshold w(n, d) = n/(d-n) is exact. The two refined
thresholds are roots of explicit integer-coefficient polynomials built
from w; they are certified here by exact sign evaluation on rational
endpoints, with a fast float grid only used to locate the bracket.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import DiophlabError

__all__ = [
    "RootEnclosure",
    "BoundSet",
    "bound_constants",
    "g_root",
    "feasible_uniform_exponent",
]

_GRID_POINTS = 1 << 20
_TARGET_WIDTH = Fraction(1, 10**12)


@dataclass(frozen=True)
class RootEnclosure:
    """Certified bracket [lo, hi] around a real root of an integer-like polynomial.

    coefficients are ascending (c0 + c1 x + ...), exact rationals.
    residual is |p(midpoint)| evaluated exactly.
    """

    lo: Fraction
    hi: Fraction
    coefficients: tuple[Fraction, ...]
    residual: Fraction

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def value(self) -> float:
        return float(self.mid)

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class BoundSet:
    n: int
    d: int
    ordinary: Fraction
    uniform_poly: tuple[Fraction, ...]
    subspace_poly: tuple[Fraction, ...]
    uniform: Optional[RootEnclosure]
    subspace: Optional[RootEnclosure]
    degenerate: bool
    double_root: Optional[Fraction]
    warnings: tuple[str, ...] = ()


def _poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_derivative(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(c * k for k, c in enumerate(coeffs) if k >= 1)


def _uniform_poly(n: int, d: int, w: Fraction) -> tuple[Fraction, ...]:
    # x^d - w^(d-2) (1+w) x + w^(d-1), ascending coefficients
    coeffs = [Fraction(0)] * (d + 1)
    coeffs[0] = w ** (d - 1)
    coeffs[1] = -(w ** (d - 2)) * (1 + w)
    coeffs[d] = Fraction(1)
    return tuple(coeffs)


def _subspace_poly(n: int, d: int, w: Fraction) -> tuple[Fraction, ...]:
    # x^(d-n+1) - w^(d-n-1) (1+w) x + w^(d-n), ascending coefficients
    deg = d - n + 1
    coeffs = [Fraction(0)] * (deg + 1)
    coeffs[0] = w ** (d - n)
    coeffs[1] = -(w ** (d - n - 1)) * (1 + w)
    coeffs[deg] = Fraction(1)
    return tuple(coeffs)


def _sign_changes_positive(coeffs: Sequence[Fraction]) -> int:
    signs = [1 if c > 0 else -1 for c in coeffs if c]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _float_bracket(coeffs: Sequence[Fraction], w: Fraction) -> Optional[tuple[Fraction, Fraction]]:
    """Locate a sign-change cell of the polynomial on a 2^20 grid over (0, w).

    Float arithmetic only locates the cell; both endpoints are re-checked
    exactly before the cell is trusted.
    """
    step = w / _GRID_POINTS
    xs = np.linspace(0.0, float(w), _GRID_POINTS + 1)
    vals = np.zeros_like(xs)
    for c in reversed(coeffs):
        vals = vals * xs + float(c)
    sgn = np.sign(vals)
    flips = np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]
    for idx in flips:
        if idx + 1 >= _GRID_POINTS:
            continue  # cell touching w itself; w is always a root, skip
        lo = step * int(idx)
        hi = step * int(idx + 1)
        flo = _poly_eval(coeffs, lo)
        fhi = _poly_eval(coeffs, hi)
        if flo == 0:
            return lo, lo
        if fhi == 0:
            return hi, hi
        if (flo > 0) != (fhi > 0):
            return lo, hi
    return None


def _probe_bracket(coeffs: Sequence[Fraction], w: Fraction) -> Optional[tuple[Fraction, Fraction]]:
    """Exact fallback: walk x = w(1 - 2^-j) toward w until the sign flips.

    Valid whenever w is a simple root approached from below with negative
    values, which holds here whenever the derivative at w is positive.
    """
    f0 = _poly_eval(coeffs, Fraction(0))
    if f0 <= 0:
        return None
    for j in range(1, 300):
        x = w * (1 - Fraction(1, 2**j))
        fx = _poly_eval(coeffs, x)
        if fx == 0:
            return x, x
        if fx < 0:
            return Fraction(0), x
    return None


def _bisect(coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction) -> RootEnclosure:
    flo = _poly_eval(coeffs, lo)
    fhi = _poly_eval(coeffs, hi)
    if flo == 0:
        lo_, hi_ = lo, lo
    elif fhi == 0:
        lo_, hi_ = hi, hi
    else:
        if (flo > 0) == (fhi > 0):
            raise DiophlabError("bracket endpoints have equal sign")
        lo_, hi_ = lo, hi
        while hi_ - lo_ > _TARGET_WIDTH:
            mid = (lo_ + hi_) / 2
            fm = _poly_eval(coeffs, mid)
            if fm == 0:
                lo_ = hi_ = mid
                break
            if (fm > 0) == (flo > 0):
                lo_ = mid
                flo = fm
            else:
                hi_ = mid
    mid = (lo_ + hi_) / 2
    return RootEnclosure(lo_, hi_, tuple(coeffs), abs(_poly_eval(coeffs, mid)))


def _interior_root(
    coeffs: Sequence[Fraction], w: Fraction, warnings: list[str]
) -> Optional[RootEnclosure]:
    """Certified enclosure of the unique root in the open interval (0, w).

    Returns None when the polynomial has no interior root, i.e. when w is
    a double root (the degenerate case). That is decided exactly through
    the derivative sign at w.
    """
    fw = _poly_eval(coeffs, w)
    if fw != 0:
        raise DiophlabError("threshold polynomial must vanish at w")
    dfw = _poly_eval(_poly_derivative(coeffs), w)
    if _sign_changes_positive(coeffs) > 2:
        warnings.append("more than two sign changes; root selection may be ambiguous")
    if dfw == 0:
        # Double root at w: no interior root exists for these polynomials
        # (at most two positive roots by the sign-change count, both at w).
        return None
    if dfw < 0:
        # f > 0 just left of w and f(0) > 0 with at most two positive
        # roots total means no interior root.
        return None
    bracket = _float_bracket(coeffs, w)
    if bracket is None:
        bracket = _probe_bracket(coeffs, w)
        if bracket is not None:
            warnings.append("float grid missed the root; exact probe located it")
    if bracket is None:
        raise DiophlabError("failed to bracket interior root")
    enc = _bisect(coeffs, bracket[0], bracket[1])
    if not (0 < enc.lo and enc.hi < w):
        raise DiophlabError("interior root enclosure escaped (0, w)")
    return enc


def bound_constants(n: int, d: int) -> BoundSet:
    """Ordinary and refined exponent thresholds for (n, d), 1 <= n < d.

    The refined thresholds are the unique roots in (0, w) of the two
    companion polynomials; when n = 1 both polynomials have a double root
    at w itself and the set is flagged degenerate.
    """
    if not (isinstance(n, int) and isinstance(d, int)):
        raise TypeError("n and d must be integers")
    if not (1 <= n < d):
        raise DiophlabError(f"need 1 <= n < d, got n={n}, d={d}")
    w = Fraction(n, d - n)
    up = _uniform_poly(n, d, w)
    sp = _subspace_poly(n, d, w)
    warnings: list[str] = []
    uniform = _interior_root(up, w, warnings)
    subspace = _interior_root(sp, w, warnings)
    degenerate = uniform is None or subspace is None
    if degenerate and not (uniform is None and subspace is None):
        warnings.append("only one of the two polynomials degenerated")
    return BoundSet(
        n=n,
        d=d,
        ordinary=w,
        uniform_poly=up,
        subspace_poly=sp,
        uniform=uniform,
        subspace=subspace,
        degenerate=degenerate,
        double_root=w if degenerate else None,
        warnings=tuple(warnings),
    )


def g_root(r: int, omega_hat) -> RootEnclosure:
    """Unique positive root of x^(r-2) = c (x^(r-3) + ... + x + 1) with
    c = omega_hat / (1 - omega_hat), for r >= 3 and omega_hat in (0, 1).

    For r = 3 the root is exactly c. The root G satisfies
    (1 - omega_hat) G^(r-1) - G^(r-2) + omega_hat = 0.
    """
    if r < 3:
        raise DiophlabError("g_root needs r >= 3")
    om = Fraction(omega_hat)
    if not (0 < om < 1):
        raise DiophlabError("omega_hat must lie strictly between 0 and 1")
    c = om / (1 - om)
    if r == 3:
        coeffs = (-c, Fraction(1))
        return RootEnclosure(c, c, coeffs, Fraction(0))
    # p(x) = x^(r-2) - c (x^(r-3) + ... + 1), ascending
    coeffs = [-c] * (r - 2) + [Fraction(1)]
    coeffs = tuple(coeffs)
    # p(0) = -c < 0 and p(x) -> +inf; single sign change so the positive
    # root is unique. Grow hi until positive.
    hi = Fraction(max(1, math.ceil(c + 1)))
    while _poly_eval(coeffs, hi) <= 0:
        hi *= 2
    return _bisect(coeffs, Fraction(0), hi)


def feasible_uniform_exponent(n: int, d: int, omega_hat) -> bool:
    """Whether omega_hat is within the proven range for uniform subspace
    approximation: h(x) = x^(d-n+1) - w^(d-n-1)(1+w)x + w^(d-n) >= 0,
    with 0 <= omega_hat <= w. Decided exactly."""
    if not (1 <= n < d):
        raise DiophlabError(f"need 1 <= n < d, got n={n}, d={d}")
    om = Fraction(omega_hat)
    w = Fraction(n, d - n)
    if om < 0 or om > w:
        return False
    h = _poly_eval(_subspace_poly(n, d, w), om)
    return h >= 0
