"""Approximation targets: matrices, vectors, and constructed subspaces.

A TargetMatrix carries a rational approximation of each entry together
with a single error radius and, when possible, exact quadratic values or
a refiner callback. Downstream record scans rely on the error radius to
certify every comparison they make, so the invariant err <= 2^(1-precision)
is enforced here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import sympy

from . import _config
from .errors import DiophlabError, PrecisionError
from .exactnum import ExactScalar
from .subspaces import SubspaceBasis, subspace_basis

__all__ = [
    "TargetMatrix",
    "VectorTarget",
    "AlgebraicSubspace",
    "algebraic_subspace",
    "block_diagonal_subspace",
    "matrix_subspace_basis",
    "theta_from_basis",
]

_Interval = tuple[Fraction, Fraction]


def _precision_from_err(err: Fraction) -> int:
    """Largest p with err <= 2^(1-p); err = 0 maps to the escalation cap."""
    if err < 0:
        raise ValueError("error radius must be nonnegative")
    if err == 0:
        return _config.PRECISION_CAP_BITS
    # 2^(1-p) >= err  <=>  p <= 1 - log2(err)
    p = err.denominator.bit_length() - err.numerator.bit_length() + 2
    while Fraction(1, 2 ** max(p - 1, 0)) < err:
        p -= 1
    while Fraction(1, 2**p) >= err:
        p += 1
    # now 2^-p < err <= 2^-(p-1) = 2^(1-p)
    return p


@dataclass(frozen=True)
class TargetMatrix:
    """n -> m system of linear forms x |-> Theta x, with certified entry error."""

    n: int
    m: int
    approx: tuple[tuple[Fraction, ...], ...]
    err: Fraction
    precision: int
    exact: Optional[tuple[tuple[ExactScalar, ...], ...]] = field(
        default=None, compare=False, repr=False
    )
    refiner: Optional[Callable[[int], "TargetMatrix"]] = field(
        default=None, compare=False, repr=False
    )

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise DiophlabError("TargetMatrix needs n >= 1 and m >= 1")
        if len(self.approx) != self.m or any(len(r) != self.n for r in self.approx):
            raise DiophlabError("approx must be an m x n grid")
        if self.err < 0:
            raise DiophlabError("error radius must be nonnegative")
        if self.err > Fraction(1, 2 ** (self.precision - 1)):
            raise DiophlabError("error radius exceeds 2^(1-precision)")
        if self.exact is not None and (
            len(self.exact) != self.m or any(len(r) != self.n for r in self.exact)
        ):
            raise DiophlabError("exact entries must match the m x n shape")

    # -- constructors --------------------------------------------------

    @classmethod
    def from_exact(
        cls, rows: Sequence[Sequence], precision: Optional[int] = None
    ) -> "TargetMatrix":
        """Build from ExactScalar-coercible entries; approx at `precision` bits."""
        prec = precision if precision is not None else _config.default_precision()
        ex = tuple(
            tuple(_as_exact(v) for v in row) for row in rows
        )
        m = len(ex)
        n = len(ex[0]) if m else 0
        approx = []
        err = Fraction(0)
        for row in ex:
            arow = []
            for v in row:
                if v.is_rational:
                    arow.append(v.to_fraction())
                else:
                    lo, hi = v.dyadic_bounds(prec + 2)
                    arow.append((lo + hi) / 2)
                    err = max(err, (hi - lo) / 2)
            approx.append(tuple(arow))
        target = cls(
            n=n,
            m=m,
            approx=tuple(approx),
            err=err,
            precision=prec if err else _config.PRECISION_CAP_BITS,
            exact=ex,
        )
        return target

    @classmethod
    def from_rational(cls, rows: Sequence[Sequence]) -> "TargetMatrix":
        ex = tuple(
            tuple(ExactScalar.rational(Fraction(v)) for v in row) for row in rows
        )
        return cls.from_exact(ex)

    @classmethod
    def from_approx(
        cls,
        rows: Sequence[Sequence[Fraction]],
        err: Fraction,
        refiner: Optional[Callable[[int], "TargetMatrix"]] = None,
    ) -> "TargetMatrix":
        approx = tuple(tuple(Fraction(v) for v in row) for row in rows)
        m = len(approx)
        n = len(approx[0]) if m else 0
        return cls(
            n=n,
            m=m,
            approx=approx,
            err=Fraction(err),
            precision=_precision_from_err(Fraction(err)),
            refiner=refiner,
        )

    # -- queries -------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.err == 0 or self.exact is not None

    def exact_rows(self) -> tuple[tuple[ExactScalar, ...], ...]:
        if self.exact is not None:
            return self.exact
        if self.err == 0:
            return tuple(
                tuple(ExactScalar.rational(v) for v in row) for row in self.approx
            )
        raise DiophlabError("target has no exact entry values")

    def sup_float(self) -> float:
        """Upper bound on max |theta_ji| as a float."""
        worst = max(abs(v) for row in self.approx for v in row) + self.err
        return math.nextafter(float(worst), math.inf)

    def with_precision(self, bits: int) -> "TargetMatrix":
        """Return an equivalent target with err <= 2^(1-bits)."""
        if self.err <= Fraction(1, 2 ** (bits - 1)):
            return self
        if self.exact is not None:
            return TargetMatrix.from_exact(self.exact, precision=bits)
        if self.refiner is not None:
            out = self.refiner(bits)
            if out.err > Fraction(1, 2 ** (bits - 1)):
                raise PrecisionError(
                    f"refiner failed to reach {bits} bits (err={float(out.err)})"
                )
            return out
        raise PrecisionError(
            f"target fixed at {self.precision} bits, cannot reach {bits}"
        )

    def subspace_rows(self) -> tuple[tuple[Fraction, ...], ...]:
        """Rows (e_i | column_i(Theta)) spanning {(x, Theta x)}, approx values."""
        rows = []
        for i in range(self.n):
            head = tuple(
                Fraction(1) if k == i else Fraction(0) for k in range(self.n)
            )
            tail = tuple(self.approx[j][i] for j in range(self.m))
            rows.append(head + tail)
        return tuple(rows)


def _as_exact(v) -> ExactScalar:
    if isinstance(v, ExactScalar):
        return v
    if isinstance(v, str):
        return ExactScalar.parse(v)
    return ExactScalar.rational(Fraction(v))


@dataclass(frozen=True)
class VectorTarget:
    """Point target (xi_1, ..., xi_{d-1}, 1); the trailing 1 is implicit.

    Wraps the 1 -> (d-1) system q |-> q * xi, so records carry scalar
    denominators q in the x slot.
    """

    d: int
    theta: TargetMatrix

    def __post_init__(self):
        if self.theta.n != 1 or self.theta.m != self.d - 1:
            raise DiophlabError("VectorTarget needs an n=1, m=d-1 system")
        if self.d < 2:
            raise DiophlabError("VectorTarget needs d >= 2")

    @classmethod
    def from_values(
        cls, values: Sequence, precision: Optional[int] = None
    ) -> "VectorTarget":
        """values are xi_1..xi_{d-1}; the final coordinate 1 is implied."""
        col = [[_as_exact(v)] for v in values]
        return cls(d=len(col) + 1, theta=TargetMatrix.from_exact(col, precision))

    @classmethod
    def from_full(cls, values: Sequence, precision: Optional[int] = None):
        vals = [_as_exact(v) for v in values]
        if not vals or vals[-1] != ExactScalar.rational(1):
            raise DiophlabError("last coordinate must be exactly 1")
        return cls.from_values(vals[:-1], precision)

    @property
    def coordinates(self) -> tuple[Fraction, ...]:
        return tuple(row[0] for row in self.theta.approx)


def matrix_subspace_basis(theta: TargetMatrix) -> SubspaceBasis:
    """Exact basis of {(x, Theta x)}: rows (e_i | column_i of Theta)."""
    ex = theta.exact_rows()
    one = ExactScalar.rational(1)
    zero = ExactScalar.rational(0)
    rows = []
    for i in range(theta.n):
        head = [one if k == i else zero for k in range(theta.n)]
        tail = [ex[j][i] for j in range(theta.m)]
        rows.append(tuple(head + tail))
    return subspace_basis(rows, d=theta.n + theta.m)


def theta_from_basis(basis: SubspaceBasis) -> TargetMatrix:
    """Recover Theta from an exact basis whose leading n x n block is invertible."""
    from .linalg import rref

    mat, pivots = rref([list(row) for row in basis.rows])
    if tuple(pivots) != tuple(range(basis.n)):
        raise DiophlabError(
            "basis cannot be written as (x, Theta x): leading block is singular"
        )
    rows = []
    m = basis.d - basis.n
    for j in range(m):
        rows.append([mat[i][basis.n + j] for i in range(basis.n)])
    return TargetMatrix.from_exact(rows)


def block_diagonal_subspace(theta: TargetMatrix, copies: int) -> TargetMatrix:
    """Block-diagonal system with `copies` copies of theta on the diagonal."""
    if not isinstance(copies, int) or copies < 2:
        raise DiophlabError("copies must be an integer >= 2")
    n, m = theta.n, theta.m
    zero = Fraction(0)
    approx = []
    for block in range(copies):
        for j in range(m):
            row = [zero] * (n * copies)
            for i in range(n):
                row[block * n + i] = theta.approx[j][i]
            approx.append(tuple(row))
    exact = None
    if theta.exact is not None:
        ezero = ExactScalar.rational(0)
        exact = []
        for block in range(copies):
            for j in range(m):
                row = [ezero] * (n * copies)
                for i in range(n):
                    row[block * n + i] = theta.exact[j][i]
                exact.append(tuple(row))
        exact = tuple(exact)
    refiner = None
    if theta.refiner is not None or theta.exact is not None:
        refiner = lambda bits: block_diagonal_subspace(
            theta.with_precision(bits), copies
        )
    return TargetMatrix(
        n=n * copies,
        m=m * copies,
        approx=tuple(approx),
        err=theta.err,
        precision=theta.precision,
        exact=exact,
        refiner=refiner,
    )


# ---------------------------------------------------------------------------
# Number-field subspaces


def _iadd(a: _Interval, b: _Interval) -> _Interval:
    return (a[0] + b[0], a[1] + b[1])


def _isub(a: _Interval, b: _Interval) -> _Interval:
    return (a[0] - b[1], a[1] - b[0])


def _imul(a: _Interval, b: _Interval) -> _Interval:
    c = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(c), max(c))


def _idiv(a: _Interval, b: _Interval) -> _Interval:
    if b[0] <= 0 <= b[1]:
        raise ZeroDivisionError("interval divisor straddles zero")
    c = (a[0] / b[0], a[0] / b[1], a[1] / b[0], a[1] / b[1])
    return (min(c), max(c))


@dataclass(frozen=True)
class AlgebraicSubspace:
    """n-dimensional subspace of R^d built from a degree-d number field.

    The subspace is spanned by the coefficient vectors of x^j * q(x) for
    j < n, where q is the minimal polynomial divided by the linear factors
    of its n largest real roots. basis is exact for d = 2, otherwise the
    refinable theta carries certified numeric entries.
    """

    d: int
    n: int
    minpoly: tuple[int, ...]
    root_intervals: tuple[_Interval, ...]
    theta: TargetMatrix
    basis: Optional[SubspaceBasis] = field(default=None, compare=False)

    def vector_target(self, precision: Optional[int] = None) -> VectorTarget:
        """For n = 1: the point (q_0, ..., q_{d-2}, 1) on the line (q monic)."""
        if self.n != 1:
            raise DiophlabError("vector_target only defined for n = 1")
        prec = precision if precision is not None else _config.default_precision()
        coeffs, err = _line_coefficients(self.minpoly, prec)

        def refine(bits: int) -> TargetMatrix:
            c2, e2 = _line_coefficients(self.minpoly, bits)
            return TargetMatrix.from_approx([[v] for v in c2], e2, refiner=refine)

        theta = TargetMatrix.from_approx([[v] for v in coeffs], err, refiner=refine)
        return VectorTarget(d=self.d, theta=theta)


def _poly_object(coeffs: Sequence[int]):
    x = sympy.Symbol("x")
    expr = sum(int(c) * x**k for k, c in enumerate(coeffs))
    return sympy.Poly(expr, x)


def _validated_minpoly(minpoly: Sequence[int], n: int, d: Optional[int]) -> tuple[int, ...]:
    coeffs = tuple(int(c) for c in minpoly)
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    deg = len(coeffs) - 1
    if deg < 2:
        raise DiophlabError("minimal polynomial must have degree >= 2")
    if d is not None and d != deg:
        raise DiophlabError(f"declared d={d} but polynomial degree is {deg}")
    if not (1 <= n < deg):
        raise DiophlabError(f"need 1 <= n < d, got n={n}, d={deg}")
    poly = _poly_object(coeffs)
    if not poly.is_irreducible:
        raise DiophlabError("polynomial is reducible over the rationals")
    return coeffs


def _selected_root_intervals(
    coeffs: tuple[int, ...], n: int, prec: int
) -> list[_Interval]:
    """Certified intervals for the n largest real roots, largest first."""
    roots = _poly_object(coeffs).real_roots()
    if len(roots) < n:
        raise DiophlabError(
            f"polynomial has {len(roots)} real roots, need at least {n}"
        )
    dx = sympy.Rational(1, 2**prec)
    out = []
    for root in reversed(roots[-n:]):
        approx = root.eval_rational(dx=dx)
        mid = Fraction(int(approx.p), int(approx.q))
        rad = Fraction(1, 2**prec)
        out.append((mid - rad, mid + rad))
    return out


def _deflate(coeffs_iv: list[_Interval], root: _Interval) -> list[_Interval]:
    """Interval synthetic division by (x - root); remainder discarded."""
    deg = len(coeffs_iv) - 1
    quot: list[_Interval] = [None] * deg  # descending fill
    carry = coeffs_iv[deg]
    quot[deg - 1] = carry
    for k in range(deg - 1, 0, -1):
        carry = _iadd(coeffs_iv[k], _imul(carry, root))
        quot[k - 1] = carry
    return quot  # ascending coefficients of the quotient


def _quotient_intervals(
    coeffs: tuple[int, ...], roots: Sequence[_Interval]
) -> list[_Interval]:
    cur = [(Fraction(c), Fraction(c)) for c in coeffs]
    for root in roots:
        cur = _deflate(cur, root)
    return cur


def _line_coefficients(coeffs: tuple[int, ...], prec: int) -> tuple[list[Fraction], Fraction]:
    """For n = 1: ascending coefficients q_0..q_{d-2} of the monic quotient."""
    lc = coeffs[-1]
    work = prec + 128
    for _ in range(4):
        roots = _selected_root_intervals(coeffs, 1, work)
        q = _quotient_intervals(coeffs, roots)
        # make monic: leading coefficient is exactly lc
        q = [_idiv(iv, (Fraction(lc), Fraction(lc))) for iv in q]
        err = max((hi - lo) / 2 for lo, hi in q[:-1]) if len(q) > 1 else Fraction(0)
        if err <= Fraction(1, 2**prec):
            return [(lo + hi) / 2 for lo, hi in q[:-1]], err
        work *= 2
        if work > _config.PRECISION_CAP_BITS * 8:
            break
    raise PrecisionError("root refinement failed to certify line coefficients")


def _numeric_theta(coeffs: tuple[int, ...], n: int, prec: int) -> TargetMatrix:
    d = len(coeffs) - 1
    m = d - n
    work = prec + 128
    for _ in range(4):
        try:
            roots = _selected_root_intervals(coeffs, n, work)
            q = _quotient_intervals(coeffs, roots)  # length m+1, ascending
            # rows of the basis: x^j q, j = 0..n-1, as length-d vectors
            rows = []
            for j in range(n):
                row = [(Fraction(0), Fraction(0))] * j + list(q)
                row += [(Fraction(0), Fraction(0))] * (d - len(row))
                rows.append(row)
            # solve B X = Y where B is the leading n x n block; B[j][k] = q_{k-j}
            # (upper triangular with diagonal q_0), Y is the trailing block
            X: list[list[_Interval]] = [None] * n
            for j in range(n - 1, -1, -1):
                acc = list(rows[j][n:])
                for k in range(j + 1, n):
                    if k - j > m:
                        continue  # q_{k-j} = 0 beyond the quotient degree
                    coef = q[k - j]
                    acc = [_isub(a, _imul(coef, xv)) for a, xv in zip(acc, X[k])]
                X[j] = [_idiv(a, q[0]) for a in acc]
        except ZeroDivisionError:
            work *= 2
            if work > _config.PRECISION_CAP_BITS * 8:
                raise PrecisionError("triangular solve kept straddling zero")
            continue
        err = max((hi - lo) / 2 for xr in X for lo, hi in xr)
        if err <= Fraction(1, 2**prec):
            approx = [
                [(X[i][j][0] + X[i][j][1]) / 2 for i in range(n)] for j in range(m)
            ]
            return TargetMatrix.from_approx(
                approx, err, refiner=lambda bits: _numeric_theta(coeffs, n, bits)
            )
        work *= 2
        if work > _config.PRECISION_CAP_BITS * 8:
            break
    raise PrecisionError("root refinement failed to certify theta entries")


def _square_free_split(value: int) -> tuple[int, int]:
    """value = s^2 * D with D squarefree; returns (s, D). value > 0."""
    s = 1
    D = 1
    for p, e in sympy.factorint(value).items():
        s *= p ** (e // 2)
        if e % 2:
            D *= p
    return s, D


def _quadratic_exact(coeffs: tuple[int, ...], prec: int) -> AlgebraicSubspace:
    c0, c1, c2 = coeffs
    disc = c1 * c1 - 4 * c2 * c0
    if disc <= 0:
        raise DiophlabError("quadratic has no real root")
    s, D = _square_free_split(disc)
    if D == 1:
        raise DiophlabError("polynomial is reducible over the rationals")
    rt = ExactScalar.sqrt(D, Fraction(s, 2 * c2))
    base = ExactScalar.rational(Fraction(-c1, 2 * c2))
    r1 = base + rt
    r2 = base - rt
    hi_root, lo_root = (r1, r2) if (r1 - r2).sign() > 0 else (r2, r1)
    # q(x) = x - other_root; normalized slope is -1/other_root
    slope = -(lo_root.inverse())
    theta = TargetMatrix.from_exact([[slope]], precision=prec)
    one = ExactScalar.rational(1)
    basis = subspace_basis([(one, slope)], d=2)
    return AlgebraicSubspace(
        d=2,
        n=1,
        minpoly=coeffs,
        root_intervals=(hi_root.dyadic_bounds(prec),),
        theta=theta,
        basis=basis,
    )


def algebraic_subspace(
    minpoly: Sequence[int], n: int, d: Optional[int] = None,
    precision: Optional[int] = None,
) -> AlgebraicSubspace:
    """Badly approximable n-dim subspace of R^d from a degree-d minimal polynomial.

    Spanned by coefficient vectors of x^j q(x), j < n, where q is the
    polynomial divided by (x - theta_i) over its n largest real roots.
    Integer points near the subspace are nearly divisible by q, and the
    field norm bounds how near they can get. Needs at least n real roots.
    """
    prec = precision if precision is not None else _config.default_precision()
    coeffs = _validated_minpoly(minpoly, n, d)
    deg = len(coeffs) - 1
    if deg == 2:
        return _quadratic_exact(coeffs, prec)
    theta = _numeric_theta(coeffs, n, prec)
    roots = _selected_root_intervals(coeffs, n, prec)
    return AlgebraicSubspace(
        d=deg,
        n=n,
        minpoly=coeffs,
        root_intervals=tuple(roots),
        theta=theta,
        basis=None,
    )
