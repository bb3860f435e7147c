"""Exact scalars over Q and real quadratic extensions Q(sqrt(D)).

A value is a + b*sqrt(D) with rational a, b and a positive squarefree
integer D >= 2. Rational values are stored with b = 0 and D = None.
Radicands travel with the value: combining two genuinely irrational
values whose radicands differ raises MixedRadicandError at the offending
operation, not at construction, so heterogeneous rows like
(sqrt(2), sqrt(3), 1) are representable as long as nothing multiplies
or adds their irrational parts together.

All comparisons are exact. sign(a + b*sqrt(D)) is decided by comparing
a^2 with D*b^2 when a and b disagree in sign; equality of the two sides
is impossible for squarefree D >= 2, which is what makes the trichotomy
total.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Optional, Union

__all__ = [
    "ExactScalar",
    "ExactArithmeticError",
    "MixedRadicandError",
    "InvalidRadicandError",
    "rat",
    "sqrt_of",
]

RatLike = Union[int, Fraction]


class ExactArithmeticError(ValueError):
    """Base class for exact-arithmetic failures."""


class MixedRadicandError(ExactArithmeticError):
    """Two distinct irrational radicands met in one arithmetic operation."""


class InvalidRadicandError(ExactArithmeticError):
    """Radicand is not a squarefree integer >= 2."""


def _is_squarefree(n: int) -> bool:
    if n % 4 == 0:
        return False
    p = 3
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 2
    return True


_checked_radicands: dict[int, bool] = {}


def _check_radicand(D: int) -> int:
    if not isinstance(D, int) or isinstance(D, bool):
        raise InvalidRadicandError(f"radicand must be an int, got {D!r}")
    if D < 2:
        raise InvalidRadicandError(f"radicand must be >= 2, got {D}")
    ok = _checked_radicands.get(D)
    if ok is None:
        ok = _is_squarefree(D)
        _checked_radicands[D] = ok
    if not ok:
        raise InvalidRadicandError(f"radicand must be squarefree, got {D}")
    return D


_QUAD_RE = re.compile(
    r"""^\s*
    (?:(?P<a>[+-]?\d+(?:/\d+)?)\s*)?
    (?:(?P<sign>[+-])?\s*
       (?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?
       sqrt\(\s*(?P<D>\d+)\s*\)
    )?\s*$""",
    re.VERBOSE,
)


class ExactScalar:
    """Immutable exact number a + b*sqrt(D)."""

    __slots__ = ("a", "b", "D")

    a: Fraction
    b: Fraction
    D: Optional[int]

    def __init__(self, a: RatLike = 0, b: RatLike = 0, D: Optional[int] = None):
        a = Fraction(a)
        b = Fraction(b)
        if b == 0:
            D = None
        else:
            if D is None:
                raise InvalidRadicandError("irrational part needs a radicand")
            D = _check_radicand(D)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "D", D)

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def rational(cls, p: RatLike, q: RatLike = 1) -> "ExactScalar":
        return cls(Fraction(p, q) if q != 1 else Fraction(p))

    @classmethod
    def sqrt(cls, D: int, coeff: RatLike = 1) -> "ExactScalar":
        return cls(0, coeff, D)

    @classmethod
    def parse(cls, text: str) -> "ExactScalar":
        """Parse 'p/q', 'p', or quadratic 'a+b*sqrt(D)' (lenient signs)."""
        m = _QUAD_RE.match(text)
        if not m or (m.group("a") is None and m.group("D") is None):
            raise ExactArithmeticError(f"cannot parse exact scalar {text!r}")
        a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
        if m.group("D") is None:
            return cls(a)
        b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
        if m.group("sign") == "-":
            b = -b
        return cls(a, b, int(m.group("D")))

    # -- predicates -----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # a, b of opposite sign: compare a^2 against D*b^2. Equality would
        # force sqrt(D) rational, impossible for squarefree D >= 2.
        return (1 if a > 0 else -1) if a * a > self.D * b * b else (1 if b > 0 else -1)

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    # -- coercion -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "ExactScalar":
        if isinstance(other, ExactScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactScalar(other)
        return NotImplemented  # type: ignore[return-value]

    def _join(self, other: "ExactScalar") -> Optional[int]:
        if self.D is None:
            return other.D
        if other.D is None or other.D == self.D:
            return self.D
        raise MixedRadicandError(
            f"cannot combine sqrt({self.D}) with sqrt({other.D})"
        )

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        D = self._join(o)
        b = self.b + o.b
        return ExactScalar(self.a + o.a, b, D if b else None)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.a, -self.b, self.D)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.b != 0 and o.b != 0:
            if self.D != o.D:
                raise MixedRadicandError(
                    f"cannot combine sqrt({self.D}) with sqrt({o.D})"
                )
            a = self.a * o.a + self.D * self.b * o.b
            b = self.a * o.b + self.b * o.a
            return ExactScalar(a, b, self.D if b else None)
        D = self.D if self.b else o.D
        a = self.a * o.a
        b = self.a * o.b + self.b * o.a
        return ExactScalar(a, b, D if b else None)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if not self:
            raise ZeroDivisionError("exact scalar is zero")
        if self.b == 0:
            return ExactScalar(1 / self.a)
        n = self.a * self.a - self.D * self.b * self.b
        return ExactScalar(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ExactScalar(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def conjugate(self) -> "ExactScalar":
        return ExactScalar(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        """Field norm a^2 - D*b^2 (just a^2 for rationals)."""
        if self.b == 0:
            return self.a * self.a
        return self.a * self.a - self.D * self.b * self.b

    # -- comparisons ----------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.b == 0 and o.b == 0:
            return self.a == o.a
        return self.a == o.a and self.b == o.b and self.D == o.D

    def __lt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign() >= 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    # -- conversions ----------------------------------------------------

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise ExactArithmeticError(f"{self} is irrational")
        return self.a

    def dyadic_bounds(self, precision_bits: int = 64) -> tuple[Fraction, Fraction]:
        """Exact enclosure lo <= value <= hi with hi - lo <= 2**(1-precision_bits)."""
        if self.b == 0:
            return self.a, self.a
        # width is |b| * 2^-k, so widen k to absorb the coefficient
        k = precision_bits + math.ceil(abs(self.b)).bit_length()
        s = math.isqrt(self.D << (2 * k))
        lo_r = Fraction(s, 1 << k)        # lo_r <= sqrt(D) < lo_r + 2^-k
        hi_r = Fraction(s + 1, 1 << k)
        if self.b > 0:
            return self.a + self.b * lo_r, self.a + self.b * hi_r
        return self.a + self.b * hi_r, self.a + self.b * lo_r

    def approx(self, precision_bits: int = 64) -> Fraction:
        lo, hi = self.dyadic_bounds(precision_bits + 1)
        return (lo + hi) / 2

    def __float__(self) -> float:
        return float(self.approx(64))

    # -- formatting -----------------------------------------------------

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*sqrt({self.D})"

    def __repr__(self) -> str:
        return f"ExactScalar({self})"


def rat(p: RatLike, q: RatLike = 1) -> ExactScalar:
    return ExactScalar.rational(p, q)


def sqrt_of(D: int, coeff: RatLike = 1) -> ExactScalar:
    return ExactScalar.sqrt(D, coeff)
