"""Multivariate polynomials with exact rational coefficients.

Everything here is exact: evaluation, differentiation, Taylor shift, and
the interval range enclosure all run on Fractions. polynomial_range is the
single source of truth for "certified bound over a ball" claims made by
the game engine, so its enclosure must be sound (true range contained in
the reported interval) for every input.
"""

from __future__ import annotations

import heapq
import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

__all__ = [
    "MultiPolynomial",
    "RangeResult",
    "polynomial_range",
    "parse_polynomial",
]


class MultiPolynomial:
    """Polynomial in r variables z1..zr; terms map exponent tuples to coefficients."""

    __slots__ = ("r", "terms")

    def __init__(self, r: int, terms: Mapping[tuple[int, ...], Fraction]):
        if r < 0:
            raise ValueError("variable count must be >= 0")
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, coef in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != r or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent tuple {exp} for r={r}")
            coef = Fraction(coef)
            if coef:
                clean[exp] = clean.get(exp, Fraction(0)) + coef
        self.r = r
        self.terms = {e: c for e, c in clean.items() if c}

    # -- constructors --------------------------------------------------

    @classmethod
    def constant(cls, r: int, value) -> "MultiPolynomial":
        return cls(r, {(0,) * r: Fraction(value)})

    @classmethod
    def variable(cls, r: int, i: int) -> "MultiPolynomial":
        """The coordinate z_{i+1} (0-based index i)."""
        exp = [0] * r
        exp[i] = 1
        return cls(r, {tuple(exp): Fraction(1)})

    @classmethod
    def zero(cls, r: int) -> "MultiPolynomial":
        return cls(r, {})

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; 0 for constants and for the zero polynomial."""
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.r, Fraction(0))

    def __eq__(self, other):
        return (
            isinstance(other, MultiPolynomial)
            and self.r == other.r
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.r, frozenset(self.terms.items())))

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "MultiPolynomial") -> "MultiPolynomial":
        if self.r != other.r:
            raise ValueError("variable count mismatch")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPolynomial(self.r, out)

    def __neg__(self) -> "MultiPolynomial":
        return MultiPolynomial(self.r, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPolynomial") -> "MultiPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "MultiPolynomial":
        if isinstance(other, (int, Fraction)):
            return MultiPolynomial(
                self.r, {e: c * other for e, c in self.terms.items()}
            )
        if self.r != other.r:
            raise ValueError("variable count mismatch")
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return MultiPolynomial(self.r, out)

    __rmul__ = __mul__

    # -- calculus ------------------------------------------------------

    def partial(self, i: int) -> "MultiPolynomial":
        """d/dz_{i+1} (0-based index i)."""
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = out.get(tuple(ne), Fraction(0)) + c * e[i]
        return MultiPolynomial(self.r, out)

    def gradient(self) -> list["MultiPolynomial"]:
        return [self.partial(i) for i in range(self.r)]

    def partials_of_orders(self, lo: int, hi: int) -> list["MultiPolynomial"]:
        """All distinct partial derivatives with order in [lo, hi].

        Mixed partials commute, so each multi-index is taken once.
        """
        out = []
        for order in range(lo, hi + 1):
            for combo in itertools.combinations_with_replacement(range(self.r), order):
                p = self
                for i in combo:
                    p = p.partial(i)
                    if p.is_zero:
                        break
                if not p.is_zero:
                    out.append(p)
        return out

    # -- evaluation ----------------------------------------------------

    def evaluate(self, point: Sequence) -> Fraction:
        pt = [Fraction(x) for x in point]
        if len(pt) != self.r:
            raise ValueError("point dimension mismatch")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x**k
            total += v
        return total

    def evaluate_float(self, point: Sequence[float]) -> float:
        total = 0.0
        for e, c in self.terms.items():
            v = float(c)
            for x, k in zip(point, e):
                if k:
                    v *= x**k
            total += v
        return total

    def shift(self, center: Sequence) -> "MultiPolynomial":
        """Taylor shift: returns g with g(h) = f(center + h), exactly."""
        c = [Fraction(x) for x in center]
        if len(c) != self.r:
            raise ValueError("center dimension mismatch")
        cur = self
        for i in range(self.r):
            if not c[i]:
                continue
            out: dict[tuple[int, ...], Fraction] = {}
            for e, coef in cur.terms.items():
                k = e[i]
                if k == 0:
                    out[e] = out.get(e, Fraction(0)) + coef
                    continue
                for j in range(k + 1):
                    ne = list(e)
                    ne[i] = j
                    key = tuple(ne)
                    out[key] = out.get(key, Fraction(0)) + coef * math.comb(k, j) * c[
                        i
                    ] ** (k - j)
            cur = MultiPolynomial(self.r, out)
        return cur

    # -- formatting ----------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))
        parts = []
        for e in keys:
            c = self.terms[e]
            vars_part = "*".join(
                f"z{i + 1}" + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(e)
                if k
            )
            if not vars_part:
                body = str(abs(c))
            elif abs(c) == 1:
                body = vars_part
            else:
                body = f"{abs(c)}*{vars_part}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPolynomial(r={self.r}, {self})"


_TERM_RE = re.compile(
    r"""^\s*
    (?P<coef>[+-]?\d+(?:/\d+)?)?\s*\*?\s*
    (?P<vars>(?:z\d+(?:\^\d+)?\s*\*?\s*)*)\s*$""",
    re.VERBOSE,
)
_VAR_RE = re.compile(r"z(\d+)(?:\^(\d+))?")


def parse_polynomial(text: str, r: Optional[int] = None) -> MultiPolynomial:
    """Parse 'z1^2*z2 - 3/4*z3 + 2' style polynomial text.

    Variables are z1, z2, ...; r defaults to the largest index mentioned.
    """
    chunks = re.split(r"(?=[+-])", text.replace(" ", ""))
    raw_terms: list[tuple[Fraction, dict[int, int]]] = []
    max_var = 0
    for chunk in chunks:
        if not chunk:
            continue
        sign = 1
        while chunk and chunk[0] in "+-":
            if chunk[0] == "-":
                sign = -sign
            chunk = chunk[1:]
        if not chunk:
            raise ValueError("dangling sign in polynomial text")
        m = _TERM_RE.match(chunk)
        if not m or (m.group("coef") is None and not m.group("vars")):
            raise ValueError(f"cannot parse polynomial term {chunk!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        powers: dict[int, int] = {}
        for vm in _VAR_RE.finditer(m.group("vars") or ""):
            idx = int(vm.group(1))
            if idx < 1:
                raise ValueError(f"variable indices start at z1, got z{idx}")
            exp = int(vm.group(2) or 1)
            powers[idx] = powers.get(idx, 0) + exp
            max_var = max(max_var, idx)
        raw_terms.append((sign * coef, powers))
    if not raw_terms:
        raise ValueError("empty polynomial text")
    rr = r if r is not None else max_var
    terms: dict[tuple[int, ...], Fraction] = {}
    for coef, powers in raw_terms:
        if any(idx > rr for idx in powers):
            raise ValueError("variable index exceeds declared r")
        exp = tuple(powers.get(i + 1, 0) for i in range(rr))
        terms[exp] = terms.get(exp, Fraction(0)) + coef
    return MultiPolynomial(rr, terms)


# ---------------------------------------------------------------------------
# Certified range over a ball


@dataclass(frozen=True)
class RangeResult:
    lo: Fraction
    hi: Fraction
    abs_lower: Fraction
    boxes: int
    straddling: bool

    @property
    def abs_upper(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))


def _pow_interval(lo: Fraction, hi: Fraction, k: int) -> tuple[Fraction, Fraction]:
    if k == 0:
        return Fraction(1), Fraction(1)
    if k % 2 == 1 or lo >= 0:
        return lo**k, hi**k
    if hi <= 0:
        return hi**k, lo**k
    return Fraction(0), max(lo**k, hi**k)


def _eval_box(poly: MultiPolynomial, box) -> tuple[Fraction, Fraction]:
    lo = Fraction(0)
    hi = Fraction(0)
    for e, c in poly.terms.items():
        tlo, thi = Fraction(1), Fraction(1)
        for (blo, bhi), k in zip(box, e):
            if k == 0:
                continue
            plo, phi = _pow_interval(blo, bhi, k)
            cands = (tlo * plo, tlo * phi, thi * plo, thi * phi)
            tlo, thi = min(cands), max(cands)
        if c > 0:
            lo += c * tlo
            hi += c * thi
        else:
            lo += c * thi
            hi += c * tlo
    return lo, hi


def _box_meets_ball(box, radius: Fraction) -> bool:
    dist_sq = Fraction(0)
    for blo, bhi in box:
        if blo > 0:
            dist_sq += blo * blo
        elif bhi < 0:
            dist_sq += bhi * bhi
    return dist_sq <= radius * radius


def polynomial_range(f: MultiPolynomial, ball, max_boxes: int = 256) -> RangeResult:
    """Sound enclosure of f over a Euclidean ball, plus a lower bound for |f|.

    The ball is anything with .center (sequence of rationals) and .radius
    (positive rational). Strategy: exact Taylor shift to the center, then
    adaptive box subdivision of [-rho, rho]^r; sub-boxes disjoint from the
    ball are discarded, so the union of kept boxes always covers the ball.
    abs_lower is 0 whenever any kept box straddles zero.
    """
    center = list(ball.center)
    rho = Fraction(ball.radius)
    if rho <= 0:
        raise ValueError("ball radius must be positive")
    if len(center) != f.r:
        raise ValueError("ball dimension does not match polynomial")
    if not f.terms:
        return RangeResult(Fraction(0), Fraction(0), Fraction(0), 1, False)
    g = f.shift(center)
    root = tuple((-rho, rho) for _ in range(f.r))
    first = _eval_box(g, root)
    counter = itertools.count()
    # Heap priority: straddling boxes first, then wider value-intervals.
    def key(iv):
        lo, hi = iv
        strad = 1 if lo < 0 < hi else 0
        return (-strad, -(hi - lo), next(counter))

    heap = [(key(first), root, first)]
    heapq.heapify(heap)
    used = 1
    while used < max_boxes:
        k, box, iv = heap[0]
        lo, hi = iv
        strad = lo < 0 < hi
        widths = [bhi - blo for blo, bhi in box]
        wdim = max(range(f.r), key=lambda i: widths[i])
        if widths[wdim] <= Fraction(1, 2**80):
            break
        if not strad and used >= max_boxes // 2:
            # Enclosure work only; stop once straddles are resolved and
            # a reasonable budget was spent.
            break
        heapq.heappop(heap)
        blo, bhi = box[wdim]
        mid = (blo + bhi) / 2
        for part in ((blo, mid), (mid, bhi)):
            child = box[:wdim] + (part,) + box[wdim + 1 :]
            if not _box_meets_ball(child, rho):
                continue
            civ = _eval_box(g, child)
            heapq.heappush(heap, (key(civ), child, civ))
        used += 1
        if not heap:
            break
    if not heap:
        # Every box got pruned; impossible since the root box covers the
        # ball, but keep a sound fallback.
        return RangeResult(first[0], first[1], Fraction(0), used, True)
    lo = min(iv[0] for _, _, iv in heap)
    hi = max(iv[1] for _, _, iv in heap)
    straddling = any(iv[0] < 0 < iv[1] for _, _, iv in heap)
    if straddling:
        abs_lower = Fraction(0)
    else:
        abs_lower = min(min(abs(iv[0]), abs(iv[1])) for _, _, iv in heap)
    return RangeResult(lo, hi, abs_lower, used, straddling)
