"""Subspace types, Plucker coordinates, and irrationality certification.

Conventions used throughout:

* A SubspaceBasis is an n-tuple of vectors in R^d with ExactScalar entries
  and exact rank n. No coordinate layout is assumed; callers decide what
  the coordinates mean.
* A RationalSubspace is stored in a canonical form: the reduced row echelon
  basis scaled to primitive integer rows with positive leading entries.
  Canonical forms are unique per subspace, so equality and dedupe are plain
  tuple comparisons. Its height is the max |entry| of that canonical basis.
* Rational subspace enumeration is by the minimal sup-norm of a generating
  integer basis ("admits an integer basis with sup-norm <= H"). For lines
  this coincides with the canonical height; for higher dimensions the
  canonical height can exceed the generating bound, so the enumeration
  tracks generating buckets and reports canonical heights as data.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from . import linalg
from .errors import DegenerateBasisError, EnumerationCapError
from .exactnum import ExactScalar

__all__ = [
    "SubspaceBasis",
    "RationalSubspace",
    "PluckerVector",
    "IrrationalityProfile",
    "PluckerIndependenceCertificate",
    "PartialIrrationalityWitness",
    "subspace_basis",
    "plucker_coordinates",
    "rational_dimension",
    "enumerate_rational_subspaces",
    "iter_rational_subspaces",
    "intersection_dimension",
    "irrationality_profile",
    "partial_irrationality_witness",
    "DEFAULT_ENUMERATION_CAP",
]

DEFAULT_ENUMERATION_CAP = 10**7


def _as_scalar(v) -> ExactScalar:
    if isinstance(v, ExactScalar):
        return v
    if isinstance(v, (int, Fraction)):
        return ExactScalar(v)
    if isinstance(v, str):
        return ExactScalar.parse(v)
    raise TypeError(f"cannot interpret {v!r} as an exact scalar")


@dataclass(frozen=True)
class SubspaceBasis:
    """Exact basis of an n-dimensional subspace of R^d."""

    d: int
    n: int
    rows: tuple[tuple[ExactScalar, ...], ...]

    def __post_init__(self):
        if not (1 <= self.n < self.d):
            raise ValueError(f"need 1 <= n < d, got n={self.n}, d={self.d}")
        if len(self.rows) != self.n or any(len(r) != self.d for r in self.rows):
            raise ValueError("basis shape does not match (n, d)")
        if linalg.rank(self.rows) != self.n:
            raise DegenerateBasisError("basis rows are linearly dependent")


def subspace_basis(rows: Sequence[Sequence], d: Optional[int] = None) -> SubspaceBasis:
    """Build a SubspaceBasis from rows of ints/Fractions/ExactScalars/strings."""
    conv = tuple(tuple(_as_scalar(v) for v in row) for row in rows)
    if not conv:
        raise ValueError("empty basis")
    dd = d if d is not None else len(conv[0])
    return SubspaceBasis(d=dd, n=len(conv), rows=conv)


def _canonical_int_rows(rows: Sequence[Sequence]) -> tuple[tuple[int, ...], ...]:
    """RREF, then scale each row to a primitive integer row (leading entry > 0)."""
    red, pivots = linalg.rref([[Fraction(v) for v in row] for row in rows])
    out = []
    for i, _ in enumerate(pivots):
        row = red[i]
        denom = math.lcm(*(f.denominator for f in row))
        ints = [int(f * denom) for f in row]
        g = math.gcd(*ints)
        if g:
            ints = [v // g for v in ints]
        out.append(tuple(ints))
    return tuple(out)


@dataclass(frozen=True)
class RationalSubspace:
    """Rational subspace in canonical primitive-echelon form."""

    d: int
    m: int
    rows: tuple[tuple[int, ...], ...]
    height: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], d: Optional[int] = None) -> "RationalSubspace":
        canon = _canonical_int_rows(rows)
        if not canon:
            raise DegenerateBasisError("no independent rows")
        dd = d if d is not None else len(canon[0])
        if len(canon) != len(rows):
            raise DegenerateBasisError("rows are linearly dependent")
        h = max(abs(v) for row in canon for v in row)
        return cls(d=dd, m=len(canon), rows=canon, height=h)

    def basis(self) -> SubspaceBasis:
        return subspace_basis(self.rows, d=self.d)

    def __str__(self) -> str:
        body = "; ".join(",".join(str(v) for v in row) for row in self.rows)
        return f"span[{body}]"


@dataclass(frozen=True)
class PluckerVector:
    """Maximal minors of a basis matrix, lex order of column index tuples."""

    d: int
    n: int
    entries: tuple[ExactScalar, ...]

    @property
    def index_tuples(self) -> tuple[tuple[int, ...], ...]:
        return tuple(itertools.combinations(range(1, self.d + 1), self.n))

    def proportional(self, other: "PluckerVector") -> bool:
        """Equality up to one common nonzero scalar (cross-product test)."""
        if (self.d, self.n) != (other.d, other.n):
            return False
        pairs = list(zip(self.entries, other.entries))
        ref = next(((p, q) for p, q in pairs if p or q), None)
        if ref is None:
            return True
        p0, q0 = ref
        return all(p0 * q == q0 * p for p, q in pairs)


def plucker_coordinates(basis: SubspaceBasis) -> PluckerVector:
    entries = []
    for cols in itertools.combinations(range(basis.d), basis.n):
        minor = linalg.det([[row[c] for c in cols] for row in basis.rows])
        entries.append(_as_scalar(minor))
    return PluckerVector(d=basis.d, n=basis.n, entries=tuple(entries))


def rational_dimension(coords: Iterable) -> int:
    """Number of Q-linearly independent values among the given exact scalars.

    Each value a + b*sqrt(D) becomes the coefficient row (a, b) over the
    basis {1} + {sqrt(D) : D occurring}. Values with different radicands
    coexist here; no arithmetic ever mixes them.
    """
    vals = [_as_scalar(v) for v in coords]
    if not vals:
        raise ValueError("empty coordinate list")
    radicands = sorted({v.D for v in vals if v.D is not None})
    col = {D: 1 + i for i, D in enumerate(radicands)}
    width = 1 + len(radicands)
    rows = []
    for v in vals:
        row = [Fraction(0)] * width
        row[0] = v.a
        if v.D is not None:
            row[col[v.D]] = v.b
        rows.append(row)
    return linalg.rank(rows)


# ---------------------------------------------------------------------------
# Rational subspace enumeration


def _primitive_vectors(d: int, sup: int) -> list[tuple[int, ...]]:
    """Canonical primitive vectors with sup-norm exactly `sup`, lex order.

    Canonical means the first nonzero coordinate is positive; this halves
    the lattice and makes span dedupe for lines trivial.
    """
    out = []
    rng = range(-sup, sup + 1)
    for vec in itertools.product(rng, repeat=d):
        if max(abs(v) for v in vec) != sup:
            continue
        lead = next((v for v in vec if v), 0)
        if lead <= 0:
            continue
        if math.gcd(*vec) != 1:
            continue
        out.append(vec)
    return out


class _CandidateBudget:
    def __init__(self, cap: Optional[int]):
        self.cap = cap
        self.used = 0

    def spend(self, k: int = 1):
        self.used += k
        if self.cap is not None and self.used > self.cap:
            raise EnumerationCapError(
                f"rational-subspace enumeration exceeded {self.cap} candidates"
            )


def iter_rational_subspaces(
    d: int,
    m: int,
    max_height: int,
    budget: Optional[_CandidateBudget] = None,
) -> Iterator[RationalSubspace]:
    """Yield m-dimensional rational subspaces of R^d admitting an integer
    generating basis with sup-norm <= max_height.

    Order: ascending generating-sup bucket, then canonical form; duplicate
    free. The full listing for a bucket is complete before the next bucket
    starts, which is what lets callers short-circuit on the first blocker.
    """
    if not (1 <= m < d):
        raise ValueError(f"need 1 <= m < d, got m={m}, d={d}")
    if max_height < 1:
        raise ValueError("height bound must be >= 1")
    budget = budget or _CandidateBudget(DEFAULT_ENUMERATION_CAP)

    if m == 1:
        for sup in range(1, max_height + 1):
            for vec in _primitive_vectors(d, sup):
                budget.spend()
                yield RationalSubspace(d=d, m=1, rows=(vec,), height=sup)
        return

    # Level sets per dimension; at bucket H' combine what is new with what
    # is old so each canonical subspace appears exactly once.
    seen: list[set] = [set() for _ in range(m + 1)]
    old_level: list[list[RationalSubspace]] = [[] for _ in range(m + 1)]
    vec_old: list[tuple[int, ...]] = []
    for sup in range(1, max_height + 1):
        vec_new = _primitive_vectors(d, sup)
        new_level: list[list[RationalSubspace]] = [[] for _ in range(m + 1)]
        fresh1 = []
        for vec in vec_new:
            budget.spend()
            sub = RationalSubspace(d=d, m=1, rows=(vec,), height=sup)
            if sub.rows not in seen[1]:
                seen[1].add(sub.rows)
                fresh1.append(sub)
        new_level[1] = fresh1
        for k in range(2, m + 1):
            found = {}
            for base, vec in itertools.chain(
                itertools.product(new_level[k - 1], vec_old + vec_new),
                itertools.product(old_level[k - 1], vec_new),
            ):
                budget.spend()
                stacked = base.rows + (vec,)
                red = _canonical_int_rows(stacked)
                if len(red) != k:
                    continue
                if red in seen[k] or red in found:
                    continue
                found[red] = None
            subs = [
                RationalSubspace(
                    d=d, m=k, rows=red, height=max(abs(v) for r in red for v in r)
                )
                for red in found
            ]
            subs.sort(key=lambda s: s.rows)
            seen[k].update(s.rows for s in subs)
            new_level[k] = subs
        for sub in sorted(new_level[m], key=lambda s: s.rows):
            yield sub
        for k in range(1, m + 1):
            old_level[k].extend(new_level[k])
        vec_old.extend(vec_new)


def enumerate_rational_subspaces(
    d: int, m: int, max_height: int, cap: Optional[int] = DEFAULT_ENUMERATION_CAP
) -> list[RationalSubspace]:
    """All m-dimensional rational subspaces with generating sup-norm <= bound,
    each exactly once, sorted by (canonical height, canonical rows)."""
    out = list(iter_rational_subspaces(d, m, max_height, _CandidateBudget(cap)))
    out.sort(key=lambda s: (s.height, s.rows))
    return out


# ---------------------------------------------------------------------------
# Intersection and certification


def _as_basis_rows(L: Union[SubspaceBasis, RationalSubspace]):
    if isinstance(L, SubspaceBasis):
        return L.d, L.n, L.rows
    if isinstance(L, RationalSubspace):
        return L.d, L.m, L.rows
    raise TypeError(f"expected a subspace, got {L!r}")


def intersection_dimension(
    L: Union[SubspaceBasis, RationalSubspace],
    M: Union[SubspaceBasis, RationalSubspace],
) -> int:
    """dim(L ∩ M) via the rank of the stacked basis matrix.

    Trivial intersection is equivalent to the stacked matrix having full
    rank dim L + dim M, which requires dim L + dim M <= d.
    """
    dL, nL, rowsL = _as_basis_rows(L)
    dM, nM, rowsM = _as_basis_rows(M)
    if dL != dM:
        raise ValueError(f"ambient dimensions differ: {dL} vs {dM}")
    if nL + nM > dL:
        raise ValueError(f"dim L + dim M = {nL + nM} exceeds d = {dL}")
    stacked = list(rowsL) + [list(row) for row in rowsM]
    return nL + nM - linalg.rank(stacked)


@dataclass(frozen=True)
class PluckerIndependenceCertificate:
    """Exact witness: all C(d,n) Plucker coordinates are Q-independent."""

    plucker: PluckerVector
    rational_dim: int

    @property
    def coordinate_count(self) -> int:
        return len(self.plucker.entries)


@dataclass(frozen=True)
class IrrationalityProfile:
    d: int
    n: int
    height_bound: int
    certified_m: int
    certificate: Optional[PluckerIndependenceCertificate]
    blocker: Optional[RationalSubspace]
    blocker_dimension: Optional[int]
    partial: bool
    candidates_examined: int

    @property
    def completely_irrational_certificate(self):
        return self.certificate


def _try_certificate(L: SubspaceBasis) -> Optional[PluckerIndependenceCertificate]:
    try:
        pv = plucker_coordinates(L)
        dim = rational_dimension(pv.entries)
    except Exception:
        return None
    if dim == len(pv.entries):
        return PluckerIndependenceCertificate(plucker=pv, rational_dim=dim)
    return None


def irrationality_profile(
    L: SubspaceBasis,
    max_height: int,
    cap: Optional[int] = DEFAULT_ENUMERATION_CAP,
) -> IrrationalityProfile:
    """Certify m-irrationality of L against all rational subspaces of
    dimension <= d - n with generating sup-norm <= max_height.

    A Plucker-independence certificate, when it exists, settles every
    height at once and the enumeration is skipped. Otherwise dimensions
    are checked in increasing order, stopping at the first blocker.
    """
    if max_height < 1:
        raise ValueError("height bound must be >= 1")
    cert = _try_certificate(L)
    m_max = L.d - L.n
    if cert is not None:
        return IrrationalityProfile(
            d=L.d,
            n=L.n,
            height_bound=max_height,
            certified_m=m_max,
            certificate=cert,
            blocker=None,
            blocker_dimension=None,
            partial=False,
            candidates_examined=0,
        )
    budget = _CandidateBudget(cap)
    certified = 0
    blocker = None
    blocker_dim = None
    partial = False
    for k in range(1, m_max + 1):
        try:
            for M in iter_rational_subspaces(L.d, k, max_height, budget):
                if intersection_dimension(L, M) > 0:
                    blocker = M
                    blocker_dim = k
                    break
        except EnumerationCapError:
            partial = True
            break
        if blocker is not None:
            break
        certified = k
    return IrrationalityProfile(
        d=L.d,
        n=L.n,
        height_bound=max_height,
        certified_m=certified,
        certificate=None,
        blocker=blocker,
        blocker_dimension=blocker_dim,
        partial=partial,
        candidates_examined=budget.used,
    )


@dataclass(frozen=True)
class PartialIrrationalityWitness:
    """Q-independence of the Plucker entries supported on an index set.

    Witnesses that the subspace is m'-irrational for some m' >= m where
    m = |I| - n. The m = 0 case is vacuous and flagged trivial.
    """

    m: int
    index_set: tuple[int, ...]
    entries: tuple[ExactScalar, ...]
    trivial: bool


def partial_irrationality_witness(
    L: SubspaceBasis, index_set: Iterable[int]
) -> Optional[PartialIrrationalityWitness]:
    I = tuple(sorted(set(index_set)))
    if any(i < 1 or i > L.d for i in I):
        raise ValueError(f"indices must lie in 1..{L.d}")
    if len(I) < L.n:
        raise ValueError(f"need at least n = {L.n} indices, got {len(I)}")
    if len(I) > L.d:
        raise ValueError("index set larger than ambient dimension")
    pv = plucker_coordinates(L)
    lookup = dict(zip(pv.index_tuples, pv.entries))
    selected = [lookup[c] for c in itertools.combinations(I, L.n)]
    try:
        dim = rational_dimension(selected)
    except Exception:
        return None
    if dim != len(selected):
        return None
    m = len(I) - L.n
    return PartialIrrationalityWitness(
        m=m, index_set=I, entries=tuple(selected), trivial=(m == 0)
    )
