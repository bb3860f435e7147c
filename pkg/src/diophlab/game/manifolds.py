"""Determinant manifolds for graph/subspace intersection, and the game
that constructs a matrix whose graph avoids every low rational subspace
up to a height bound, with a certificate per subspace.

Ambient coordinates are ordered dependents-first: a point is
(y_1..y_m, x_1..x_n) and the graph of Theta is {(Theta x, x)}.  The
variable theta_{j,i} (row j, column i of Theta) gets flat index
(j-1)*n + (i-1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..errors import DiophlabError, GameAbort
from ..polynomials import MultiPolynomial
from ..subspaces import RationalSubspace, intersection_dimension, iter_rational_subspaces
from ..targets import TargetMatrix
from .balls import Ball, EscapeOutcome, HawConfig, SchmidtConfig
from .engine import HawPlay, SchmidtPlay, _EscapeEngine


def _symbolic_det(rows: Sequence[Sequence[MultiPolynomial]]) -> MultiPolynomial:
    """Cofactor-expansion determinant of a square polynomial matrix."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    if n == 0:
        raise ValueError("empty matrix")
    r_vars = rows[0][0].r
    memo: dict[tuple[int, tuple[int, ...]], MultiPolynomial] = {}

    def minor(row: int, cols: tuple[int, ...]) -> MultiPolynomial:
        if row == n:
            return MultiPolynomial.constant(r_vars, 1)
        key = (row, cols)
        got = memo.get(key)
        if got is not None:
            return got
        acc = MultiPolynomial.zero(r_vars)
        for idx, c in enumerate(cols):
            entry = rows[row][c]
            if entry.is_zero:
                continue
            rest = minor(row + 1, cols[:idx] + cols[idx + 1 :])
            term = entry * rest
            acc = acc + term if idx % 2 == 0 else acc - term
        memo[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def _stacked_rows(n: int, m: int, M: RationalSubspace) -> list[list[MultiPolynomial]]:
    """Graph rows over theta variables stacked on M's integer basis rows."""
    d = n + m
    r_vars = n * m
    rows: list[list[MultiPolynomial]] = []
    for i in range(n):
        row = [MultiPolynomial.variable(r_vars, j * n + i) for j in range(m)]
        row += [
            MultiPolynomial.constant(r_vars, 1 if c == i else 0) for c in range(n)
        ]
        rows.append(row)
    for brow in M.rows:
        rows.append([MultiPolynomial.constant(r_vars, e) for e in brow])
    assert len(rows) == n + M.m and all(len(r) == d for r in rows)
    return rows


def determinant_manifold(n: int, m: int, M: RationalSubspace) -> MultiPolynomial:
    """Polynomial in the n*m entries of Theta that vanishes exactly when
    the graph of Theta meets the m-dimensional subspace M nontrivially.
    """
    if M.d != n + m:
        raise DiophlabError(f"subspace lives in R^{M.d}, expected R^{n + m}")
    if M.m != m:
        raise DiophlabError(f"subspace dimension {M.m} != {m}")
    f = _symbolic_det(_stacked_rows(n, m, M))
    assert f.degree <= min(n, m)
    assert all(c.denominator == 1 for c in f.terms.values())
    return f


def manifold_polynomial(n: int, m: int, M: RationalSubspace) -> MultiPolynomial:
    """Like determinant_manifold but for dim M = k <= m: the first minor
    of the stacked (n+k) x (n+m) matrix, in lexicographic column-subset
    order, that is not identically zero.  Vanishes whenever the graph
    meets M nontrivially.
    """
    if M.d != n + m:
        raise DiophlabError(f"subspace lives in R^{M.d}, expected R^{n + m}")
    k = M.m
    if not (1 <= k <= m):
        raise DiophlabError(f"subspace dimension {k} outside 1..{m}")
    if k == m:
        return determinant_manifold(n, m, M)
    rows = _stacked_rows(n, m, M)
    size = n + k
    for cols in itertools.combinations(range(n + m), size):
        sub = [[row[c] for c in cols] for row in rows]
        f = _symbolic_det(sub)
        if not f.is_zero:
            return f
    raise GameAbort("every maximal minor vanishes identically")


@dataclass(frozen=True)
class ManifoldCertificate:
    subspace: RationalSubspace
    polynomial: MultiPolynomial
    epsilon: Fraction


@dataclass(frozen=True)
class GeneratedMatrix:
    target: TargetMatrix
    certificates: tuple[ManifoldCertificate, ...]
    outcome: EscapeOutcome
    n: int
    m: int
    height: int

    @property
    def epsilon_min(self) -> Fraction:
        return min(c.epsilon for c in self.certificates)


def _graph_subspace(theta_rows: Sequence[Sequence[Fraction]], n: int, m: int):
    rows = []
    for i in range(n):
        row = [theta_rows[j][i] for j in range(m)]
        row += [Fraction(1) if c == i else Fraction(0) for c in range(n)]
        rows.append(row)
    return RationalSubspace.from_rows(rows, d=n + m)


def generate_irrational_matrix(
    n: int,
    m: int,
    height: int,
    game: str = "schmidt",
    config=None,
    opponent=None,
    seed: int = 0,
    start: Optional[Ball] = None,
    post_check: bool = True,
) -> GeneratedMatrix:
    """Play one continuing game that escapes, in turn, every determinant
    manifold of a rational subspace of dimension 1..m and height <= the
    bound.  The final center is a matrix whose graph provably misses all
    of them, each miss backed by a certificate.
    """
    if n < 1 or m < 1:
        raise DiophlabError("need n >= 1 and m >= 1")
    d = n + m
    r_vars = n * m
    if game not in ("schmidt", "haw"):
        raise DiophlabError(f"unknown game kind: {game!r}")
    if config is None:
        config = (
            SchmidtConfig(r_vars, Fraction(1, 4), Fraction(1, 4))
            if game == "schmidt"
            else HawConfig(r_vars, Fraction(1, 4))
        )
    if config.r != r_vars:
        raise DiophlabError("config dimension must equal n*m")
    if start is None:
        start = Ball(tuple(Fraction(1, 2) for _ in range(r_vars)), Fraction(1, 2))
    if game == "schmidt":
        play = SchmidtPlay(config, opponent, seed, start)
    else:
        play = HawPlay(config, opponent, seed, start)
    eng = _EscapeEngine(play, game)

    certificates: list[ManifoldCertificate] = []
    for k in range(1, m + 1):
        for M in iter_rational_subspaces(d, k, height):
            f = manifold_polynomial(n, m, M)
            eps = eng.escape(f)
            certificates.append(ManifoldCertificate(M, f, eps))

    center = play.current.center
    theta_rows = [[center[j * n + i] for i in range(n)] for j in range(m)]
    target = TargetMatrix.from_rational(theta_rows)
    outcome = EscapeOutcome(
        play.current,
        min(c.epsilon for c in certificates),
        play.transcript,
        play.rounds,
        eng.last_budget,
    )

    if post_check:
        graph = _graph_subspace(theta_rows, n, m)
        for k in range(1, m + 1):
            for M in iter_rational_subspaces(d, k, height):
                if intersection_dimension(graph, M) != 0:
                    raise GameAbort(
                        f"generated matrix still meets {M}; engine unsound"
                    )

    return GeneratedMatrix(target, tuple(certificates), outcome, n, m, height)
