"""Pure-python/numpy lattice scan kernel.

Streams integer points x with 0 < |x|_sup <= T in shells of increasing
sup-norm and reports float candidates for (a) new record minima of
psi(x) = max_j dist((theta x)_j, Z) and (b) new minima of the product
M^n psi^m. Candidates are over-approximated by the supplied margins; the
exact pass in records.py makes every final decision, so this kernel only
has to guarantee it never drops a point that could matter.

Scan order within a shell is fixed by the deterministic shell builders;
across shells the norm increases. Prefix minima are computed with shifted
cumulative minima, so each candidate test sees the scan state just before
that point, exactly as a sequential loop would.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Optional

import numpy as np

from .errors import ResourceCapError

KERNEL_NAME = "python"

_CHUNK_1D = 1 << 16


def _box1(M: int) -> np.ndarray:
    return np.arange(-M, M + 1, dtype=np.int64)


def _unoriented2(M: int) -> np.ndarray:
    """All x in Z^2 with |x|_sup = M; deterministic order."""
    ar = _box1(M)
    lo = np.column_stack([np.full(2 * M + 1, -M, dtype=np.int64), ar])
    hi = np.column_stack([np.full(2 * M + 1, M, dtype=np.int64), ar])
    mid_x = np.repeat(np.arange(-M + 1, M, dtype=np.int64), 2)
    mid_y = np.tile(np.array([-M, M], dtype=np.int64), max(2 * M - 1, 0))
    mid = np.column_stack([mid_x, mid_y])
    return np.vstack([lo, mid, hi])


def _shell2(M: int) -> np.ndarray:
    parts = [np.array([[0, M]], dtype=np.int64)]
    if M > 1:
        a = np.arange(1, M, dtype=np.int64)
        parts.append(
            np.column_stack(
                [np.repeat(a, 2), np.tile(np.array([-M, M], dtype=np.int64), M - 1)]
            )
        )
    ar = _box1(M)
    parts.append(np.column_stack([np.full(2 * M + 1, M, dtype=np.int64), ar]))
    return np.vstack(parts)


def _shell3(M: int) -> np.ndarray:
    sub = _shell2(M)
    parts = [
        np.column_stack([np.zeros(len(sub), dtype=np.int64), sub])
    ]
    if M > 1:
        u2 = _unoriented2(M)
        a = np.arange(1, M, dtype=np.int64)
        parts.append(
            np.column_stack(
                [np.repeat(a, len(u2)), np.tile(u2, (M - 1, 1))]
            )
        )
    box = np.stack(
        np.meshgrid(_box1(M), _box1(M), indexing="ij"), axis=-1
    ).reshape(-1, 2)
    parts.append(
        np.column_stack([np.full(len(box), M, dtype=np.int64), box])
    )
    return np.vstack(parts)


def _odometer_shell(k: int, M: int) -> Iterator[tuple[int, ...]]:
    for pt in itertools.product(range(-M, M + 1), repeat=k):
        if max(abs(v) for v in pt) != M:
            continue
        for v in pt:
            if v:
                if v > 0:
                    yield pt
                break


def shell_points(k: int, M: int) -> np.ndarray:
    """Oriented sup-norm shell: |x|_sup = M and first nonzero coordinate > 0."""
    if M < 1:
        raise ValueError("shell norm must be >= 1")
    if k == 1:
        return np.array([[M]], dtype=np.int64)
    if k == 2:
        return _shell2(M)
    if k == 3:
        return _shell3(M)
    rows = list(_odometer_shell(k, M))
    return np.array(rows, dtype=np.int64).reshape(len(rows), k)


def _psi_block(pts: np.ndarray, theta: np.ndarray) -> np.ndarray:
    v = pts.astype(np.float64) @ theta.T
    return np.max(np.abs(v - np.rint(v)), axis=1)


def _emit(
    pts: np.ndarray,
    psi: np.ndarray,
    prod: np.ndarray,
    runmin: float,
    prodmin: float,
    margin_rec: float,
    margin_prod: float,
    rec_out: list,
    prod_out: list,
) -> tuple[float, float]:
    acc = np.minimum.accumulate(psi)
    before = np.concatenate(([runmin], np.minimum(acc[:-1], runmin)))
    mask = psi < before + margin_rec
    for row in pts[mask]:
        rec_out.append(tuple(int(v) for v in row))
    pacc = np.minimum.accumulate(prod)
    pbefore = np.concatenate(([prodmin], np.minimum(pacc[:-1], prodmin)))
    pmask = prod < pbefore + margin_prod
    for row in pts[pmask]:
        prod_out.append(tuple(int(v) for v in row))
    return min(runmin, float(acc[-1])), min(prodmin, float(pacc[-1]))


def scan_stream(
    theta: np.ndarray,
    T: int,
    margin_rec: float,
    margin_prod: float,
    n: int,
    m: int,
    m_lo: int = 1,
    m_hi: Optional[int] = None,
    runmin0: float = float("inf"),
    prodmin0: float = float("inf"),
    cap: int = 10**7,
):
    """Scan shells m_lo..m_hi; returns (rec_cands, prod_cands, runmin, prodmin, scanned)."""
    hi = T if m_hi is None else m_hi
    rec_out: list[tuple[int, ...]] = []
    prod_out: list[tuple[int, ...]] = []
    runmin = float(runmin0)
    prodmin = float(prodmin0)
    scanned = 0
    if n == 1:
        q = m_lo
        while q <= hi:
            q_top = min(hi, q + _CHUNK_1D - 1)
            qs = np.arange(q, q_top + 1, dtype=np.int64)
            pts = qs.reshape(-1, 1)
            psi = _psi_block(pts, theta)
            prod = qs.astype(np.float64) * psi**m
            runmin, prodmin = _emit(
                pts, psi, prod, runmin, prodmin,
                margin_rec, margin_prod, rec_out, prod_out,
            )
            scanned += len(qs)
            if len(rec_out) + len(prod_out) > cap:
                raise ResourceCapError("candidate flood: margins admit too many points")
            q = q_top + 1
        return rec_out, prod_out, runmin, prodmin, scanned
    for M in range(m_lo, hi + 1):
        pts = shell_points(n, M)
        psi = _psi_block(pts, theta)
        prod = float(M) ** n * psi**m
        runmin, prodmin = _emit(
            pts, psi, prod, runmin, prodmin,
            margin_rec, margin_prod, rec_out, prod_out,
        )
        scanned += len(pts)
        if len(rec_out) + len(prod_out) > cap:
            raise ResourceCapError("candidate flood: margins admit too many points")
    return rec_out, prod_out, runmin, prodmin, scanned
