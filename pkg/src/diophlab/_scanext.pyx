# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled lattice scan kernel.

Same contract as _scan_py.scan_stream: emit float candidates for record
minima of psi and for minima of M^n psi^m, using the sequential
prefix-minimum rule. The exact pass downstream re-decides everything, so
the two kernels only need to agree on candidate completeness, not on
float rounding.
"""

import numpy as np

from .errors import ResourceCapError

from libc.math cimport floor

KERNEL_NAME = "cython"


cdef inline double _psi_pt(double[:, ::1] th, long* xv, int n, int m) noexcept nogil:
    cdef double best = 0.0, v, w
    cdef int j, i
    for j in range(m):
        v = 0.0
        for i in range(n):
            v += th[j, i] * xv[i]
        w = v - floor(v + 0.5)
        if w < 0.0:
            w = -w
        if w > best:
            best = w
    return best


cdef inline double _pow_int(double base, int e) noexcept nogil:
    cdef double out = 1.0
    cdef int k
    for k in range(e):
        out *= base
    return out


cdef class _State:
    cdef public double runmin, prodmin, margin_rec, margin_prod
    cdef public long emitted, cap
    cdef public list rec_out, prod_out

    def __init__(self, double runmin, double prodmin,
                 double margin_rec, double margin_prod, long cap):
        self.runmin = runmin
        self.prodmin = prodmin
        self.margin_rec = margin_rec
        self.margin_prod = margin_prod
        self.cap = cap
        self.emitted = 0
        self.rec_out = []
        self.prod_out = []


cdef inline int _point(_State st, double[:, ::1] th, long* xv,
                       int n, int m, double powM) except -1:
    cdef double psi = _psi_pt(th, xv, n, m)
    cdef double prod = powM * _pow_int(psi, m)
    cdef int i
    if psi < st.runmin + st.margin_rec:
        st.rec_out.append(tuple([xv[i] for i in range(n)]))
        st.emitted += 1
    if psi < st.runmin:
        st.runmin = psi
    if prod < st.prodmin + st.margin_prod:
        st.prod_out.append(tuple([xv[i] for i in range(n)]))
        st.emitted += 1
    if prod < st.prodmin:
        st.prodmin = prod
    if st.emitted > st.cap:
        raise ResourceCapError("candidate flood: margins admit too many points")
    return 0


def scan_stream(theta, int T, double margin_rec, double margin_prod,
                int n, int m, int m_lo=1, m_hi=None,
                runmin0=None, prodmin0=None, cap=10**7):
    """Scan shells m_lo..m_hi; returns (rec_cands, prod_cands, runmin, prodmin, scanned)."""
    cdef double[:, ::1] th = np.ascontiguousarray(theta, dtype=np.float64)
    if th.shape[0] != m or th.shape[1] != n:
        raise ValueError("theta shape mismatch")
    cdef int hi_M = T if m_hi is None else <int> m_hi
    cdef double r0 = float("inf") if runmin0 is None else <double> runmin0
    cdef double p0 = float("inf") if prodmin0 is None else <double> prodmin0
    if n > 3:
        from . import _scan_py
        return _scan_py.scan_stream(
            np.asarray(theta, dtype=np.float64), T, margin_rec, margin_prod,
            n, m, m_lo, m_hi, r0, p0, int(cap))
    cdef _State st = _State(r0, p0, margin_rec, margin_prod, <long> cap)
    cdef long scanned = 0
    cdef long M, x0, x1, x2
    cdef long xv[3]
    cdef double powM
    for M in range(m_lo, hi_M + 1):
        powM = _pow_int(<double> M, n)
        if n == 1:
            xv[0] = M
            _point(st, th, xv, n, m, powM)
            scanned += 1
        elif n == 2:
            xv[0] = 0; xv[1] = M
            _point(st, th, xv, n, m, powM)
            scanned += 1
            for x0 in range(1, M):
                xv[0] = x0
                xv[1] = -M
                _point(st, th, xv, n, m, powM)
                xv[1] = M
                _point(st, th, xv, n, m, powM)
                scanned += 2
            xv[0] = M
            for x1 in range(-M, M + 1):
                xv[1] = x1
                _point(st, th, xv, n, m, powM)
                scanned += 1
        else:
            # x0 = 0: oriented 2-shell in (x1, x2)
            xv[0] = 0
            xv[1] = 0; xv[2] = M
            _point(st, th, xv, n, m, powM)
            scanned += 1
            for x1 in range(1, M):
                xv[1] = x1
                xv[2] = -M
                _point(st, th, xv, n, m, powM)
                xv[2] = M
                _point(st, th, xv, n, m, powM)
                scanned += 2
            xv[1] = M
            for x2 in range(-M, M + 1):
                xv[2] = x2
                _point(st, th, xv, n, m, powM)
                scanned += 1
            # 0 < x0 < M: unoriented 2-shell in (x1, x2)
            for x0 in range(1, M):
                xv[0] = x0
                for x1 in range(-M, M + 1):
                    xv[1] = x1
                    if x1 == -M or x1 == M:
                        for x2 in range(-M, M + 1):
                            xv[2] = x2
                            _point(st, th, xv, n, m, powM)
                            scanned += 1
                    else:
                        xv[2] = -M
                        _point(st, th, xv, n, m, powM)
                        xv[2] = M
                        _point(st, th, xv, n, m, powM)
                        scanned += 2
            # x0 = M: full box
            xv[0] = M
            for x1 in range(-M, M + 1):
                xv[1] = x1
                for x2 in range(-M, M + 1):
                    xv[2] = x2
                    _point(st, th, xv, n, m, powM)
                    scanned += 1
    return st.rec_out, st.prod_out, st.runmin, st.prodmin, scanned
