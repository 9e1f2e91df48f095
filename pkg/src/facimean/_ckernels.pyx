# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

Operation order mirrors the numpy versions exactly. Do not build with
-ffast-math or FMA contraction: both break the compensated sums and the
bit-for-bit agreement with the fallback.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()

BACKEND = "cython"


cdef void _two_sum_prefix(const double[::1] x, double[::1] out) noexcept nogil:
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double s = 0.0, e = 0.0, snew, bb
    out[0] = 0.0
    for i in range(n):
        snew = s + x[i]
        bb = snew - s
        e = e + ((s - (snew - bb)) + (x[i] - bb))
        s = snew
        out[i + 1] = s + e


cdef double _two_sum_total(const double[::1] x) noexcept nogil:
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double s = 0.0, e = 0.0, snew, bb
    if n == 0:
        return 0.0
    for i in range(n):
        snew = s + x[i]
        bb = snew - s
        e = e + ((s - (snew - bb)) + (x[i] - bb))
        s = snew
    return s + e


def comp_cumsum(x):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    out = np.zeros(xv.shape[0] + 1)
    cdef double[::1] ov = out
    with nogil:
        _two_sum_prefix(xv, ov)
    return out


def comp_cumsum_sq(x, double scale, double shift):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t i, n = xv.shape[0]
    sq = np.empty(n)
    out = np.zeros(n + 1)
    cdef double[::1] sv = sq
    cdef double[::1] ov = out
    cdef double d
    with nogil:
        for i in range(n):
            d = scale * xv[i] - shift
            sv[i] = d * d
        _two_sum_prefix(sv, ov)
        for i in range(1, n + 1):
            if ov[i] < ov[i - 1]:
                ov[i] = ov[i - 1]
    return out


cdef double _product_error(double a, double b) noexcept nogil:
    # Dekker's TwoProduct: exact a*b - fl(a*b)
    cdef double p = a * b, c, ah, al, bh, bl
    c = 134217729.0 * a
    ah = c - (c - a)
    al = a - ah
    c = 134217729.0 * b
    bh = c - (c - b)
    bl = b - bh
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


cdef Py_ssize_t _search(const double[::1] cum, double t) noexcept nogil:
    # largest m with cum[m] <= t * cum[last], exactly
    cdef Py_ssize_t lo = 0, hi = cum.shape[0], mid
    cdef double total = cum[cum.shape[0] - 1]
    cdef double thr = t * total
    cdef bint strict = _product_error(t, total) < 0
    while lo < hi:
        mid = (lo + hi) >> 1
        if cum[mid] < thr or (cum[mid] == thr and not strict):
            lo = mid + 1
        else:
            hi = mid
    return lo - 1


def search_index(cum, double t):
    cdef const double[::1] cv = np.ascontiguousarray(cum, dtype=np.float64)
    return int(_search(cv, t))


def search_indices(cum, ts):
    cdef const double[::1] cv = np.ascontiguousarray(cum, dtype=np.float64)
    cdef const double[::1] tv = np.ascontiguousarray(ts, dtype=np.float64)
    cdef Py_ssize_t j, m = tv.shape[0]
    out = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[::1] ov = out
    with nogil:
        for j in range(m):
            ov[j] = _search(cv, tv[j])
    return out


def sup_abs_attained(breaks, values):
    cdef const double[::1] bv = np.ascontiguousarray(breaks, dtype=np.float64)
    cdef const double[::1] vv = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t k, n = vv.shape[0] - 1
    cdef double best = fabs(vv[n]), a
    with nogil:
        for k in range(n):
            if bv[k] < bv[k + 1]:
                a = fabs(vv[k])
                if a > best:
                    best = a
    return best


def step_integral(breaks, values):
    cdef const double[::1] bv = np.ascontiguousarray(breaks, dtype=np.float64)
    cdef const double[::1] vv = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t k, n = vv.shape[0] - 1
    terms = np.empty(n)
    cdef double[::1] tv = terms
    cdef double total
    with nogil:
        for k in range(n):
            tv[k] = (bv[k + 1] - bv[k]) * vv[k]
        total = _two_sum_total(tv)
    return total


def sup_intersection(partial, double half):
    cdef const double[::1] sv = np.ascontiguousarray(partial, dtype=np.float64)
    cdef Py_ssize_t k, n = sv.shape[0] - 1
    cdef double lo, hi, a, b, kk
    with nogil:
        lo = (sv[1] - half) / 1.0
        hi = (sv[1] + half) / 1.0
        for k in range(2, n + 1):
            kk = <double>k
            a = (sv[k] - half) / kk
            b = (sv[k] + half) / kk
            if a > lo:
                lo = a
            if b < hi:
                hi = b
    return lo, hi


def weighted_partial(weights, partial):
    cdef const double[::1] wv = np.ascontiguousarray(weights, dtype=np.float64)
    cdef const double[::1] sv = np.ascontiguousarray(partial, dtype=np.float64)
    cdef Py_ssize_t k, n = wv.shape[0]
    if n < 2:
        return 0.0, 0.0
    cterms = np.empty(n - 1)
    dterms = np.empty(n - 1)
    cdef double[::1] cv = cterms
    cdef double[::1] dv = dterms
    cdef double c, d
    with nogil:
        for k in range(1, n):
            cv[k - 1] = wv[k] * sv[k]
            dv[k - 1] = wv[k] * <double>k
        c = _two_sum_total(cv)
        d = _two_sum_total(dv)
    return c, d


def path_sup_abs(increments, double scale):
    cdef const double[:, ::1] iv = np.ascontiguousarray(increments, dtype=np.float64)
    cdef Py_ssize_t r, j, rows = iv.shape[0], cols = iv.shape[1]
    out = np.empty(rows)
    cdef double[::1] ov = out
    cdef double s, best
    with nogil:
        for r in range(rows):
            s = 0.0
            best = 0.0
            for j in range(cols):
                s = s + iv[r, j]
                if fabs(s) > best:
                    best = fabs(s)
            ov[r] = best * scale
    return out
