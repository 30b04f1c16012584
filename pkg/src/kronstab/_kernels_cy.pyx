# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the brute-force sweeps.

Mirrors `_kernels_py`; the pure module is the reference implementation and
the two are compared in the benchmark suite.
"""
from libc.math cimport M_PI, atan2, fmod, sqrt

import numpy as np


def cloud_angles(long l, long bound, z1, z2, double skip_tol=1e-14):
    """Angles (mod pi, in [0, pi)) of n*z1 + m*z2 over all roots with n+m <= bound.

    A pair (n, m) is a root when q = n^2 + m^2 - l*n*m is 1 or <= 0.
    Combinations with |n*z1 + m*z2| < skip_tol*(n+m) are dropped and counted.
    Returns (sorted float64 array, skipped count).
    """
    cdef double z1r = (<complex?>complex(z1)).real
    cdef double z1i = (<complex?>complex(z1)).imag
    cdef double z2r = (<complex?>complex(z2)).real
    cdef double z2i = (<complex?>complex(z2)).imag
    cdef Py_ssize_t cap = (bound + 1) * (bound + 2) // 2
    out = np.empty(cap, dtype=np.float64)
    cdef double[::1] buf = out
    cdef long n, m
    cdef long skipped = 0
    cdef long long q, nn, mm, ll = l
    cdef double wr, wi, r, ang
    cdef Py_ssize_t count = 0
    for n in range(bound + 1):
        for m in range(bound + 1 - n):
            if n == 0 and m == 0:
                continue
            nn = n
            mm = m
            q = nn * nn + mm * mm - ll * nn * mm
            if q == 1 or q <= 0:
                wr = n * z1r + m * z2r
                wi = n * z1i + m * z2i
                r = sqrt(wr * wr + wi * wi)
                if r < skip_tol * (n + m):
                    skipped += 1
                else:
                    ang = fmod(atan2(wi, wr), M_PI)
                    if ang < 0.0:
                        ang += M_PI
                    buf[count] = ang
                    count += 1
    return np.sort(out[:count]), skipped


def max_circular_gap(sorted_angles, double period):
    """Largest gap between consecutive points on a circle of the given period."""
    a = np.ascontiguousarray(sorted_angles, dtype=np.float64)
    cdef double[::1] v = a
    cdef Py_ssize_t size = v.shape[0]
    if size <= 1:
        return period
    cdef double best = v[0] + period - v[size - 1]
    cdef double g
    cdef Py_ssize_t i
    for i in range(size - 1):
        g = v[i + 1] - v[i]
        if g > best:
            best = g
    return best


def fattened_union_measure(sorted_angles, double delta, double period):
    """Measure of the union of length-delta arcs centered at the given points.

    For sorted circular points the union length is sum(min(spacing, delta)):
    each arc contributes its full length delta unless the next center is
    closer than delta, in which case the overlap collapses to the spacing.
    """
    a = np.ascontiguousarray(sorted_angles, dtype=np.float64)
    cdef double[::1] v = a
    cdef Py_ssize_t size = v.shape[0]
    if size == 0:
        return 0.0
    if size == 1:
        return min(delta, period)
    cdef double total = 0.0
    cdef double s
    cdef Py_ssize_t i
    for i in range(size - 1):
        s = v[i + 1] - v[i]
        total += s if s < delta else delta
    s = v[0] + period - v[size - 1]
    total += s if s < delta else delta
    return total
