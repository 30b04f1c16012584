"""Fallback kernels used when the compiled extension is unavailable.

Same signatures as the Cython module `_kernels_cy`; numpy-vectorized so the
brute-force sweeps stay usable without a C compiler.
"""
from __future__ import annotations

import numpy as np


def cloud_angles(l, bound, z1, z2, skip_tol=1e-14):
    """Angles (mod pi, in [0, pi)) of n*z1 + m*z2 over all roots with n+m <= bound.

    A pair (n, m) is a root when q = n^2 + m^2 - l*n*m is 1 or <= 0.
    Combinations with |n*z1 + m*z2| < skip_tol*(n+m) are dropped and counted.
    Returns (sorted float64 array, skipped count).
    """
    idx = np.arange(bound + 1, dtype=np.int64)
    n, m = np.meshgrid(idx, idx, indexing="ij")
    total = n + m
    q = n * n + m * m - int(l) * n * m
    is_root = (total >= 1) & (total <= bound) & ((q == 1) | (q <= 0))
    nr = n[is_root].astype(np.float64)
    mr = m[is_root].astype(np.float64)
    w = nr * complex(z1) + mr * complex(z2)
    r = np.abs(w)
    keep = r >= skip_tol * (nr + mr)
    skipped = int(keep.size - np.count_nonzero(keep))
    # fmod (not mod): exact remainder, bit-identical to the compiled kernel
    ang = np.fmod(np.arctan2(w.imag[keep], w.real[keep]), np.pi)
    ang[ang < 0.0] += np.pi
    ang.sort()
    return ang, skipped


def max_circular_gap(sorted_angles, period):
    """Largest gap between consecutive points on a circle of the given period."""
    a = np.asarray(sorted_angles, dtype=np.float64)
    if a.size == 0:
        return float(period)
    if a.size == 1:
        return float(period)
    gaps = np.diff(a)
    wrap = a[0] + period - a[-1]
    return float(max(gaps.max(), wrap))


def fattened_union_measure(sorted_angles, delta, period):
    """Measure of the union of length-delta arcs centered at the given points.

    For sorted circular points the union length is sum(min(spacing, delta)):
    each arc contributes its full length delta unless the next center is
    closer than delta, in which case the overlap collapses to the spacing.
    """
    a = np.asarray(sorted_angles, dtype=np.float64)
    if a.size == 0:
        return 0.0
    if a.size == 1:
        return float(min(delta, period))
    spacing = np.empty(a.size)
    spacing[:-1] = np.diff(a)
    spacing[-1] = a[0] + period - a[-1]
    return float(np.minimum(spacing, delta).sum())
