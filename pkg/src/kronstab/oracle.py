"""Brute-force cross-checks against the analytic phase machinery.

Ground truth here is enumeration: the phase cloud of a chart point is the
set of angles of n*Z(s_j)[-1] + m*Z(s_{j+1}) over all roots (n, m) with
n + m <= bound, which samples the true phase set without going through the
ladder formulas.  Everything is kept modulo pi, matching the half-measure
convention used by the analytic side.
"""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .halfplane import (
    HalfPlanePoint,
    NonTermination,
    alpha_matrix,
    fd_contains,
    fd_reduce,
    moebius_apply,
)
from .stability import ChartPoint

__all__ = [
    "PointCloud",
    "cloud_from_chart",
    "estimate_closure_measure",
    "max_gap_estimate",
    "nearest_angle",
    "fd_orbit_check",
]


@dataclass(eq=False)
class PointCloud:
    """Sorted phase angles of a root enumeration.

    angles covers the full circle in (-pi, pi] (every angle paired with its
    antipode); half is the canonical mod-pi form in (0, pi].  skipped counts
    root vectors whose charge was too close to zero to carry an angle.
    """

    angles: np.ndarray
    half: np.ndarray
    skipped: int
    bound: int


def cloud_from_chart(p: ChartPoint, bound: int, skip_tol: float = 1e-14) -> PointCloud:
    """Enumerate root charges n*(-exp z1) + m*(exp z2) up to n + m <= bound.

    The sign puts the anchor object's class at -(1, 0), so the (1, 0) root
    reproduces the anchor phase and the (0, 1) root the next one.
    """
    if bound < 2:
        raise ValueError("bound must be >= 2")
    z1 = -cmath.exp(p.z1)
    z2 = cmath.exp(p.z2)
    raw, skipped = _kernels.cloud_angles(p.l, bound, z1, z2, skip_tol)
    half = np.sort(np.where(raw == 0.0, math.pi, raw))
    full = np.sort(np.concatenate([half - math.pi, half]))
    return PointCloud(full, half, int(skipped), bound)


def estimate_closure_measure(cloud: PointCloud, fatten: float | None = None) -> float:
    """Half-measure estimate: fatten each cloud point to an arc of the given
    length and take the mod-pi union.  Defaults to fatten = 3/bound, which
    shrinks with the enumeration while still bridging the gaps between
    neighboring imaginary roots."""
    delta = 3.0 / cloud.bound if fatten is None else float(fatten)
    if not 0.0 < delta < math.pi:
        raise ValueError("fatten must lie in (0, pi)")
    return float(_kernels.fattened_union_measure(cloud.half, delta, math.pi))


def max_gap_estimate(cloud: PointCloud) -> float:
    """Largest angular gap of the cloud on the mod-pi circle.

    Overestimates the true maximal complement arc of the closed phase set
    and converges to it as the bound grows.
    """
    return float(_kernels.max_circular_gap(cloud.half, math.pi))


def nearest_angle(cloud: PointCloud, theta: float) -> float:
    """The cloud angle circularly closest to theta (compared modulo pi)."""
    if cloud.half.size == 0:
        raise ValueError("empty cloud")
    t = math.fmod(theta, math.pi)
    if t <= 0.0:
        t += math.pi
    idx = int(np.searchsorted(cloud.half, t))
    best, best_dist = None, math.inf
    for k in (idx - 1, idx, 0, cloud.half.size - 1):
        if 0 <= k < cloud.half.size:
            cand = float(cloud.half[k])
            d = abs(cand - t)
            d = min(d, math.pi - d)
            if d < best_dist:
                best, best_dist = cand, d
    return best


def _strictly_inside(l: int, z: HalfPlanePoint, margin: float) -> bool:
    c = l / 2.0
    if c * (z.re * z.re + z.im * z.im) - z.re <= margin:
        return False
    return c - z.re > margin


def fd_orbit_check(
    l: int,
    sample_count: int,
    region: tuple[float, float, float, float] = (-8.0, 8.0, 0.05, 8.0),
    seed: int = 0,
    max_iter: int = 64,
    margin: float = 1e-9,
) -> dict:
    """Randomized tiling check of the fundamental domain F_l.

    Draws sample_count points uniformly from the given (re_min, re_max,
    im_min, im_max) box, reduces each one, and verifies membership plus
    uniqueness: when the reduced point is strictly interior, no small power
    of alpha_l may move it to another strictly interior point.
    """
    re_min, re_max, im_min, im_max = region
    if not (re_min < re_max and 0.0 < im_min < im_max):
        raise ValueError("degenerate sampling region")
    rng = random.Random(seed)
    alpha = alpha_matrix(l)
    powers = [alpha.power(k) for k in range(-5, 6) if k != 0]
    failures = 0
    uniqueness_violations = 0
    boundary_hits = 0
    max_abs_exponent = 0
    for _ in range(sample_count):
        z = HalfPlanePoint(rng.uniform(re_min, re_max), rng.uniform(im_min, im_max))
        try:
            w, j = fd_reduce(l, z, max_iter)
        except NonTermination:
            failures += 1
            continue
        if not fd_contains(l, w):
            failures += 1
            continue
        max_abs_exponent = max(max_abs_exponent, abs(j))
        if not _strictly_inside(l, w, margin):
            boundary_hits += 1
            continue
        for mat in powers:
            if _strictly_inside(l, moebius_apply(mat, w), margin):
                uniqueness_violations += 1
                break
    return {
        "samples": sample_count,
        "failures": failures,
        "uniqueness_violations": uniqueness_violations,
        "boundary_hits": boundary_hits,
        "max_abs_exponent": max_abs_exponent,
    }
