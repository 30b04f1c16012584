"""Epsilon-norms of Kronecker categories and of their orthogonal sums.

The norm of the l-Kronecker category has the closed form

    K_eps(l) = arccos((c - a)/D) - arccos((a*c - 1)/D),
    c = cos(pi*eps),  a = a_l,  D = sqrt(a^2 + 1 - 2*a*c),

for l >= 3, and vanishes for l <= 2.  It equals the half-volume
F(1, c, a) - F(1, c, 1/a) of the extremal stability condition x = 1,
y = cos(pi*eps), sits strictly below the cap pi*(1 - eps), and tends to the
cap as l grows.

For an orthogonal sum of Kronecker factors the exact norm is open; this
module provides a certified upper bound built from the recursion

    B(S) = cap - (cap - X)/(M + 1),

where X is the bound for the best proper sub-multiset and M dominates the
growth of any single factor's contribution, together with a seeded numeric
maximizer that produces honest lower values.
"""
from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .kronecker import slope_limits
from .stability import ChartPoint, XYParams, _max_phase_gap, _slope_iter, f_value

__all__ = [
    "Epsilon",
    "NormKind",
    "NormReport",
    "SumSpec",
    "InfeasibleConstraint",
    "k_epsilon",
    "norm_kronecker",
    "norm_sup_numeric",
    "m_bound",
    "sum_norm_upper_bound",
    "sum_norm_numeric",
    "growth_sequence",
    "pair_lower_bound",
]

# golden-section step, 2/(1 + sqrt 5)
PHI_RATIO = 2.0 / (1.0 + math.sqrt(5.0))


class InfeasibleConstraint(RuntimeError):
    """No configuration satisfied the phase-gap constraint."""


@dataclass(frozen=True)
class Epsilon:
    """The gap parameter, a float strictly between 0 and 1."""

    value: float

    def __post_init__(self) -> None:
        if not 0.0 < self.value < 1.0:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.value!r}")


def _eps_value(epsilon: Epsilon | float) -> float:
    if isinstance(epsilon, Epsilon):
        return epsilon.value
    return Epsilon(float(epsilon)).value


class NormKind(enum.Enum):
    CLOSED_FORM = "ClosedForm"
    NUMERIC_SUP = "NumericSup"
    UPPER_BOUND = "UpperBound"
    LOWER_BOUND = "LowerBound"


@dataclass(frozen=True)
class NormReport:
    """A norm value together with how it was obtained.

    witness, when present, is the (x, y) chart point realizing the value.
    detail carries method-specific extras such as optimizer seeds.
    """

    value: float
    witness: XYParams | None
    kind: NormKind
    detail: dict | None = None


@dataclass(frozen=True)
class SumSpec:
    """An orthogonal sum of Kronecker factors with a common gap parameter."""

    levels: tuple[int, ...]
    epsilon: Epsilon

    def __post_init__(self) -> None:
        if not self.levels:
            raise ValueError("at least one level is required")
        for l in self.levels:
            if not isinstance(l, int) or l < 0:
                raise ValueError(f"levels must be nonnegative integers, got {l!r}")


def _check_level(l: int, minimum: int) -> None:
    if not isinstance(l, int) or l < minimum:
        raise ValueError(f"l must be an integer >= {minimum}, got {l!r}")


def k_epsilon(l: int, epsilon: Epsilon | float) -> float:
    """Closed-form norm of the l-Kronecker category.

    >>> round(k_epsilon(4, 0.5), 12) == round(math.pi / 3, 12)
    True
    """
    _check_level(l, 0)
    e = _eps_value(epsilon)
    if l <= 2:
        return 0.0
    _, a = slope_limits(l)
    c = math.cos(math.pi * e)
    d = math.sqrt(a * a + 1.0 - 2.0 * a * c)
    return math.acos((c - a) / d) - math.acos((a * c - 1.0) / d)


def norm_kronecker(l: int, epsilon: Epsilon | float) -> NormReport:
    """Closed-form norm with its extremal witness x = 1, y = cos(pi*eps)."""
    _check_level(l, 1)
    e = _eps_value(epsilon)
    value = k_epsilon(l, e)
    witness = XYParams(1.0, math.cos(math.pi * e)) if l >= 3 else None
    return NormReport(value, witness, NormKind.CLOSED_FORM)


def _golden_max(fn, lo: float, hi: float, iters: int):
    """Golden-section maximum of fn on [lo, hi], endpoints included.

    Returns (argmax, max).  fn is assumed unimodal; the endpoint probes make
    boundary maxima exact rather than limits of the shrinking bracket.
    """
    best_arg, best_val = lo, fn(lo)
    v = fn(hi)
    if v > best_val:
        best_arg, best_val = hi, v
    a, b = lo, hi
    c = b - PHI_RATIO * (b - a)
    d = a + PHI_RATIO * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - PHI_RATIO * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + PHI_RATIO * (b - a)
            fd = fn(d)
    if fc > best_val:
        best_arg, best_val = c, fc
    if fd > best_val:
        best_arg, best_val = d, fd
    return best_arg, best_val


def norm_sup_numeric(
    l: int,
    epsilon: Epsilon | float,
    x_grid: Sequence[float] | None = None,
    refine_iters: int = 60,
) -> NormReport:
    """Numeric supremum of the half-volume over admissible chart points.

    Scans x over a grid (log-spaced around 1 by default), maximizing over y
    by golden section on [-1, cos(pi*eps)], then polishes x between the best
    grid neighbors.  Chart points with y above the cut are also probed and
    kept whenever their widest phase gap still exceeds pi*eps, so the search
    is over the genuine feasible region, not just the y <= cos(pi*eps) slab.
    """
    _check_level(l, 2)
    e = _eps_value(epsilon)
    ce = math.cos(math.pi * e)
    a_inv, a = slope_limits(l)

    def half_vol(x: float, y: float) -> float:
        return f_value(x, y, a) - f_value(x, y, a_inv)

    if x_grid is None:
        xs = [math.exp(-2.0 + 4.0 * i / 40.0) for i in range(41)]
        xs.append(1.0)
        xs = sorted(set(xs))
    else:
        xs = sorted(float(x) for x in x_grid)
        if not xs or xs[0] <= 0.0:
            raise ValueError("x_grid must contain positive reals")
    y_lo = -1.0 + 1e-9

    best_x, best_y, best_val = xs[0], ce, -1.0
    for x in xs:
        yb, vb = _golden_max(lambda y: half_vol(x, y), y_lo, ce, refine_iters)
        if vb > best_val:
            best_x, best_y, best_val = x, yb, vb
    # polish x inside the bracket around the best grid point
    i = xs.index(best_x)
    lo = xs[i - 1] if i > 0 else xs[0] / 2.0
    hi = xs[i + 1] if i + 1 < len(xs) else xs[-1] * 2.0

    def best_over_y(x: float) -> float:
        return _golden_max(lambda y: half_vol(x, y), y_lo, ce, refine_iters)[1]

    xb, vb = _golden_max(best_over_y, lo, hi, refine_iters)
    if vb > best_val:
        best_x, best_val = xb, vb
        best_y = _golden_max(lambda y: half_vol(xb, y), y_lo, ce, refine_iters)[0]
    # feasible configurations above the y cut (the gap sits elsewhere there)
    threshold = math.pi * e
    for x in xs[:: max(1, len(xs) // 12)]:
        for k in range(1, 12):
            y = ce + (1.0 - ce) * k / 13.0
            gap_angle = math.acos(y)
            p = ChartPoint(l, 0, 0.25j, complex(math.log(x), 0.25 + gap_angle))
            if _max_phase_gap(p) > threshold:
                v = half_vol(x, y)
                if v > best_val:
                    best_x, best_y, best_val = x, y, v
    return NormReport(best_val, XYParams(best_x, best_y), NormKind.NUMERIC_SUP)


def m_bound(l: int, epsilon: Epsilon | float) -> float:
    """Growth constant M for the sum recursion, by bounded numeric search.

    Two suprema are scanned on a corner-including grid; both supremands are
    monotone in the inner variables, so those are resolved exactly at their
    endpoints, and the x > x_max tail is dominated analytically by
    ((a + x)/x)^2 evaluated at x_max.  The grid therefore lands on the true
    corner maxima (x = 1/a, y = -1) exactly.
    """
    _check_level(l, 3)
    e = _eps_value(epsilon)
    a_inv, a = slope_limits(l)
    s2 = math.sin(math.pi * e) ** 2
    ce = math.cos(math.pi * e)
    x_max = 8.0 * a
    ratio = math.exp(math.log(x_max / (a_inv / 16.0)) / 96.0)
    xs = sorted({a_inv / 16.0 * ratio**i for i in range(97)} | {a_inv, 1.0, a})
    ys = [-1.0 + (ce + 1.0) * i / 64.0 for i in range(65)]
    sup1 = (1.0 + a_inv / x_max) ** 2
    sup2 = (1.0 + a / x_max) ** 2
    for x in xs:
        den = max(a_inv * a_inv, x * x)
        for y in ys:
            # t swept over [0, 1/a]: parabola in t, max at an endpoint
            num1 = x * x + max(0.0, a_inv * a_inv - 2.0 * a_inv * x * y)
            # x' swept over [0, x]: same endpoint argument
            num2 = a * a + max(0.0, x * x - 2.0 * a * x * y)
            sup1 = max(sup1, num1 / den)
            sup2 = max(sup2, num2 / den)
    return max((a * a - 1.0) * sup1, (1.0 - a_inv * a_inv) * sup2) / s2


def _proper_subsets(ms: tuple[int, ...]) -> set[tuple[int, ...]]:
    out: set[tuple[int, ...]] = set()
    for r in range(1, len(ms)):
        out.update(combinations(ms, r))
    return out


def sum_norm_upper_bound(spec: SumSpec) -> NormReport:
    """Certified upper bound for the norm of an orthogonal sum.

    Factors with l <= 2 contribute nothing and are dropped first.  The
    bound is strictly below the cap pi*(1 - eps) whenever every single
    factor is, which the closed form guarantees.
    """
    e = spec.epsilon.value
    cap = math.pi * (1.0 - e)
    active = tuple(sorted(l for l in spec.levels if l >= 3))
    if not active:
        return NormReport(0.0, None, NormKind.UPPER_BOUND, {"levels": ()})
    m_by_level = {l: m_bound(l, e) for l in set(active)}
    memo: dict[tuple[int, ...], float] = {}

    def bound(ms: tuple[int, ...]) -> float:
        if len(ms) == 1:
            return k_epsilon(ms[0], e)
        if ms in memo:
            return memo[ms]
        x = max(bound(sub) for sub in _proper_subsets(ms))
        m = max(m_by_level[l] for l in ms)
        val = cap - (cap - x) / (m + 1.0)
        memo[ms] = val
        return val

    value = bound(active)
    detail = {"levels": active, "m_constant": max(m_by_level[l] for l in active)}
    return NormReport(value, None, NormKind.UPPER_BOUND, detail)


def _mod_pi_segments(lo: float, hi: float) -> list[tuple[float, float]]:
    """[lo, hi] pushed onto the mod-pi circle, split at the wrap point."""
    length = hi - lo
    s = lo % math.pi
    if s + length <= math.pi:
        return [(s, s + length)]
    return [(s, math.pi), (0.0, s + length - math.pi)]


def _union_length(segments: list[tuple[float, float]]) -> float:
    total = 0.0
    cursor = -1.0
    for lo, hi in sorted(segments):
        if lo > cursor:
            total += hi - lo
            cursor = hi
        elif hi > cursor:
            total += hi - cursor
            cursor = hi
    return total


class _Factor:
    """Rotated-frame ladder of one Kronecker factor, truncated for a fixed
    gap threshold.

    points: anchor pi plus the kept F values of both families.
    blocked: the interval [last forward F, last backward F]; it contains the
    accumulation interval and every dropped ladder point, and the phase gaps
    it swallows are all below the threshold, so blocking it is exact for
    feasibility checks at that threshold.
    limit: the true accumulation interval, used for the measure objective.
    """

    __slots__ = ("points", "blocked", "limit")

    def __init__(self, l: int, gap: float, x: float, threshold: float) -> None:
        y = math.cos(gap)
        a_inv, a = slope_limits(l)
        u = f_value(x, y, a_inv)
        v = f_value(x, y, a)
        slopes = _slope_iter(l, forward=True)
        fwd = [f_value(x, y, next(slopes))]
        while u - fwd[-1] >= threshold:
            fwd.append(f_value(x, y, next(slopes)))
        slopes = _slope_iter(l, forward=False)
        bwd = [f_value(x, y, next(slopes))]
        while bwd[-1] - v >= threshold:
            bwd.append(f_value(x, y, next(slopes)))
        self.points = fwd + bwd + [math.pi]
        self.blocked = (fwd[-1], bwd[-1])
        self.limit = (u, v)


def _sum_objective(
    levels: Sequence[int], config: Sequence[tuple[float, float, float]], threshold: float
) -> float | None:
    """Union half-measure of the limit arcs, or None when no free arc of
    length >= threshold survives on the mod-pi circle."""
    covered: list[tuple[float, float]] = []
    objective: list[tuple[float, float]] = []
    for l, (gap, x, rot) in zip(levels, config):
        factor = _Factor(l, gap, x, threshold)
        for th in factor.points:
            s = (th + rot) % math.pi
            covered.append((s, s))
        covered.extend(_mod_pi_segments(factor.blocked[0] + rot, factor.blocked[1] + rot))
        objective.extend(_mod_pi_segments(factor.limit[0] + rot, factor.limit[1] + rot))
    covered.sort()
    merged: list[list[float]] = []
    for lo, hi in covered:
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    if len(merged) == 1:
        widest = merged[0][0] + math.pi - merged[0][1]
    else:
        widest = merged[0][0] + math.pi - merged[-1][1]
        for i in range(len(merged) - 1):
            widest = max(widest, merged[i + 1][0] - merged[i][1])
    if widest < threshold - 1e-12:
        return None
    return _union_length(objective)


def sum_norm_numeric(
    spec: SumSpec, samples: int = 10000, seed: int = 1729
) -> NormReport:
    """Seeded numeric lower value for the norm of an orthogonal sum.

    Each factor contributes a phase ladder with its own gap angle, scale x
    and rotation; the objective is the mod-pi measure of the union of the
    accumulation arcs over configurations that keep a common free arc of
    length pi*eps.  Curated near-extremal seeds guarantee the result is at
    least the best single factor's norm (up to the seed offset); random
    restarts and coordinate golden refinement then push upward.  The
    outcome never exceeds sum_norm_upper_bound beyond roundoff.
    """
    e = spec.epsilon.value
    threshold = math.pi * e
    active = [l for l in spec.levels if l >= 3]
    if not active:
        return NormReport(
            0.0, None, NormKind.LOWER_BOUND, {"seed": seed, "levels": ()}
        )
    nf = len(active)
    rng = random.Random(seed)
    gap_hi = math.pi * 0.995

    def clip_gap(g: float) -> float:
        return min(max(g, 0.01), gap_hi)

    def evaluate(config) -> float | None:
        return _sum_objective(active, config, threshold)

    best_val = -1.0
    best_cfg: list[tuple[float, float, float]] | None = None
    seeds = []
    for delta in (1e-7, 1e-5, 1e-3, 1e-2):
        g = clip_gap(threshold + delta)
        seeds.append([(g, 1.0, 0.0)] * nf)
        seeds.append([(g, 1.0, 0.3 * i) for i in range(nf)])
    for cfg in seeds:
        v = evaluate(cfg)
        if v is not None and v > best_val:
            best_val, best_cfg = v, [tuple(t) for t in cfg]
    for _ in range(samples):
        cfg = [
            (
                clip_gap(rng.uniform(0.02, gap_hi)),
                math.exp(rng.uniform(-2.0, 2.0)),
                0.0 if i == 0 else rng.uniform(0.0, math.pi),
            )
            for i in range(nf)
        ]
        v = evaluate(cfg)
        if v is not None and v > best_val:
            best_val, best_cfg = v, cfg
    if best_cfg is None:
        raise InfeasibleConstraint("no sampled configuration kept a free arc")

    def penalized(cfg) -> float:
        v = evaluate(cfg)
        return -1.0 if v is None else v

    step_gap, step_logx, step_rot = 0.2, 0.5, 0.4
    for _ in range(3):
        for i in range(nf):
            g0, x0, r0 = best_cfg[i]

            def with_gap(g):
                cfg = list(best_cfg)
                cfg[i] = (clip_gap(g), x0, r0)
                return penalized(cfg)

            g, v = _golden_max(with_gap, g0 - step_gap, g0 + step_gap, 40)
            if v > best_val:
                best_val = v
                best_cfg[i] = (clip_gap(g), x0, r0)
            g0, x0, r0 = best_cfg[i]

            def with_logx(u):
                cfg = list(best_cfg)
                cfg[i] = (g0, math.exp(u), r0)
                return penalized(cfg)

            u, v = _golden_max(
                with_logx, math.log(x0) - step_logx, math.log(x0) + step_logx, 40
            )
            if v > best_val:
                best_val = v
                best_cfg[i] = (g0, math.exp(u), r0)
            g0, x0, r0 = best_cfg[i]
            if i > 0:

                def with_rot(r):
                    cfg = list(best_cfg)
                    cfg[i] = (g0, x0, r % math.pi)
                    return penalized(cfg)

                r, v = _golden_max(with_rot, r0 - step_rot, r0 + step_rot, 40)
                if v > best_val:
                    best_val = v
                    best_cfg[i] = (g0, x0, r % math.pi)
        step_gap *= 0.25
        step_logx *= 0.25
        step_rot *= 0.25
    detail = {
        "seed": seed,
        "samples": samples,
        "config": tuple(
            {"l": l, "gap": c[0], "x": c[1], "rotation": c[2]}
            for l, c in zip(active, best_cfg)
        ),
    }
    return NormReport(best_val, None, NormKind.LOWER_BOUND, detail)


def growth_sequence(l: int, h1: int, h2: int, count: int) -> list[int]:
    """Hom dimensions along a helix of thick subcategory generators.

    Starts at (h1, h2) with h1 < h2 and iterates h -> l*h - h_prev.

    >>> growth_sequence(3, 3, 6, 4)
    [3, 6, 15, 39]
    """
    _check_level(l, 2)
    if not isinstance(h1, int) or not isinstance(h2, int) or h1 < 1 or h2 <= h1:
        raise ValueError("need integers 1 <= h1 < h2")
    if count < 2:
        raise ValueError("count must be >= 2")
    out = [h1, h2]
    while len(out) < count:
        out.append(l * out[-1] - out[-2])
    return out


def pair_lower_bound(hom_min: int, epsilon: Epsilon | float) -> float:
    """Norm lower bound from a pair of exceptional objects with hom
    dimension hom_min: such a pair generates a copy of the hom_min-Kronecker
    category, whose norm is the closed form."""
    _check_level(hom_min, 0)
    return k_epsilon(hom_min, epsilon)
