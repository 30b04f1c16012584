"""Phase geometry of stability conditions on Kronecker-quiver categories.

A stability condition is described in the chart anchored at helix position j
by two logarithmic coordinates

    z1 = log|Z(s_j)|     + i*pi*phi(s_j),
    z2 = log|Z(s_{j+1})| + i*pi*phi(s_{j+1}),

with Im z2 > Im z1.  When Im z2 - Im z1 < pi every helix object and every
imaginary root supports a stable object (region InZ); otherwise only the two
anchor objects survive (Outside).  Writing

    x = exp(Re z2 - Re z1),    y = cos(Im z2 - Im z1),

the phase of the object at helix offset k is governed by the function

    F(x, y, t) = arccos((x*y - t) / sqrt(t^2 + x^2 - 2*t*x*y))

evaluated at the root slope t = n_k/m_k.  F is increasing in t, from
arccos(y) at t = 0 toward pi as t grows, so the forward phases accumulate at
F(x, y, 1/a_l) and the backward phases at F(x, y, a_l).

Phase sets are kept modulo pi: a phase and its antipode always occur
together, so every volume reported here (closure_volume, phase_union
measure) is half of the full-circle measure.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Iterable

from .kronecker import ChargePair, charge_extend, slope_limits

__all__ = [
    "NotInChart",
    "NotInZ",
    "DomainError",
    "StabilityClass",
    "ChartPoint",
    "XYParams",
    "PhaseSet",
    "Arc",
    "PhaseUnion",
    "classify_point",
    "xy_params",
    "f_value",
    "f_partial_x",
    "f_partial_t",
    "phase_of",
    "phase_set",
    "closure_volume",
    "limit_endpoints",
    "has_gap",
    "phase_union",
    "autoequiv_action",
]

_CLAMP = 1e-12


class NotInChart(ValueError):
    """Coordinates violate the chart inequality Im z2 > Im z1."""


class NotInZ(ValueError):
    """Operation requires the InZ region but the point is Outside."""


class DomainError(ValueError):
    """An arccos argument fell outside [-1, 1] beyond the rounding band."""


class StabilityClass(enum.Enum):
    IN_Z = "InZ"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class ChartPoint:
    """Chart coordinates (z1, z2) at helix anchor j for the l-Kronecker quiver."""

    l: int
    j: int
    z1: complex
    z2: complex

    def __post_init__(self) -> None:
        if not isinstance(self.l, int) or self.l < 2:
            raise ValueError(f"l must be an integer >= 2, got {self.l!r}")
        if not isinstance(self.j, int):
            raise ValueError("j must be an integer")
        for z in (self.z1, self.z2):
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise ValueError("coordinates must be finite")
        if not self.z2.imag > self.z1.imag:
            raise NotInChart(
                f"need Im z2 > Im z1, got {self.z1.imag} vs {self.z2.imag}"
            )


@dataclass(frozen=True)
class XYParams:
    """Chart invariants x = exp(Re z2 - Re z1) > 0 and y = cos(Im z2 - Im z1)."""

    x: float
    y: float


class Arc:
    """A closed circular arc given by its start angle and length."""

    __slots__ = ("start", "length")

    def __init__(self, start: float, length: float) -> None:
        if not (0.0 <= start < 2.0 * math.pi):
            raise ValueError("start must lie in [0, 2*pi)")
        if not 0.0 < length < math.pi:
            raise ValueError("length must lie in (0, pi)")
        self.start = start
        self.length = length

    def __repr__(self) -> str:
        return f"Arc(start={self.start!r}, length={self.length!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Arc):
            return NotImplemented
        return self.start == other.start and self.length == other.length


@dataclass(frozen=True)
class PhaseSet:
    """Phase multiset of stable objects, stored modulo pi in a rotated frame.

    discrete holds angles in (0, pi]; limit_interval, when present, is the
    arc of accumulation phases (imaginary roots).  Absolute phases are
    recovered as +-exp(i*rotation) * exp(i*theta) over theta in the stored
    data.  truncation records how many ladder steps were kept per family.
    """

    rotation: float
    discrete: tuple[float, ...]
    limit_interval: tuple[float, float] | None
    truncation: int


@dataclass(frozen=True)
class PhaseUnion:
    """Merged phase data of several stability conditions, again modulo pi."""

    points: tuple[float, ...]
    arcs: tuple[Arc, ...]
    measure: float


def classify_point(p: ChartPoint) -> StabilityClass:
    """InZ iff Im z2 - Im z1 < pi; the boundary counts as Outside."""
    if p.z2.imag - p.z1.imag < math.pi:
        return StabilityClass.IN_Z
    return StabilityClass.OUTSIDE


def xy_params(p: ChartPoint) -> XYParams:
    if classify_point(p) is not StabilityClass.IN_Z:
        raise NotInZ("xy parameters are defined on the InZ region only")
    return XYParams(
        math.exp(p.z2.real - p.z1.real), math.cos(p.z2.imag - p.z1.imag)
    )


def _clamped_acos(arg: float) -> float:
    if arg > 1.0:
        if arg > 1.0 + _CLAMP:
            raise DomainError(f"arccos argument {arg} exceeds 1")
        arg = 1.0
    elif arg < -1.0:
        if arg < -1.0 - _CLAMP:
            raise DomainError(f"arccos argument {arg} below -1")
        arg = -1.0
    return math.acos(arg)


def f_value(x: float, y: float, t: float) -> float:
    """F(x, y, t) = arccos((x*y - t)/sqrt(t^2 + x^2 - 2*t*x*y)).

    Requires x > 0, |y| <= 1, t >= 0 and a positive denominator.  Arguments
    that push the arccos input past +-1 by more than 1e-12 raise DomainError
    rather than being clamped silently.
    """
    if not (x > 0.0) or not math.isfinite(x):
        raise DomainError(f"x must be positive, got {x}")
    if not (-1.0 <= y <= 1.0):
        raise DomainError(f"y must lie in [-1, 1], got {y}")
    if not (t >= 0.0) or not math.isfinite(t):
        raise DomainError(f"t must be nonnegative, got {t}")
    den_sq = t * t + x * x - 2.0 * t * x * y
    if den_sq <= 0.0:
        raise DomainError("vanishing denominator (t = x and y = 1)")
    return _clamped_acos((x * y - t) / math.sqrt(den_sq))


def f_partial_x(x: float, y: float, t: float) -> float:
    """dF/dx = -t*sqrt(1 - y^2) / (t^2 + x^2 - 2*t*x*y)."""
    den = t * t + x * x - 2.0 * t * x * y
    if den <= 0.0:
        raise DomainError("vanishing denominator")
    return -t * math.sqrt(max(0.0, 1.0 - y * y)) / den


def f_partial_t(x: float, y: float, t: float) -> float:
    """dF/dt = x*sqrt(1 - y^2) / (t^2 + x^2 - 2*t*x*y)."""
    den = t * t + x * x - 2.0 * t * x * y
    if den <= 0.0:
        raise DomainError("vanishing denominator")
    return x * math.sqrt(max(0.0, 1.0 - y * y)) / den


def _to_half_turn(theta: float) -> float:
    """Reduce an angle modulo pi into the canonical interval (0, pi]."""
    r = math.fmod(theta, math.pi)
    if r < 0.0:
        r += math.pi
    return math.pi if r == 0.0 else r


def _slope_iter(l: int, forward: bool):
    """Root slopes n_k/m_k for k = 1, 2, ... of one recursion family."""
    if forward:
        prev, cur = (0, 1), (1, l)
    else:
        prev, cur = (l, 1), (l * l - 1, l)
    while True:
        yield prev[0] / prev[1]
        prev, cur = cur, (l * cur[0] - prev[0], l * cur[1] - prev[1])


def phase_of(p: ChartPoint, i: int) -> tuple[float, float]:
    """(pi*phi, |Z|) of the helix object s_i in the stability condition p.

    Phases follow the ladder

        pi*phi(s_{j+k}) = F(x, y, n_k/m_k) + Im z1          (k >= 1)
        pi*phi(s_j)     = Im z1
        pi*phi(s_{j-k}) = F(x, y, n_{-k}/m_{-k}) - pi + Im z1  (k >= 1)

    and moduli come from the charge recursion seeded by (exp z1, exp z2).
    """
    if classify_point(p) is not StabilityClass.IN_Z:
        raise NotInZ("helix phases beyond the anchors need the InZ region")
    k = i - p.j
    params = xy_params(p)
    modulus = abs(
        charge_extend(p.l, ChargePair(cmath.exp(p.z1), cmath.exp(p.z2)), k)
    )
    if k == 0:
        return p.z1.imag, modulus
    slopes = _slope_iter(p.l, forward=k > 0)
    for _ in range(abs(k) - 1):
        next(slopes)
    fv = f_value(params.x, params.y, next(slopes))
    if k > 0:
        return fv + p.z1.imag, modulus
    return fv - math.pi + p.z1.imag, modulus


def phase_set(p: ChartPoint, cutoff: int = 32) -> PhaseSet:
    """Truncated phase set of p, keeping cutoff ladder steps per family.

    InZ points store the anchor at pi, the two families of F values, and
    the accumulation interval [F(x,y,1/a), F(x,y,a)] in the frame rotated
    by -(pi - Im z1).  Outside points store only the anchor phases, reduced
    modulo pi, with rotation 0 and no interval.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    if classify_point(p) is StabilityClass.OUTSIDE:
        pts = sorted({_to_half_turn(p.z1.imag), _to_half_turn(p.z2.imag)})
        return PhaseSet(0.0, tuple(pts), None, 0)
    params = xy_params(p)
    a_inv, a = slope_limits(p.l)
    angles = [math.pi]
    for forward in (True, False):
        slopes = _slope_iter(p.l, forward)
        angles.extend(
            f_value(params.x, params.y, next(slopes)) for _ in range(cutoff)
        )
    angles.sort()
    interval = (f_value(params.x, params.y, a_inv), f_value(params.x, params.y, a))
    return PhaseSet(p.z1.imag - math.pi, tuple(angles), interval, cutoff)


def closure_volume(p: ChartPoint) -> float:
    """Half-measure of the closure of the phase set; 0 for Outside points."""
    if classify_point(p) is StabilityClass.OUTSIDE:
        return 0.0
    params = xy_params(p)
    a_inv, a = slope_limits(p.l)
    return f_value(params.x, params.y, a) - f_value(params.x, params.y, a_inv)


def limit_endpoints(p: ChartPoint) -> tuple[float, float]:
    """Endpoints (u, v) of the accumulation arc, v - u = closure_volume(p)."""
    if classify_point(p) is not StabilityClass.IN_Z:
        raise NotInZ("Outside points have no accumulation arc")
    params = xy_params(p)
    a_inv, a = slope_limits(p.l)
    shift = math.pi - p.z1.imag
    return (
        f_value(params.x, params.y, a_inv) + shift,
        f_value(params.x, params.y, a) + shift,
    )


def _gap_scan(p: ChartPoint, stop_below: float):
    """Yield the consecutive phase differences of the helix ladder.

    The ladder is scanned away from the anchor in both directions; each
    tail is abandoned once the distance left to its accumulation point
    drops below stop_below, because no later difference can exceed it.
    """
    params = xy_params(p)
    x, y = params.x, params.y
    a_inv, a = slope_limits(p.l)
    u = f_value(x, y, a_inv)
    v = f_value(x, y, a)
    # anchor to first forward object
    yield p.z2.imag - p.z1.imag
    slopes = _slope_iter(p.l, forward=True)
    prev = f_value(x, y, next(slopes))
    while u - prev >= stop_below:
        cur = f_value(x, y, next(slopes))
        yield cur - prev
        prev = cur
    # anchor to first backward object, then down the backward tail
    slopes = _slope_iter(p.l, forward=False)
    prev = f_value(x, y, next(slopes))
    yield math.pi - prev
    while prev - v >= stop_below:
        cur = f_value(x, y, next(slopes))
        yield prev - cur
        prev = cur


def has_gap(p: ChartPoint, epsilon: float) -> bool:
    """Whether some pair of phase-adjacent helix objects is more than
    pi*epsilon apart.

    Equivalently: whether the complement of the closed phase set contains
    an open arc of length > pi*epsilon.  The consecutive differences are

        arccos(y),  F(t_{k+1}) - F(t_k) forward,  pi - F(l),
        F(t_{-k}) - F(t_{-k-1}) backward,

    and each tail needs only finitely many terms: once the remaining
    distance to the accumulation point is below pi*epsilon, so is every
    difference hiding in it.  Outside points compare their two anchor
    phases on the mod-pi circle instead.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    threshold = math.pi * epsilon
    if classify_point(p) is StabilityClass.OUTSIDE:
        pts = sorted({_to_half_turn(p.z1.imag), _to_half_turn(p.z2.imag)})
        if len(pts) == 1:
            return True
        widest = max(pts[1] - pts[0], math.pi - (pts[1] - pts[0]))
        return widest > threshold
    return any(d > threshold for d in _gap_scan(p, threshold))


def _max_phase_gap(p: ChartPoint) -> float:
    """Largest consecutive phase difference, i.e. pi * sup{eps : has_gap}.

    Uses a growing threshold: every difference hiding in a tail is at most
    the distance left to the accumulation point, so a tail can be dropped
    as soon as that distance is below the maximum found so far.
    """
    params = xy_params(p)
    x, y = params.x, params.y
    a_inv, a = slope_limits(p.l)
    u = f_value(x, y, a_inv)
    v = f_value(x, y, a)
    best = p.z2.imag - p.z1.imag
    slopes = _slope_iter(p.l, forward=True)
    prev = f_value(x, y, next(slopes))
    while u - prev > best:
        cur = f_value(x, y, next(slopes))
        best = max(best, cur - prev)
        prev = cur
    slopes = _slope_iter(p.l, forward=False)
    prev = f_value(x, y, next(slopes))
    best = max(best, math.pi - prev)
    while prev - v > best:
        cur = f_value(x, y, next(slopes))
        best = max(best, prev - cur)
        prev = cur
    return best


def phase_union(sets: Iterable[PhaseSet]) -> PhaseUnion:
    """Merge phase sets on the absolute circle.

    points are the discrete phases modulo pi, arcs the accumulation
    intervals in absolute position together with their antipodes, and
    measure is the mod-pi length of the union of closed parts (half the
    full-circle measure, matching closure_volume).
    """
    two_pi = 2.0 * math.pi
    pts: set[float] = set()
    arcs: list[Arc] = []
    segments: list[tuple[float, float]] = []
    for ps in sets:
        for d in ps.discrete:
            pts.add(_to_half_turn(d + ps.rotation))
        if ps.limit_interval is None:
            continue
        lo, hi = ps.limit_interval
        length = hi - lo
        if length <= 0.0:
            # degenerate accumulation (l = 2): a single phase point
            pts.add(_to_half_turn(lo + ps.rotation))
            continue
        start = (lo + ps.rotation) % two_pi
        arcs.append(Arc(start, length))
        arcs.append(Arc((start + math.pi) % two_pi, length))
        s = (lo + ps.rotation) % math.pi
        if s + length <= math.pi:
            segments.append((s, s + length))
        else:
            segments.append((s, math.pi))
            segments.append((0.0, s + length - math.pi))
    segments.sort()
    measure = 0.0
    cursor = -1.0
    for lo, hi in segments:
        if lo > cursor:
            measure += hi - lo
            cursor = hi
        elif hi > cursor:
            measure += hi - cursor
            cursor = hi
    return PhaseUnion(tuple(sorted(pts)), tuple(arcs), measure)


def autoequiv_action(p: ChartPoint, k: int) -> ChartPoint:
    """Chart-j coordinates of the image of p under the k-th helix twist.

    The twist relabels the helix by k steps, so the image's data at the
    anchor pair (s_j, s_{j+1}) is p's data at (s_{j-k}, s_{j-k+1}).  As a
    consistency check, applying the Moebius matrix alpha_l to the image's
    ratio exp(z2 - z1) for k = 1 recovers the ratio of p itself.
    """
    if classify_point(p) is not StabilityClass.IN_Z:
        raise NotInZ("the twist action is computed through the phase ladder")
    angle1, mod1 = phase_of(p, p.j - k)
    angle2, mod2 = phase_of(p, p.j - k + 1)
    return ChartPoint(
        p.l,
        p.j,
        complex(math.log(mod1), angle1),
        complex(math.log(mod2), angle2),
    )
