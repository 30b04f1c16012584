"""Root combinatorics and central charges for the l-Kronecker quiver.

Dimension vectors (n, m) carry the quadratic form

    q(n, m) = n^2 + m^2 - l*n*m.

Real roots (q = 1) split into two families generated by the recursion
x_{next} = l*x - x_{prev}:

    forward   i >= 1:  (n_1, m_1) = (0, 1),  (n_2, m_2) = (1, l), ...
    backward  i <= 0:  (n_0, m_0) = (1, 0),  (n_-1, m_-1) = (l, 1), ...

The two families mirror each other, (m_-i, n_-i) = (n_{i+1}, m_{i+1}), and
their slopes n_i/m_i converge monotonically to 1/a_l from below (forward)
and to a_l from above (backward), where a_l = (l + sqrt(l^2 - 4))/2.
Imaginary roots (q <= 0, nonzero) are exactly the vectors whose slope lies
in [1/a_l, a_l].

Central charges obey the same recursion, Z_{k+1} = l*Z_k - Z_{k-1}, and the
ratio of consecutive charges moves by the Moebius action of
alpha_l = [[l, -1], [1, 0]] on the upper half plane.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .halfplane import HalfPlanePoint, alpha_matrix, moebius_apply

__all__ = [
    "DimVector",
    "RootClass",
    "K0Class",
    "ChargePair",
    "DegenerateCharge",
    "quadratic_form",
    "root_class",
    "helix_dims",
    "real_roots",
    "slope_limits",
    "helix_class",
    "euler_form",
    "hom_pattern",
    "charge_extend",
    "charge_ratio_orbit",
]


class DegenerateCharge(ArithmeticError):
    """A central charge vanished while extending the recursion."""


def _check_l(l: int) -> None:
    if not isinstance(l, int) or l < 2:
        raise ValueError(f"l must be an integer >= 2, got {l!r}")


@dataclass(frozen=True)
class DimVector:
    """A dimension vector with nonnegative integer entries."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or not isinstance(self.m, int):
            raise ValueError("entries must be integers")
        if self.n < 0 or self.m < 0:
            raise ValueError("entries must be nonnegative")


class RootClass(enum.Enum):
    REAL = "RealRoot"
    IMAGINARY = "ImaginaryRoot"
    NOT_ROOT = "NotRoot"


def quadratic_form(l: int, v: DimVector) -> int:
    _check_l(l)
    return v.n * v.n + v.m * v.m - l * v.n * v.m


def root_class(l: int, v: DimVector) -> RootClass:
    """Classify (n, m): q = 1 is real, q <= 0 (nonzero vector) is imaginary.

    >>> root_class(3, DimVector(1, 3))
    <RootClass.REAL: 'RealRoot'>
    >>> root_class(3, DimVector(1, 2))
    <RootClass.IMAGINARY: 'ImaginaryRoot'>
    """
    if v.n == 0 and v.m == 0:
        return RootClass.NOT_ROOT
    q = quadratic_form(l, v)
    if q == 1:
        return RootClass.REAL
    if q <= 0:
        return RootClass.IMAGINARY
    return RootClass.NOT_ROOT


def helix_dims(l: int, i: int) -> DimVector:
    """Dimension vector of the i-th real root, either family.

    Exact integer arithmetic; entries grow like a_l^|i|, so large |i| is
    fine but slow (linear in |i|).
    """
    _check_l(l)
    if i >= 1:
        prev, cur = (0, 1), (1, l)
        for _ in range(i - 1):
            prev, cur = cur, (l * cur[0] - prev[0], l * cur[1] - prev[1])
        return DimVector(*prev)
    prev, cur = (1, 0), (l, 1)
    for _ in range(-i):
        prev, cur = cur, (l * cur[0] - prev[0], l * cur[1] - prev[1])
    return DimVector(*prev)


def real_roots(l: int, i_min: int, i_max: int) -> list[tuple[int, DimVector]]:
    """All (i, dims) for i_min <= i <= i_max, ascending in i."""
    _check_l(l)
    if i_min > i_max:
        raise ValueError("empty index range")
    out: list[tuple[int, DimVector]] = []
    # backward family, collected from i = min(0, i_max) down to i_min
    if i_min <= 0:
        hi = min(0, i_max)
        prev, cur = (1, 0), (l, 1)
        for i in range(0, i_min - 1, -1):
            if i <= hi:
                out.append((i, DimVector(*prev)))
            prev, cur = cur, (l * cur[0] - prev[0], l * cur[1] - prev[1])
        out.reverse()
    if i_max >= 1:
        prev, cur = (0, 1), (1, l)
        for i in range(1, i_max + 1):
            if i >= i_min:
                out.append((i, DimVector(*prev)))
            prev, cur = cur, (l * cur[0] - prev[0], l * cur[1] - prev[1])
    return out


def slope_limits(l: int) -> tuple[float, float]:
    """(1/a_l, a_l): the closed slope interval holding the imaginary roots.

    The lower limit is computed as 1/a_l rather than (l - sqrt(l^2 - 4))/2,
    which cancels catastrophically for large l.
    """
    _check_l(l)
    a = (l + math.sqrt(l * l - 4.0)) / 2.0
    return 1.0 / a, a


@dataclass(frozen=True)
class K0Class:
    """A signed dimension vector, sign +1 for forward helix objects, -1 backward."""

    sign: int
    dims: DimVector

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


def helix_class(l: int, i: int) -> K0Class:
    return K0Class(1 if i >= 1 else -1, helix_dims(l, i))


def euler_form(l: int, x: K0Class, y: K0Class) -> int:
    """Euler pairing; note the asymmetric cross term -l * n_x * m_y."""
    _check_l(l)
    raw = x.dims.n * y.dims.n + x.dims.m * y.dims.m - l * x.dims.n * y.dims.m
    return x.sign * y.sign * raw


def hom_pattern(l: int, i: int, j: int) -> tuple[int | None, int]:
    """(degree, dimension) of the only nonzero Hom space from object i to j.

    i <= j gives a degree-0 map space of dimension chi, i = j + 1 gives
    nothing (degree None), and i > j + 1 gives a degree-1 space of
    dimension -chi.

    >>> hom_pattern(3, 1, 2)
    (0, 3)
    >>> hom_pattern(3, 2, 1)
    (None, 0)
    """
    chi = euler_form(l, helix_class(l, i), helix_class(l, j))
    if i <= j:
        assert chi > 0
        return 0, chi
    if i == j + 1:
        assert chi == 0
        return None, 0
    assert chi < 0
    return 1, -chi


@dataclass(frozen=True)
class ChargePair:
    """Two consecutive central charges (Z_k, Z_{k+1}), both nonzero."""

    z_prev: complex
    z_next: complex

    def __post_init__(self) -> None:
        if self.z_prev == 0 or self.z_next == 0:
            raise ValueError("central charges must be nonzero")


def charge_extend(l: int, seed: ChargePair, k: int) -> complex:
    """Charge at offset k from the seed: k = 0 is z_prev, k = 1 is z_next.

    Both directions run the recursion Z_{k+1} = l*Z_k - Z_{k-1}; an exact
    zero anywhere along the way raises DegenerateCharge.
    """
    _check_l(l)
    if k == 0:
        return seed.z_prev
    if k == 1:
        return seed.z_next
    a, b = seed.z_prev, seed.z_next
    if k > 1:
        for _ in range(k - 1):
            a, b = b, l * b - a
            if b == 0:
                raise DegenerateCharge("charge recursion hit zero")
        return b
    for _ in range(-k):
        a, b = l * a - b, a
        if a == 0:
            raise DegenerateCharge("charge recursion hit zero")
    return a


def charge_ratio_orbit(l: int, z: HalfPlanePoint, j: int) -> HalfPlanePoint:
    """Ratio of consecutive charges after j helix steps: alpha_l^j acting on z."""
    return moebius_apply(alpha_matrix(l).power(j), z)
