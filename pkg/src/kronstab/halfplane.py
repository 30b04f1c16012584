"""Moebius action of integer matrices on the upper half plane.

The matrix of interest for each integer l >= 2 is

    alpha_l = [[l, -1], [1, 0]],

whose Moebius action z -> (l*z - 1)/z propagates consecutive central-charge
ratios along a helix.  The closed region

    F_l = {x + iy : y > 0, (l/2)*(x^2 + y^2) >= x, x <= l/2}

is a fundamental domain for the cyclic group generated by alpha_l, and
`fd_reduce` moves an arbitrary point of the half plane into it by an integer
power of alpha_l.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

__all__ = [
    "HalfPlanePoint",
    "UnimodularMatrix",
    "MoebiusClass",
    "NumericDegeneracy",
    "NonTermination",
    "alpha_matrix",
    "moebius_apply",
    "classify",
    "fd_contains",
    "fd_reduce",
]


class NumericDegeneracy(ArithmeticError):
    """A Moebius image could not be computed in floating point."""


class NonTermination(RuntimeError):
    """fd_reduce exhausted its exponent budget without entering the domain."""


@dataclass(frozen=True)
class HalfPlanePoint:
    """A point x + iy with y > 0."""

    re: float
    im: float

    def __post_init__(self) -> None:
        if not (self.im > 0.0) or not math.isfinite(self.re) or not math.isfinite(self.im):
            raise ValueError(f"not in the upper half plane: {self.re} + {self.im}i")

    def as_complex(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class UnimodularMatrix:
    """An integer 2x2 matrix with determinant one.

    >>> m = UnimodularMatrix(3, -1, 1, 0)
    >>> m.inverse() @ m == UnimodularMatrix.identity()
    True
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("determinant must be 1")

    @staticmethod
    def identity() -> "UnimodularMatrix":
        return UnimodularMatrix(1, 0, 0, 1)

    def __matmul__(self, other: "UnimodularMatrix") -> "UnimodularMatrix":
        return UnimodularMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "UnimodularMatrix":
        # det = 1, so the adjugate is the inverse
        return UnimodularMatrix(self.d, -self.b, -self.c, self.a)

    def power(self, k: int) -> "UnimodularMatrix":
        base = self if k >= 0 else self.inverse()
        out = UnimodularMatrix.identity()
        for _ in range(abs(k)):
            out = out @ base
        return out

    def trace(self) -> int:
        return self.a + self.d

    def is_scalar(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d


class MoebiusClass(enum.Enum):
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"
    SCALAR = "Scalar"


def alpha_matrix(l: int) -> UnimodularMatrix:
    """The matrix [[l, -1], [1, 0]] for an integer l >= 2."""
    if not isinstance(l, int) or l < 2:
        raise ValueError(f"l must be an integer >= 2, got {l!r}")
    return UnimodularMatrix(l, -1, 1, 0)


def moebius_apply(m: UnimodularMatrix, z: HalfPlanePoint) -> HalfPlanePoint:
    """Image (a*z + b)/(c*z + d).  Determinant 1 keeps the half plane stable."""
    zc = z.as_complex()
    den = m.c * zc + m.d
    if abs(den) < 1e-300:
        raise NumericDegeneracy(f"denominator underflow at {zc}")
    w = (m.a * zc + m.b) / den
    try:
        return HalfPlanePoint(w.real, w.imag)
    except ValueError as exc:
        # im = y/|cz+d|^2 > 0 exactly; only floating underflow lands here
        raise NumericDegeneracy(f"image degenerated at {zc}") from exc


def classify(m: UnimodularMatrix) -> MoebiusClass:
    """Conjugacy type by trace: |tr| < 2 elliptic, = 2 parabolic, > 2 hyperbolic.

    Scalar matrices (here only +-identity) act trivially and are split off
    first, so PARABOLIC always means a genuine parallel displacement.

    >>> classify(alpha_matrix(2))
    <MoebiusClass.PARABOLIC: 'Parabolic'>
    >>> classify(alpha_matrix(3))
    <MoebiusClass.HYPERBOLIC: 'Hyperbolic'>
    """
    if m.is_scalar():
        return MoebiusClass.SCALAR
    t2 = m.trace() ** 2
    if t2 < 4:
        return MoebiusClass.ELLIPTIC
    if t2 == 4:
        return MoebiusClass.PARABOLIC
    return MoebiusClass.HYPERBOLIC


def fd_contains(l: int, z: HalfPlanePoint, tol: float = 1e-12) -> bool:
    """Whether z lies in the closed domain F_l, with a tolerance band.

    Both defining inequalities are checked to -tol, so points within tol
    outside the boundary still count as inside.  Keeping ties inside makes
    fd_reduce deterministic on boundary orbits.
    """
    c = l / 2.0
    if c * (z.re * z.re + z.im * z.im) - z.re < -tol:
        return False
    return c - z.re >= -tol


def fd_reduce(
    l: int, z: HalfPlanePoint, max_iter: int = 64
) -> tuple[HalfPlanePoint, int]:
    """Find j with alpha_l^j(z) in F_l; returns (image, j).

    Exponents are scanned in the order 0, 1, -1, 2, -2, ... and the first
    hit wins, so the result is deterministic.  Raises NonTermination when no
    exponent of magnitude <= max_iter lands in the domain (for l >= 2 the
    domain tiles the half plane, so this indicates max_iter was too small
    or the input sits astronomically deep in the cusp).
    """
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    if fd_contains(l, z):
        return z, 0
    alpha = alpha_matrix(l)
    pos = UnimodularMatrix.identity()
    neg = UnimodularMatrix.identity()
    inv = alpha.inverse()
    for k in range(1, max_iter + 1):
        pos = alpha @ pos
        w = moebius_apply(pos, z)
        if fd_contains(l, w):
            return w, k
        neg = inv @ neg
        w = moebius_apply(neg, z)
        if fd_contains(l, w):
            return w, -k
    raise NonTermination(f"no exponent of magnitude <= {max_iter} reduced {z}")
