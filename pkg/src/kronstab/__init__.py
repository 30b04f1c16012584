"""Stability-space invariants of Kronecker quiver categories.

Root systems and helices of the l-Kronecker quiver, Moebius dynamics of
central-charge ratios with their fundamental domains, phase sets of
stability conditions, and the epsilon-norms built from them, together with
brute-force oracles for cross-checking.  All phase volumes are reported
modulo pi (half the full-circle measure).
"""
from __future__ import annotations

from ._kernels import BACKEND
from .halfplane import (
    HalfPlanePoint,
    MoebiusClass,
    UnimodularMatrix,
    alpha_matrix,
    classify,
    fd_contains,
    fd_reduce,
    moebius_apply,
)
from .kronecker import (
    ChargePair,
    DimVector,
    K0Class,
    RootClass,
    charge_extend,
    charge_ratio_orbit,
    euler_form,
    helix_class,
    helix_dims,
    hom_pattern,
    real_roots,
    root_class,
    slope_limits,
)
from .norms import (
    Epsilon,
    NormKind,
    NormReport,
    SumSpec,
    growth_sequence,
    k_epsilon,
    m_bound,
    norm_kronecker,
    norm_sup_numeric,
    pair_lower_bound,
    sum_norm_numeric,
    sum_norm_upper_bound,
)
from .oracle import (
    PointCloud,
    cloud_from_chart,
    estimate_closure_measure,
    fd_orbit_check,
    max_gap_estimate,
)
from .stability import (
    Arc,
    ChartPoint,
    PhaseSet,
    PhaseUnion,
    StabilityClass,
    XYParams,
    autoequiv_action,
    classify_point,
    closure_volume,
    f_value,
    has_gap,
    limit_endpoints,
    phase_of,
    phase_set,
    phase_union,
    xy_params,
)

__version__ = "0.1.0"
