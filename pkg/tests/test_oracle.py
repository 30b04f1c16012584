import math

import numpy as np
import pytest

from kronstab import _kernels
from kronstab import _kernels_py
from kronstab.oracle import (
    cloud_from_chart,
    estimate_closure_measure,
    fd_orbit_check,
    max_gap_estimate,
    nearest_angle,
)
from kronstab.stability import ChartPoint, closure_volume, phase_of
from kronstab.stability import _max_phase_gap

PI = math.pi

try:
    from kronstab import _kernels_cy
except ImportError:
    _kernels_cy = None


def standard_point() -> ChartPoint:
    return ChartPoint(3, 0, complex(0.0, PI), complex(0.0, 1.5 * PI))


def test_cloud_shape_and_anchors():
    cloud = cloud_from_chart(standard_point(), 40)
    assert cloud.skipped == 0
    n = cloud.half.size
    assert n > 0 and cloud.angles.size == 2 * n
    assert np.all(np.diff(cloud.half) >= 0.0)
    assert cloud.half[0] > 0.0 and cloud.half[-1] <= PI
    # every angle appears with its antipode
    assert np.array_equal(cloud.angles[n:] - cloud.angles[:n], np.full(n, PI))
    # root (1, 0) carries the anchor phase, root (0, 1) the next one
    assert PI in cloud.half
    assert nearest_angle(cloud, PI) == PI
    assert abs(nearest_angle(cloud, 1.5 * PI) - 0.5 * PI) < 1e-15
    with pytest.raises(ValueError):
        cloud_from_chart(standard_point(), 1)


def test_kernel_skips_vanishing_charges():
    # z1 = 1, z2 = -1 kills every (n, n); five such roots with n + m <= 10
    for mod in (_kernels, _kernels_py):
        angles, skipped = mod.cloud_angles(3, 10, 1 + 0j, -1 + 0j, 1e-14)
        assert skipped == 5
        assert np.all((angles >= 0.0) & (angles < PI))


def test_fattened_union_formula():
    one = np.array([1.0])
    assert abs(_kernels.fattened_union_measure(one, 0.3, PI) - 0.3) < 1e-15
    two = np.array([1.0, 2.0])
    # spacings 1.0 and pi - 1.0, both clipped at 0.3
    assert abs(_kernels.fattened_union_measure(two, 0.3, PI) - 0.6) < 1e-15
    dense = np.linspace(0.0, PI, 200, endpoint=False)
    assert abs(_kernels.fattened_union_measure(dense, 0.5, PI) - PI) < 1e-12
    assert abs(_kernels.max_circular_gap(one, PI) - PI) < 1e-15


def test_measure_estimate_converges():
    p = standard_point()
    est = estimate_closure_measure(cloud_from_chart(p, 300))
    assert abs(est - closure_volume(p)) < 0.1
    cloud = cloud_from_chart(p, 100)
    with pytest.raises(ValueError):
        estimate_closure_measure(cloud, fatten=0.0)
    with pytest.raises(ValueError):
        estimate_closure_measure(cloud, fatten=PI)


def test_max_gap_overestimates_and_shrinks():
    p = standard_point()
    exact = _max_phase_gap(p)
    g100 = max_gap_estimate(cloud_from_chart(p, 100))
    g400 = max_gap_estimate(cloud_from_chart(p, 400))
    assert g400 <= g100 + 1e-15
    assert g400 >= exact - 1e-12
    assert g100 >= exact - 1e-12


def test_cloud_matches_phase_ladder():
    p = standard_point()
    cloud = cloud_from_chart(p, 200)
    for i in range(-5, 6):
        want = phase_of(p, i)[0] % PI
        if want == 0.0:
            want = PI
        got = nearest_angle(cloud, want)
        d = abs(got - want)
        assert min(d, PI - d) < 1e-10


def test_fd_orbit_check():
    report = fd_orbit_check(3, 300, seed=5)
    assert report["samples"] == 300
    assert report["failures"] == 0
    assert report["uniqueness_violations"] == 0
    assert 0 < report["max_abs_exponent"] <= 64
    assert report == fd_orbit_check(3, 300, seed=5)
    with pytest.raises(ValueError):
        fd_orbit_check(3, 10, region=(1.0, -1.0, 0.1, 2.0))


@pytest.mark.skipif(_kernels_cy is None, reason="compiled kernels not built")
def test_backend_parity():
    p = ChartPoint(4, 0, complex(0.2, 1.1), complex(-0.4, 2.3))
    z1 = -np.exp(p.z1.real) * np.exp(1j * p.z1.imag)
    z2 = np.exp(p.z2.real) * np.exp(1j * p.z2.imag)
    a_py, s_py = _kernels_py.cloud_angles(4, 120, complex(z1), complex(z2), 1e-14)
    a_cy, s_cy = _kernels_cy.cloud_angles(4, 120, complex(z1), complex(z2), 1e-14)
    assert s_py == s_cy
    assert a_py.shape == a_cy.shape
    # atan2 differs between numpy and libm by at most one ulp
    assert np.max(np.abs(a_py - a_cy)) <= 5e-16
    g_py = _kernels_py.max_circular_gap(a_py, PI)
    g_cy = _kernels_cy.max_circular_gap(a_cy, PI)
    assert abs(g_py - g_cy) < 1e-12
    m_py = _kernels_py.fattened_union_measure(a_py, 0.05, PI)
    m_cy = _kernels_cy.fattened_union_measure(a_cy, 0.05, PI)
    assert abs(m_py - m_cy) < 1e-9
