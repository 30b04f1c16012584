import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kronstab.norms import (
    Epsilon,
    NormKind,
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
from kronstab.norms import _sum_objective

PI = math.pi

K_TABLE = {
    (3, 0.5): 0.8410686705679303,  # arccos(2/3)
    (4, 0.5): PI / 3,
    (5, 0.5): 1.1592794807274086,
    (3, 0.3): 1.4407212091772806,
    (4, 0.3): 1.6954416430528213,
}


def test_k_epsilon_frozen():
    for (l, e), want in K_TABLE.items():
        assert abs(k_epsilon(l, e) - want) < 1e-13
    assert abs((PI / 2 - k_epsilon(1000, 0.5)) - 0.002000001333335733) < 1e-12
    assert abs((PI / 2 - k_epsilon(1830, 0.5)) - 0.001092896392426720) < 1e-12


def test_k_epsilon_degenerate_and_validation():
    for e in (0.1, 0.5, 0.9):
        assert k_epsilon(2, e) == 0.0
        assert k_epsilon(0, e) == 0.0
    with pytest.raises(ValueError):
        k_epsilon(-1, 0.5)
    with pytest.raises(ValueError):
        k_epsilon(3, 0.0)
    with pytest.raises(ValueError):
        k_epsilon(3, 1.0)
    with pytest.raises(ValueError):
        Epsilon(-0.2)
    assert k_epsilon(3, Epsilon(0.5)) == k_epsilon(3, 0.5)


def test_k_epsilon_monotone_spot():
    assert k_epsilon(3, 0.5) < k_epsilon(4, 0.5) < k_epsilon(5, 0.5)
    assert k_epsilon(3, 0.3) > k_epsilon(3, 0.5) > k_epsilon(3, 0.7)


@settings(max_examples=150, deadline=None)
@given(l=st.integers(3, 60), e=st.floats(0.01, 0.99))
def test_k_epsilon_strictly_below_cap(l, e):
    v = k_epsilon(l, e)
    assert 0.0 < v < PI * (1.0 - e)


def test_norm_kronecker_report():
    rep = norm_kronecker(3, 0.5)
    assert rep.kind is NormKind.CLOSED_FORM
    assert rep.witness is not None
    assert rep.witness.x == 1.0
    assert abs(rep.witness.y) < 1e-15
    flat = norm_kronecker(2, 0.5)
    assert flat.value == 0.0 and flat.witness is None


def test_norm_sup_numeric_hits_closed_form():
    rep = norm_sup_numeric(3, 0.5, x_grid=[0.8, 1.0, 1.25], refine_iters=40)
    k = k_epsilon(3, 0.5)
    assert abs(rep.value - k) < 1e-9
    assert rep.value <= k + 1e-9
    assert rep.kind is NormKind.NUMERIC_SUP
    assert abs(rep.witness.x - 1.0) < 1e-6
    with pytest.raises(ValueError):
        norm_sup_numeric(3, 0.5, x_grid=[-1.0])
    with pytest.raises(ValueError):
        norm_sup_numeric(1, 0.5)


def test_m_bound_frozen():
    assert abs(m_bound(3, 0.5) - 52.6869176962) < 1e-6
    assert abs(m_bound(3, 0.3) - 80.49844719) < 1e-4
    assert abs(m_bound(3, 0.1) - 551.744565165) < 1e-4
    assert abs(m_bound(4, 0.5) - 206.851251684) < 1e-5


def test_m_bound_closed_form():
    # both suprema live at grid corners, so the scan is exact:
    # sup1 = 4 at (x, y) = (1/a, -1), sup2 = (a^2 + 1)^2 at the same corner
    for l in (3, 4, 7):
        a = (l + math.sqrt(l * l - 4.0)) / 2.0
        for e in (0.3, 0.5):
            want = max(
                (a * a - 1.0) * 4.0,
                (1.0 - a ** -2) * (a * a + 1.0) ** 2,
            ) / math.sin(PI * e) ** 2
            assert abs(m_bound(l, e) - want) < 1e-12 * want
    with pytest.raises(ValueError):
        m_bound(2, 0.5)


def test_sum_upper_bound_single_and_trivial():
    rep = sum_norm_upper_bound(SumSpec((3,), Epsilon(0.5)))
    assert rep.kind is NormKind.UPPER_BOUND
    assert abs(rep.value - k_epsilon(3, 0.5)) < 1e-15
    # l <= 2 factors contribute nothing
    with_flat = sum_norm_upper_bound(SumSpec((3, 2), Epsilon(0.5)))
    assert with_flat.value == rep.value
    empty = sum_norm_upper_bound(SumSpec((2, 2), Epsilon(0.5)))
    assert empty.value == 0.0


def test_sum_upper_bound_recursion():
    e = 0.5
    cap = PI * (1.0 - e)
    k = k_epsilon(3, e)
    m = m_bound(3, e)
    b2 = cap - (cap - k) / (m + 1.0)
    rep2 = sum_norm_upper_bound(SumSpec((3, 3), Epsilon(e)))
    assert abs(rep2.value - b2) < 1e-12
    b3 = cap - (cap - b2) / (m + 1.0)
    rep3 = sum_norm_upper_bound(SumSpec((3, 3, 3), Epsilon(e)))
    assert abs(rep3.value - b3) < 1e-12
    assert k < rep2.value < rep3.value < cap
    # mixed levels use the worst growth constant and best sub-bound
    m4 = m_bound(4, e)
    b34 = cap - (cap - k_epsilon(4, e)) / (max(m, m4) + 1.0)
    rep34 = sum_norm_upper_bound(SumSpec((4, 3), Epsilon(e)))
    assert abs(rep34.value - b34) < 1e-12
    assert rep34.detail["levels"] == (3, 4)


def test_sum_spec_validation():
    with pytest.raises(ValueError):
        SumSpec((), Epsilon(0.5))
    with pytest.raises(ValueError):
        SumSpec((3, -1), Epsilon(0.5))
    with pytest.raises(ValueError):
        SumSpec((3.0,), Epsilon(0.5))


def test_sum_objective_feasibility():
    # a lone factor whose widest gap (0.4*pi) is under the threshold
    assert _sum_objective([3], [(0.4 * PI, 1.0, 0.0)], 0.5 * PI) is None
    v = _sum_objective([3], [(0.5 * PI + 1e-6, 1.0, 0.0)], 0.5 * PI)
    assert v is not None
    assert abs(v - k_epsilon(3, 0.5)) < 1e-5
    # a second staggered copy eats into the shared free arc
    cfg = [(0.5 * PI + 1e-6, 1.0, 0.0), (0.5 * PI + 1e-6, 1.0, 0.3)]
    assert _sum_objective([3, 3], cfg, 0.5 * PI) is None


def test_sum_numeric_single_factor():
    rep = sum_norm_numeric(SumSpec((3,), Epsilon(0.5)), samples=200, seed=7)
    k = k_epsilon(3, 0.5)
    assert rep.kind is NormKind.LOWER_BOUND
    assert k - 1e-6 < rep.value <= k + 1e-9
    assert rep.detail["seed"] == 7
    assert rep.detail["config"][0]["l"] == 3
    again = sum_norm_numeric(SumSpec((3,), Epsilon(0.5)), samples=200, seed=7)
    assert again.value == rep.value
    flat = sum_norm_numeric(SumSpec((2,), Epsilon(0.5)), samples=10)
    assert flat.value == 0.0


def test_sum_numeric_sandwich_pair():
    spec = SumSpec((3, 3), Epsilon(0.5))
    low = sum_norm_numeric(spec, samples=400, seed=11)
    high = sum_norm_upper_bound(spec)
    assert k_epsilon(3, 0.5) - 1e-6 <= low.value
    assert low.value <= high.value + 1e-9
    assert high.value < PI * 0.5


def test_growth_sequence():
    assert growth_sequence(3, 3, 6, 8) == [3, 6, 15, 39, 102, 267, 699, 1830]
    assert growth_sequence(2, 1, 2, 5) == [1, 2, 3, 4, 5]
    with pytest.raises(ValueError):
        growth_sequence(3, 0, 6, 4)
    with pytest.raises(ValueError):
        growth_sequence(3, 6, 6, 4)
    with pytest.raises(ValueError):
        growth_sequence(3, 3, 6, 1)
    with pytest.raises(ValueError):
        growth_sequence(1, 3, 6, 4)


def test_pair_lower_bound():
    for h in (2, 3, 15, 39):
        assert pair_lower_bound(h, 0.5) == k_epsilon(h, 0.5)
    seq = growth_sequence(3, 3, 6, 6)
    vals = [pair_lower_bound(h, 0.5) for h in seq]
    assert all(a < b for a, b in zip(vals, vals[1:]))
