"""Threshold minimization over the wavenumber window and parameter sweeps."""

import numpy as np
import pytest

from mhdes import Params, minimize_over_a, neutral_sweep, solve_max_m
from mhdes.errors import ParameterError

# oracle values from a finite-difference Richardson scan minimized on a
# dense wavenumber grid (vanishing-coupling limit)
HYDRO_WALL = (1.8934, 44.3035)
HYDRO_PRESSURE = (2.0986, 87.5937)


@pytest.fixture(scope="module")
def sweep_cache(wb):
    out = {}
    for flow in ("couette", "hartmann"):
        out[flow] = neutral_sweep(flow, [0.1, 1.0, 10.0, 50.0], 0.1,
                                  a_window=(0.2, 30.0), N=50)
    return out


def test_wall_driven_vanishing_coupling_threshold(wb):
    pt = minimize_over_a(wb.params("couette", 1e-6), 0.2, 4.0, N=60)
    assert pt.converged
    a_ref, re_ref = HYDRO_WALL
    assert abs(pt.a_crit - a_ref) <= 0.01 * a_ref
    assert abs(pt.Re_E - re_ref) <= 0.01 * re_ref


def test_pressure_driven_vanishing_coupling_threshold(wb):
    pt = minimize_over_a(wb.params("hartmann", 1e-6), 0.5, 5.0, N=60)
    assert pt.converged
    a_ref, re_ref = HYDRO_PRESSURE
    assert abs(pt.a_crit - a_ref) <= 0.01 * a_ref
    assert abs(pt.Re_E - re_ref) <= 0.01 * re_ref


def test_window_perturbation_leaves_threshold_unchanged(wb):
    # interior minimum, so a 10% window change must not move the result
    params = wb.params("couette", 1.0)
    base = minimize_over_a(params, 0.2, 4.0, N=50)
    lo = minimize_over_a(params, 0.18, 3.6, N=50)
    hi = minimize_over_a(params, 0.22, 4.4, N=50)
    for other in (lo, hi):
        assert other.converged
        assert abs(other.Re_E - base.Re_E) <= 1e-4 * base.Re_E


def test_edge_minimum_flagged_not_converged(wb):
    # the wall-driven minimizer near a = 1.89 lies beyond this window
    pt = minimize_over_a(wb.params("couette", 1.0), 0.2, 1.0, N=50)
    assert not pt.converged
    assert pt.a_crit == 1.0


def test_refined_value_never_worse_than_coarse_scan(wb):
    params = wb.params("hartmann", 1.0)
    pt = minimize_over_a(params, 0.5, 5.0, N=50, coarse_points=12)
    grid = np.geomspace(0.5, 5.0, 12)
    coarse = [wb.solution("hartmann", 1.0, float(a), N=50).Re_a for a in grid]
    assert pt.Re_E <= min(coarse) + 1e-12


def test_sweep_converges_and_is_monotone(sweep_cache):
    for flow in ("couette", "hartmann"):
        pts = sweep_cache[flow]
        assert len(pts) == 4
        assert all(p.converged for p in pts)
        assert all(np.isfinite(p.Re_E) and p.Re_E > 0 for p in pts)
        # stronger fields stabilize: the threshold grows with Ha
        assert pts[3].Re_E > pts[0].Re_E


def test_sweep_preserves_input_order_and_parameters(sweep_cache):
    pts = sweep_cache["couette"]
    assert [p.Ha for p in pts] == [0.1, 1.0, 10.0, 50.0]
    assert all(p.flow == "couette" and p.Pm == 0.1 for p in pts)
    assert all(p.N_used == 50 for p in pts)


def test_singleton_sweep_matches_direct_minimization(wb):
    (pt,) = neutral_sweep("couette", [1.0], 0.1, a_window=(0.2, 4.0), N=50)
    direct = minimize_over_a(wb.params("couette", 1.0), 0.2, 4.0, N=50)
    assert pt == direct


def test_threshold_is_attained_by_a_solvable_point(wb):
    pt = minimize_over_a(wb.params("couette", 1.0), 0.2, 4.0, N=50)
    sol = wb.solution("couette", 1.0, pt.a_crit, N=50)
    assert abs(sol.Re_a - pt.Re_E) <= 1e-12 * pt.Re_E


def test_window_validation(wb):
    params = wb.params("couette", 1.0)
    for bad in ((0.0, 4.0), (-1.0, 4.0), (2.0, 1.0), (np.nan, 4.0)):
        with pytest.raises(ParameterError):
            minimize_over_a(params, bad[0], bad[1], N=50)
    with pytest.raises(ParameterError):
        minimize_over_a(params, 0.2, 4.0, N=50, coarse_points=2)


def test_sweep_validation():
    with pytest.raises(ParameterError):
        neutral_sweep("couette", [], 0.1)
    with pytest.raises(ParameterError):
        neutral_sweep("couette", [1.0, -2.0], 0.1)
    with pytest.raises(ParameterError):
        neutral_sweep("couette", [np.inf], 0.1)
