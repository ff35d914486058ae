import numpy as np
import pytest

from wenolab.analysis import (
    adr_sweep,
    derivative_accuracy_table,
    l1_error,
    l1_order,
    periodic_windows,
    upwind5_symbol,
    weight_convergence_slope,
    weight_relative_error,
    weights_at_point,
    collect_weight_trace,
)
from wenolab.kernel import IDEAL_WEIGHTS, SchemeConfig, Side, weight_diagnostics
from wenolab.problems import TEST_FUNCTIONS, get_problem, build_grid, initial_state
from wenolab.solver import LinearAdvection, RHSContext, TimeControls


def test_l1_error_examples():
    dx = 0.1
    assert l1_error(np.ones(5), np.ones(5), dx) == 0.0
    assert l1_error(np.full(7, 2.0), np.full(7, 1.5), dx) == pytest.approx(0.35)
    assert l1_order(1e-2, 3.125e-4) == pytest.approx(5.0)


def test_order_column_formula():
    cfg = SchemeConfig("zc", epsilon=1e-40, p=2.0)
    report = derivative_accuracy_table(cfg, "f0", (25, 50))
    (r0, e0, o0), (r1, e1, o1) = report.rows
    assert o0 is None
    assert o1 == pytest.approx(np.log2(e0 / e1))


def test_ideal_weights_table_is_fifth_order():
    report = derivative_accuracy_table(SchemeConfig("ideal"), "f0", (25, 50, 100, 200))
    orders = [row[2] for row in report.rows[1:]]
    assert min(orders) >= 4.9


def test_weight_relative_error_zero_on_constant():
    for scheme in ("js", "z", "zc", "zc+"):
        e = weight_relative_error(SchemeConfig(scheme), np.full(64, 2.0), 1.0 / 64)
        assert e == pytest.approx((0.0, 0.0, 0.0, 0.0), abs=1e-12)


def test_smooth_sine_central_weight_near_ideal():
    n = 400
    x = -1 + 2.0 * np.arange(n) / n
    u = np.sin(np.pi * x)
    diag = weight_diagnostics(
        periodic_windows(u), SchemeConfig("z", epsilon=1e-40), 2.0 / n, Side.PLUS
    )
    assert np.all(np.abs(diag.omega[:, 1] - 0.6) < 1e-3)


def test_step_field_lambda_corners():
    u = np.zeros(64)
    u[20:40] = 1.0
    diag = weight_diagnostics(
        periodic_windows(u), SchemeConfig("js", epsilon=1e-40), 1.0 / 64, Side.PLUS
    )
    lam = diag.lam
    # cells straddling each jump keep exactly one smooth substencil
    corner_cells = [19, 20, 39, 40]
    corners = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    for i in corner_cells:
        pt = np.array([lam[i, 0], lam[i, 2]])
        assert np.min(np.linalg.norm(corners - pt, axis=1)) < 0.05
    # and every cell near a jump is pushed far from the smooth point (1/3, 1/3)
    for i in [18, 19, 20, 21, 38, 39, 40, 41]:
        pt = np.array([lam[i, 0], lam[i, 2]])
        assert np.linalg.norm(pt - 1.0 / 3.0) > 0.25


# --- ADR ---------------------------------------------------------------------------


def test_upwind5_symbol_low_wavenumber_consistency():
    om = np.array([1e-3, 1e-2])
    phi = upwind5_symbol(om)
    np.testing.assert_allclose(phi.real / om, 1.0, rtol=1e-6)
    assert np.all(np.abs(phi.imag) < 1e-12)


def test_adr_ideal_matches_symbol_small_grid():
    result = adr_sweep(SchemeConfig("ideal"), n_points=64)
    rows = np.array(result.rows)
    sym = upwind5_symbol(rows[:, 0])
    err = np.abs(rows[:, 1] + 1j * rows[:, 2] - sym)
    assert err.max() < 1e-6


def test_adr_low_wavenumber_behavior_nonlinear():
    result = adr_sweep(SchemeConfig("zc"), n_points=64)
    om, re, im = result.rows[0]
    assert re / om == pytest.approx(1.0, abs=1e-3)
    assert abs(im) < 1e-4


# --- weight-convergence slopes ------------------------------------------------------


def test_weights_at_point_shifted_side():
    f = TEST_FUNCTIONS["f1"].f
    cfg = SchemeConfig("z", epsilon=1e-40)
    dx = 2.0**-6
    w_plus = weights_at_point(cfg, f, 0.3, dx, "plus")
    w_minus = weights_at_point(cfg, f, 0.3, dx, "minus")
    assert w_plus == pytest.approx(IDEAL_WEIGHTS, abs=1e-2)
    assert w_minus == pytest.approx(IDEAL_WEIGHTS, abs=1e-2)
    # the minus stencils are the plus stencils of the point one cell left
    shifted = weights_at_point(cfg, f, 0.3 - dx, dx, "plus")
    np.testing.assert_array_equal(w_minus, shifted)


def test_z_weight_convergence_no_critical_point():
    f = TEST_FUNCTIONS["f1"].f
    slope = weight_convergence_slope(
        SchemeConfig("z", epsilon=1e-40), f, 0.3, [2.0**-k for k in range(4, 9)]
    )
    assert slope >= 3.0


def test_zcplus_weight_convergence_no_critical_point():
    f = TEST_FUNCTIONS["f1"].f
    slope = weight_convergence_slope(
        SchemeConfig("zc+", epsilon=1e-40), f, 0.3, [2.0**-k for k in range(5, 13)]
    )
    assert slope == pytest.approx(2.0, abs=0.3)


# --- trace collection ----------------------------------------------------------------


def test_collect_weight_trace_advection():
    prob = get_problem("gste")
    grid = build_grid(prob, 100)
    ctx = RHSContext(
        grid=grid, scheme=SchemeConfig("z"), flux=LinearAdvection(1.0), bc=prob.bc
    )
    U0 = initial_state(prob, grid)
    trace = collect_weight_trace(
        U0, ctx, TimeControls(cfl=0.45, t_final=0.02), times=(0.01, 0.02)
    )
    rows = np.array(trace.rows)
    assert rows.shape == (200, 7)
    w = rows[:, 2:5]
    np.testing.assert_allclose(w.sum(axis=1), 1.0, atol=1e-12)
    assert np.all(w >= 0)
