"""Measurement machinery: L1 errors and orders, the derivative accuracy test,
weight relative errors on the frozen advection field, weight/λ traces, the
ADR sweep, and empirical weight-convergence slopes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .euler import roe_eigensystem, euler_flux
from .kernel import (
    IDEAL_WEIGHTS,
    SchemeConfig,
    Side,
    normalize,
    reconstruct_batch,
    smoothness_indicators,
    tau_global,
    unnormalized_weights,
    weight_diagnostics,
)
from .problems import (
    TEST_FUNCTIONS,
    build_grid,
    eval_test_function,
    get_problem,
    initial_state,
)
from .solver import (
    LinearAdvection,
    Observer,
    RHSContext,
    TimeControls,
    integrate,
    rk3_step,
)

DEFAULT_RESOLUTIONS = (25, 50, 100, 200, 400, 800)


def l1_error(numerical, reference, dx: float) -> float:
    """Discrete L1 norm sum(|num - ref|) * dx over the given samples."""
    num = np.asarray(numerical, dtype=float)
    ref = np.asarray(reference, dtype=float)
    return float(np.sum(np.abs(num - ref)) * dx)


def l1_order(err_coarse: float, err_fine: float) -> float:
    """Order column entry log2(previous_error / this_error)."""
    return math.log2(err_coarse / err_fine)


@dataclass
class ErrorReport:
    scheme: str
    function: str
    rows: list = field(default_factory=list)  # (inv_dx, l1_error, order | None)


def weno_derivative(cfg: SchemeConfig, fid: str, inv_dx: int):
    """Left-biased WENO derivative of a test function on [-1, 1].

    ``inv_dx`` is the table label: the grid has inv_dx intervals of size
    dx = 2/inv_dx and inv_dx + 1 samples including both endpoints.  Stencils
    near the boundary use closed-form samples beyond the domain.
    Returns (x, approx_derivative, dx).
    """
    tf = TEST_FUNCTIONS[fid]
    n = int(inv_dx)
    dx = 2.0 / n
    i = np.arange(-3, n + 4)
    fx = tf.f(-1.0 + i * dx)
    # interface values for cells -1..n; cell j has window j-2..j+2
    idx = np.arange(-1, n + 1) + 3
    windows = np.stack([fx[idx + o] for o in range(-2, 3)], axis=-1)
    v = reconstruct_batch(windows, cfg, dx, Side.PLUS)
    deriv = (v[1:] - v[:-1]) / dx
    x = -1.0 + np.arange(0, n + 1) * dx
    return x, deriv, dx


def derivative_accuracy_table(
    cfg: SchemeConfig, fid: str, resolutions=DEFAULT_RESOLUTIONS
) -> ErrorReport:
    """L1 error/order of the WENO derivative against the analytic one."""
    if fid not in TEST_FUNCTIONS:
        raise ConfigError(f"unknown test function {fid!r}")
    report = ErrorReport(cfg.scheme, fid)
    prev = None
    for res in resolutions:
        x, deriv, dx = weno_derivative(cfg, fid, res)
        _, df = eval_test_function(fid, x)
        err = l1_error(deriv, df, dx)
        order = None if prev is None else l1_order(prev, err)
        report.rows.append((res, err, order))
        prev = err
    return report


# --- frozen-field weight diagnostics -------------------------------------------


def periodic_windows(u: np.ndarray) -> np.ndarray:
    """(n, 5) windows for the PlusHalf interface of every cell (periodic)."""
    return np.stack([np.roll(u, 2 - j) for j in range(5)], axis=-1)


def frozen_gste_field(n: int = 400, cfl: float = 0.45, t_final: float = 2.0):
    """The reference advected GSTE field: WENO-Z, dt = cfl * dx**(5/3).

    Returns (grid, interior_field).  This is the shared input of the weight
    relative-error table; every scheme is evaluated on this one field.
    """
    prob = get_problem("gste")
    grid = build_grid(prob, n)
    ctx = RHSContext(
        grid=grid,
        scheme=SchemeConfig("z", epsilon=1e-40, p=2.0),
        flux=LinearAdvection(1.0),
        bc=prob.bc,
    )
    controls = TimeControls(cfl=cfl, t_final=t_final, dx_exponent=5.0 / 3.0)
    result = integrate(initial_state(prob, grid), ctx, controls)
    return grid, grid.interior(result.state).copy()


def weight_relative_error(cfg: SchemeConfig, u: np.ndarray, dx: float):
    """(e_0, e_1, e_2, total) of a scheme's weights against the ideal ones.

    ``u`` is a periodic interior field; weights are evaluated at the PlusHalf
    interface of every cell on the field itself (positive split flux of unit
    advection).
    """
    diag = weight_diagnostics(periodic_windows(u), cfg, dx, Side.PLUS)
    e = np.sum(np.abs(diag.omega - IDEAL_WEIGHTS) / IDEAL_WEIGHTS, axis=0) * dx
    return float(e[0]), float(e[1]), float(e[2]), float(e.sum())


# --- weight / lambda traces -----------------------------------------------------


@dataclass
class WeightTrace:
    """Per-cell weight and λ samples at recorded times."""

    rows: list = field(default_factory=list)  # (t, x, w0, w1, w2, l0, l2)


def _advection_trace(t, U, ctx):
    grid = ctx.grid
    u = grid.interior(U)
    diag = weight_diagnostics(periodic_windows(u), ctx.scheme, grid.dx, Side.PLUS)
    return np.column_stack(
        [
            np.full(grid.n, t),
            grid.x,
            diag.omega,
            diag.lam[:, 0],
            diag.lam[:, 2],
        ]
    )


def _euler_density_char_trace(t, U, ctx):
    """Weights of the density-characteristic plus-split flux, one row per cell."""
    grid = ctx.grid
    gamma = ctx.flux.gamma
    g, m, n = grid.ghost, grid.total, grid.n
    f = euler_flux(U, gamma)
    eig = roe_eigensystem(U[g : m - g], U[g + 1 : m - g + 1], gamma)
    # density characteristic: the middle family (eigenvalue u)
    L1 = eig.left[:, 1, :]
    interior = grid.interior(U)
    lam_max = float(np.max(np.abs(interior[:, 1] / interior[:, 0])))
    qw = np.stack([U[g + o : m - g + o] for o in range(-2, 3)], axis=1)
    fw = np.stack([f[g + o : m - g + o] for o in range(-2, 3)], axis=1)
    wchar = np.einsum("ik,iwk->iw", L1, qw)
    fchar = np.einsum("ik,iwk->iw", L1, fw)
    fplus = 0.5 * (fchar + lam_max * wchar)
    diag = weight_diagnostics(fplus, ctx.scheme, grid.dx, Side.PLUS)
    return np.column_stack(
        [np.full(n, t), grid.x, diag.omega, diag.lam[:, 0], diag.lam[:, 2]]
    )


def collect_weight_trace(U0, ctx: RHSContext, controls: TimeControls, times) -> WeightTrace:
    """Integrate and record (x, omega_k, lambda_0, lambda_2) at given times."""
    trace = WeightTrace()
    fn = (
        _advection_trace
        if isinstance(ctx.flux, LinearAdvection)
        else _euler_density_char_trace
    )
    obs = Observer(times=tuple(times), fn=fn)
    result = integrate(U0, ctx, controls, observers=[obs])
    for t, block in result.observations:
        trace.rows.extend(block.tolist())
    return trace


# --- approximate dispersion relation ---------------------------------------------


@dataclass
class ADRResult:
    scheme: str
    rows: list = field(default_factory=list)  # (omega, re_phi, im_phi)


def upwind5_symbol(omega):
    """Analytic modified wavenumber of the 5th-order upwind derivative."""
    omega = np.asarray(omega, dtype=float)
    coeff = np.array([-2.0, 15.0, -60.0, 20.0, 30.0, -3.0]) / 60.0
    shifts = np.arange(-3, 3)
    z = (coeff * np.exp(1j * shifts * omega[..., None])).sum(axis=-1)
    return z / 1j


def adr_sweep(
    cfg: SchemeConfig, n_points: int = 422, cfl: float = 0.5, dt_probe: float = 1e-10
) -> ADRResult:
    """Probe-step ADR of the nonlinear scheme on unit-speed advection.

    One RK3 step of size ``dt_probe`` on the complex-exponential pair
    (cos, sin) per resolvable wavenumber; phi is the per-cell average of the
    complex log amplitude ratio.  Re -> dispersion, Im -> dissipation
    (Im < 0 is dissipative).  ``cfl`` is accepted for run-config parity but
    the probe always uses the fixed ``dt_probe``.
    """
    prob = get_problem("gste")
    grid = build_grid(prob, n_points)
    ctx = RHSContext(grid=grid, scheme=cfg, flux=LinearAdvection(1.0), bc=prob.bc)
    dx = grid.dx
    x = grid.x
    length = prob.x_max - prob.x_min
    result = ADRResult(cfg.scheme)
    u = np.zeros(grid.total)
    for m in range(1, n_points // 2 + 1):
        kappa = 2.0 * np.pi * m / length
        omega = kappa * dx
        evolved = []
        for u0 in (np.cos(kappa * x), np.sin(kappa * x)):
            grid.interior(u)[:] = u0
            evolved.append(grid.interior(rk3_step(u, 0.0, dt_probe, ctx)).copy())
        uhat = (evolved[0] + 1j * evolved[1]) * np.exp(-1j * kappa * x)
        phi = (1j * dx / dt_probe) * np.mean(np.log(uhat))
        result.rows.append((float(omega), float(phi.real), float(phi.imag)))
    return result


# --- empirical weight-convergence slopes ------------------------------------------


def weights_at_point(cfg: SchemeConfig, f, x0: float, dx: float, side: str = "plus"):
    """Normalized weights of the window centered at x0 with spacing dx.

    side "plus" samples x0 + j*dx for j = -2..2 (the x_{i+1/2} stencils);
    side "minus" uses the one-point-left-shifted stencils j = -3..1.
    """
    if side == "plus":
        offsets = np.arange(-2, 3)
    elif side == "minus":
        offsets = np.arange(-3, 2)
    else:
        raise ConfigError(f"side must be 'plus' or 'minus', got {side!r}")
    w = np.asarray(f(x0 + offsets * dx), dtype=float)
    beta = smoothness_indicators(w, Side.PLUS)
    alpha, _, _ = unnormalized_weights(cfg, beta, tau_global(beta), dx)
    return normalize(alpha)


def weight_convergence_slope(
    cfg: SchemeConfig,
    f,
    x0: float,
    dxs,
    side: str = "plus",
    floor: float = 1e-12,
) -> float:
    """log2 slope of max_k |omega_k - d_k| vs dx (least squares).

    Values below ``floor`` are dropped (rounding noise); at least two usable
    points are required.
    """
    dxs = np.asarray(sorted(dxs, reverse=True), dtype=float)
    devs = []
    for dx in dxs:
        om = weights_at_point(cfg, f, x0, float(dx), side)
        devs.append(np.max(np.abs(om - IDEAL_WEIGHTS)))
    devs = np.asarray(devs)
    mask = devs > floor
    if mask.sum() < 2:
        raise ConfigError("not enough resolvable points to fit a slope")
    lx = np.log2(dxs[mask])
    ly = np.log2(devs[mask])
    slope = np.polyfit(lx, ly, 1)[0]
    return float(slope)
