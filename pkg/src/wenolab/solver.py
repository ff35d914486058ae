"""Semi-discrete right-hand sides, TVD-RK3 stepping, and CFL control.

State arrays carry ghost layers: scalar fields are (m,), 1D Euler fields
(m, 3), 2D Euler fields (mx, my, 4), with m = n + 2*ghost per axis.  The RHS
operators assume ghosts are filled; ``rk3_step`` refills them before every
stage at the stage-appropriate time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .errors import ConfigError, NumericalFailure, PositivityFailure
from .grid import BoundaryKind, Grid1D, Grid2D, Outflow, Periodic, Reflective, FixedState, fill_ghosts
from .kernel import SchemeConfig


@dataclass(frozen=True)
class LinearAdvection:
    speed: float = 1.0


@dataclass(frozen=True)
class Euler1D:
    gamma: float = 1.4


@dataclass(frozen=True)
class Euler2D:
    gamma: float = 1.4


FluxModel = LinearAdvection | Euler1D | Euler2D


@dataclass
class RHSContext:
    """Everything an RHS evaluation needs besides the state itself."""

    grid: Grid1D | Grid2D
    scheme: SchemeConfig
    flux: FluxModel
    bc: tuple[BoundaryKind, BoundaryKind] | dict[str, BoundaryKind] = None
    reconstruction: str = "characteristic"
    source: Callable[[np.ndarray, float], np.ndarray] | None = None
    fill_override: Callable[[np.ndarray, Grid2D, float], None] | None = None

    def __post_init__(self):
        if self.reconstruction not in ("characteristic", "componentwise"):
            raise ConfigError(f"unknown reconstruction mode {self.reconstruction!r}")
        if isinstance(self.flux, Euler2D) and not isinstance(self.grid, Grid2D):
            raise ConfigError("Euler2D flux needs a Grid2D")

    def _scheme_args(self, dx):
        cfg = self.scheme
        c = cfg.c_array()
        return (
            cfg.scheme_id,
            float(cfg.epsilon),
            float(cfg.p),
            float(cfg.eta_value(dx)),
            float(c[0]),
            float(c[1]),
            float(c[2]),
        )


@dataclass
class TimeControls:
    cfl: float = 0.5
    t_final: float = 0.0
    fixed_dt: float | None = None
    dx_exponent: float = 1.0  # dt = cfl * dx**exponent / lambda (1D)

    def __post_init__(self):
        if self.fixed_dt is None and not (0.0 < self.cfl <= 1.0):
            raise ConfigError(f"cfl must lie in (0, 1], got {self.cfl}")
        if self.t_final < 0:
            raise ConfigError("t_final must be >= 0")


def lf_split(flux_samples, u_samples, alpha_speed):
    """Global Lax-Friedrichs splitting f± = (f ± alpha*u)/2."""
    f = np.asarray(flux_samples, dtype=float)
    u = np.asarray(u_samples, dtype=float)
    return 0.5 * (f + alpha_speed * u), 0.5 * (f - alpha_speed * u)


def fill_state_ghosts(U, ctx: RHSContext, t: float) -> np.ndarray:
    """Fill all ghost entries of a state array per the context's boundaries."""
    if isinstance(ctx.flux, Euler2D):
        return _fill_2d(U, ctx, t)
    left, right = ctx.bc
    mom = 1 if isinstance(ctx.flux, Euler1D) else None
    return fill_ghosts(U, ctx.grid, left, right, t, momentum_component=mom)


def _fill_axis(U, axis, grid, kind, side, t, momentum):
    g, n = grid.ghost, grid.n
    sl = [slice(None)] * U.ndim
    if isinstance(kind, Periodic):
        sl[axis] = slice(0, g)
        src = [slice(None)] * U.ndim
        src[axis] = slice(n, n + g)
        U[tuple(sl)] = U[tuple(src)]
        sl[axis] = slice(n + g, n + 2 * g)
        src[axis] = slice(g, 2 * g)
        U[tuple(sl)] = U[tuple(src)]
        return
    ghost = slice(0, g) if side == "lo" else slice(n + g, n + 2 * g)
    sl[axis] = ghost
    if isinstance(kind, Outflow):
        src = [slice(None)] * U.ndim
        src[axis] = slice(g, g + 1) if side == "lo" else slice(n + g - 1, n + g)
        U[tuple(sl)] = U[tuple(src)]
    elif isinstance(kind, FixedState):
        U[tuple(sl)] = kind.state
    elif isinstance(kind, Reflective):
        off = 0 if grid.convention in ("cells", "periodic") else 1
        src = [slice(None)] * U.ndim
        if side == "lo":
            src[axis] = slice(g + off, 2 * g + off)
        else:
            src[axis] = slice(n - off, n + g - off)
        U[tuple(sl)] = np.flip(U[tuple(src)], axis=axis)
        if momentum is not None:
            mom_sl = list(sl)
            mom_sl[-1] = momentum
            U[tuple(mom_sl)] *= -1.0
    else:
        raise ConfigError(f"unsupported 2D boundary kind {kind!r}")


def _fill_2d(U, ctx, t):
    gx, gy = ctx.grid.gx, ctx.grid.gy
    bc = ctx.bc
    if isinstance(bc["x_lo"], Periodic) != isinstance(bc["x_hi"], Periodic):
        raise ConfigError("periodic boundaries must pair up")
    _fill_axis(U, 0, gx, bc["x_lo"], "lo", t, momentum=1)
    if not isinstance(bc["x_lo"], Periodic):
        _fill_axis(U, 0, gx, bc["x_hi"], "hi", t, momentum=1)
    _fill_axis(U, 1, gy, bc["y_lo"], "lo", t, momentum=2)
    if not isinstance(bc["y_lo"], Periodic):
        _fill_axis(U, 1, gy, bc["y_hi"], "hi", t, momentum=2)
    if ctx.fill_override is not None:
        ctx.fill_override(U, ctx.grid, t)
    return U


# --- right-hand sides ---------------------------------------------------------


def rhs_scalar_1d(u, ctx: RHSContext) -> np.ndarray:
    """du/dt for linear advection; ghosts of ``u`` must be filled."""
    grid, flux = ctx.grid, ctx.flux
    rhs = _kernels.advection_rhs(
        u, grid.ghost, grid.dx, float(flux.speed), *ctx._scheme_args(grid.dx)
    )
    _check_finite(rhs[grid.ghost : grid.ghost + grid.n], "scalar rhs")
    return rhs


def _euler_alphas(U_int, gamma, characteristic, nv):
    """Global LF speeds per characteristic family (or a single speed).

    Intermediate RK stages may transiently undershoot the pressure near
    strong collisions; the speeds are computed with the pressure floored at
    zero so the stage stays evaluable.  Step-level positivity is enforced
    separately after every full step.
    """
    rho = U_int[..., 0]
    u = U_int[..., 1] / rho
    if nv == 3:
        ke = 0.5 * U_int[..., 1] * u
        E = U_int[..., 2]
    else:
        v = U_int[..., 2] / rho
        ke = 0.5 * (U_int[..., 1] * u + U_int[..., 2] * v)
        E = U_int[..., 3]
    p = (gamma - 1.0) * (E - ke)
    if np.any(rho <= 0):
        raise PositivityFailure("non-positive density entering RHS")
    a = np.sqrt(gamma * np.maximum(p, 0.0) / rho)
    if not characteristic:
        lam = float(np.max(np.abs(u) + a))
        return np.full(nv, lam)
    lam_minus = float(np.max(np.abs(u - a)))
    lam_0 = float(np.max(np.abs(u)))
    lam_plus = float(np.max(np.abs(u + a)))
    if nv == 3:
        return np.array([lam_minus, lam_0, lam_plus])
    return np.array([lam_minus, lam_0, lam_0, lam_plus])


def rhs_euler_1d(U, ctx: RHSContext) -> np.ndarray:
    """d(rho, rho*u, E)/dt; ghosts of ``U`` must be filled."""
    grid, gamma = ctx.grid, ctx.flux.gamma
    char = ctx.reconstruction == "characteristic"
    alpha = _euler_alphas(grid.interior(U), gamma, char, 3)
    rhs = _kernels.euler_rhs_lines(
        U[None, :, :], gamma, grid.dx, alpha, char, *ctx._scheme_args(grid.dx)
    )[0]
    _check_finite(grid.interior(rhs), "euler rhs")
    return rhs


def rhs_euler_2d(U, ctx: RHSContext, t: float = 0.0) -> np.ndarray:
    """Dimension-by-dimension 2D Euler RHS plus optional source term."""
    gx, gy = ctx.grid.gx, ctx.grid.gy
    gamma = ctx.flux.gamma
    char = ctx.reconstruction == "characteristic"
    g = gx.ghost
    interior = U[g : g + gx.n, g : g + gy.n, :]

    rhs = np.zeros_like(U)
    args = ctx._scheme_args(gx.dx)

    # x sweep: batch over interior y rows
    alpha_x = _euler_alphas(interior, gamma, char, 4)
    lines = np.ascontiguousarray(U[:, g : g + gy.n, :].transpose(1, 0, 2))
    out = _kernels.euler_rhs_lines(lines, gamma, gx.dx, alpha_x, char, *args)
    rhs[:, g : g + gy.n, :] += out.transpose(1, 0, 2)

    # y sweep: swap the momentum components and reuse the x kernel
    swap = (0, 2, 1, 3)
    alpha_y = _euler_alphas(interior[..., swap], gamma, char, 4)
    lines = np.ascontiguousarray(U[g : g + gx.n, :, :][..., swap])
    out = _kernels.euler_rhs_lines(lines, gamma, gy.dx, alpha_y, char, *args)
    rhs[g : g + gx.n, :, :] += out[..., swap]

    if ctx.source is not None:
        rhs += ctx.source(U, t)
    _check_finite(rhs[g : g + gx.n, g : g + gy.n, :], "euler 2d rhs")
    return rhs


def compute_rhs(U, ctx: RHSContext, t: float) -> np.ndarray:
    if isinstance(ctx.flux, LinearAdvection):
        return rhs_scalar_1d(U, ctx)
    if isinstance(ctx.flux, Euler1D):
        return rhs_euler_1d(U, ctx)
    return rhs_euler_2d(U, ctx, t)


def _check_finite(arr, label):
    if not np.all(np.isfinite(arr)):
        bad = np.argwhere(~np.isfinite(arr))
        raise NumericalFailure(f"non-finite {label}", where=tuple(bad[0]))


# --- time stepping -------------------------------------------------------------


def cfl_dt(U, ctx: RHSContext, controls: TimeControls) -> float:
    """CFL time step; ``fixed_dt`` passes through unchanged."""
    if controls.fixed_dt is not None:
        return controls.fixed_dt
    if isinstance(ctx.flux, LinearAdvection):
        lam = abs(ctx.flux.speed)
        return controls.cfl * ctx.grid.dx**controls.dx_exponent / lam
    if isinstance(ctx.flux, Euler1D):
        from .euler import max_wavespeed

        lam = max_wavespeed(ctx.grid.interior(U), ctx.flux.gamma)
        return controls.cfl * ctx.grid.dx**controls.dx_exponent / lam
    gx, gy = ctx.grid.gx, ctx.grid.gy
    g = gx.ghost
    interior = U[g : g + gx.n, g : g + gy.n, :]
    rho = interior[..., 0]
    u = interior[..., 1] / rho
    v = interior[..., 2] / rho
    p = (ctx.flux.gamma - 1.0) * (interior[..., 3] - 0.5 * rho * (u * u + v * v))
    a = np.sqrt(ctx.flux.gamma * p / rho)
    lx = float(np.max(np.abs(u) + a))
    ly = float(np.max(np.abs(v) + a))
    return controls.cfl / (lx / gx.dx + ly / gy.dx)


def rk3_generic(u, t, dt, rhs_fn):
    """One TVD-RK3 step for du/dt = rhs_fn(u, t)."""
    u1 = u + dt * rhs_fn(u, t)
    u2 = 0.75 * u + 0.25 * (u1 + dt * rhs_fn(u1, t + dt))
    return u / 3.0 + 2.0 / 3.0 * (u2 + dt * rhs_fn(u2, t + 0.5 * dt))


def rk3_step(U, t, dt, ctx: RHSContext) -> np.ndarray:
    """One TVD-RK3 step of the configured PDE; refills ghosts per stage."""

    def rhs(V, tt):
        fill_state_ghosts(V, ctx, tt)
        return compute_rhs(V, ctx, tt)

    return rk3_generic(U, t, dt, rhs)


@dataclass
class Observer:
    """Callback fired when the run reaches each time in ``times``."""

    times: Sequence[float]
    fn: Callable[[float, np.ndarray, RHSContext], object]


@dataclass
class IntegrationResult:
    state: np.ndarray
    t: float
    steps: int
    observations: list = field(default_factory=list)


def _positivity_check(U, ctx, t):
    if isinstance(ctx.flux, LinearAdvection):
        return
    if isinstance(ctx.flux, Euler1D):
        interior = ctx.grid.interior(U)
        rho = interior[..., 0]
        ke = 0.5 * interior[..., 1] ** 2 / rho
        p = (ctx.flux.gamma - 1.0) * (interior[..., 2] - ke)
    else:
        g = ctx.grid.gx.ghost
        interior = U[g : g + ctx.grid.gx.n, g : g + ctx.grid.gy.n, :]
        rho = interior[..., 0]
        ke = 0.5 * (interior[..., 1] ** 2 + interior[..., 2] ** 2) / rho
        p = (ctx.flux.gamma - 1.0) * (interior[..., 3] - ke)
    if np.any(rho <= 0) or np.any(p <= 0):
        bad = np.argwhere((rho <= 0) | (p <= 0))
        raise PositivityFailure(
            f"positivity lost at t={t:.6g}", where=tuple(bad[0]), time=t
        )


def integrate(
    U0,
    ctx: RHSContext,
    controls: TimeControls,
    observers: Sequence[Observer] = (),
) -> IntegrationResult:
    """Advance to t_final; the last step is clipped to land exactly.

    Observer times also clip the step so records land exactly; results are
    gathered as (time, value) pairs in call order.
    """
    U = np.array(U0, dtype=float, copy=True)
    t = 0.0
    steps = 0
    t_final = controls.t_final
    events = sorted({tt for ob in observers for tt in ob.times})
    result = IntegrationResult(U, t, 0)

    def fire(tt):
        for ob in observers:
            if any(abs(tt - te) <= 1e-12 * max(1.0, abs(te)) for te in ob.times):
                fill_state_ghosts(U, ctx, tt)
                result.observations.append((tt, ob.fn(tt, U, ctx)))

    if any(te <= 1e-12 for te in events):
        fire(0.0)
    tiny = 1e-12 * max(1.0, t_final)
    while t < t_final - tiny:
        try:
            dt = cfl_dt(U, ctx, controls)
        except PositivityFailure as exc:
            exc.time = t
            raise
        dt = min(dt, t_final - t)
        for ev in events:
            if ev > t + tiny:
                dt = min(dt, ev - t)
                break
        try:
            U = rk3_step(U, t, dt, ctx)
        except (PositivityFailure, NumericalFailure, ValueError) as exc:
            raise NumericalFailure(
                f"step {steps} at t={t:.6g} failed: {exc}", time=t
            ) from exc
        t += dt
        steps += 1
        _positivity_check(U, ctx, t)
        fire(t)

    result.state = U
    result.t = t
    result.steps = steps
    return result
