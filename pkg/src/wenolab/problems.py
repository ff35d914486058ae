"""Registry of benchmark problems: initial conditions, boundaries, reference
solutions, and canonical run parameters.

Problem ids: gste, accuracy_f0/f1/f2, sod, lax, shu_osher, titarev_toro,
blast, sedov, rti, dmr.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigError
from .euler import exact_riemann, prim_to_cons, sample_riemann
from .grid import FixedState, Grid2D, Outflow, Periodic, Reflective, make_uniform_grid

SQRT3 = math.sqrt(3.0)


# --- scalar advection: GSTE ---------------------------------------------------

_GSTE_Z = -0.7
_GSTE_DELTA = 0.005
_GSTE_BETA = math.log(2.0) / (36.0 * _GSTE_DELTA**2)
_GSTE_A = 0.5
_GSTE_ALPHA = 10.0


def gste_initial(x):
    """Gaussian-square-triangle-ellipse profile on [-1, 1)."""
    x = np.asarray(x, dtype=float)

    def G(z0):
        return np.exp(-_GSTE_BETA * (x - z0) ** 2)

    def F(a0):
        return np.sqrt(np.maximum(1.0 - _GSTE_ALPHA**2 * (x - a0) ** 2, 0.0))

    u = np.zeros_like(x)
    m = (x >= -0.8) & (x <= -0.6)
    u = np.where(
        m, (G(_GSTE_Z - _GSTE_DELTA) + 4.0 * G(_GSTE_Z) + G(_GSTE_Z + _GSTE_DELTA)) / 6.0, u
    )
    u = np.where((x >= -0.4) & (x <= -0.2), 1.0, u)
    # triangle: peak 1 at x = 0.1 (the signed printed branch is a typo)
    m = (x >= 0.0) & (x <= 0.2)
    u = np.where(m, 1.0 - np.abs(10.0 * (x - 0.1)), u)
    m = (x >= 0.4) & (x <= 0.6)
    u = np.where(
        m, (F(_GSTE_A - _GSTE_DELTA) + 4.0 * F(_GSTE_A) + F(_GSTE_A + _GSTE_DELTA)) / 6.0, u
    )
    return u


def gste_exact(x, t):
    """Periodic shift of the initial profile (advection speed 1 on [-1, 1))."""
    x = np.asarray(x, dtype=float)
    return gste_initial(((x - t + 1.0) % 2.0) - 1.0)


# --- accuracy-test functions ---------------------------------------------------


@dataclass(frozen=True)
class TestFunction:
    fid: str
    f: Callable[[np.ndarray], np.ndarray]
    df: Callable[[np.ndarray], np.ndarray]


def _f0(x):
    return np.exp(x - np.sin(np.pi * x) / (2.0 * np.pi))


def _df0(x):
    return (1.0 - 0.5 * np.cos(np.pi * x)) * _f0(x)


def _f1(x):
    return np.sin(np.pi * x - np.sin(np.pi * x) / np.pi)


def _df1(x):
    return (np.pi - np.cos(np.pi * x)) * np.cos(np.pi * x - np.sin(np.pi * x) / np.pi)


def _g2(x):
    c, s = np.cos(np.pi * x), np.sin(np.pi * x)
    return np.pi * x + c + s + 0.5 * c * c + c**3


def _dg2(x):
    c, s = np.cos(np.pi * x), np.sin(np.pi * x)
    return np.pi * (1.0 - s + c - c * s - 3.0 * c * c * s)


def _f2(x):
    return np.sin(_g2(x))


def _df2(x):
    return _dg2(x) * np.cos(_g2(x))


TEST_FUNCTIONS = {
    "f0": TestFunction("f0", _f0, _df0),
    "f1": TestFunction("f1", _f1, _df1),
    "f2": TestFunction("f2", _f2, _df2),
}


def eval_test_function(fid: str, x):
    """(f(x), f'(x)) for an accuracy-test function id."""
    try:
        tf = TEST_FUNCTIONS[fid]
    except KeyError:
        raise ConfigError(
            f"unknown test function {fid!r}; valid ids: {', '.join(TEST_FUNCTIONS)}"
        ) from None
    return tf.f(x), tf.df(x)


# --- 1D Euler initial conditions -----------------------------------------------

_SHU_OSHER_LEFT = (27.0 / 7.0, 4.0 * math.sqrt(35.0) / 9.0, 31.0 / 3.0)
_TITAREV_TORO_LEFT = (1.515695, 0.523346, 1.805)


def _riemann_ic(left, right, x_jump=0.0):
    def ic(x, dx=None):
        x = np.asarray(x, dtype=float)
        prim = np.empty(x.shape + (3,))
        mask = x <= x_jump
        prim[mask] = left
        prim[~mask] = right
        return prim

    return ic


def _shu_osher_ic(x, dx=None):
    x = np.asarray(x, dtype=float)
    prim = np.empty(x.shape + (3,))
    mask = x < -4.0
    prim[mask] = _SHU_OSHER_LEFT
    prim[~mask, 0] = 1.0 + np.sin(5.0 * x[~mask]) / 5.0
    prim[~mask, 1] = 0.0
    prim[~mask, 2] = 1.0
    return prim


def _titarev_toro_ic(x, dx=None):
    x = np.asarray(x, dtype=float)
    prim = np.empty(x.shape + (3,))
    mask = x < -4.5
    prim[mask] = _TITAREV_TORO_LEFT
    prim[~mask, 0] = 1.0 + np.sin(20.0 * np.pi * x[~mask]) / 10.0
    prim[~mask, 1] = 0.0
    prim[~mask, 2] = 1.0
    return prim


def _blast_ic(x, dx=None):
    x = np.asarray(x, dtype=float)
    prim = np.empty(x.shape + (3,))
    prim[..., 0] = 1.0
    prim[..., 1] = 0.0
    prim[..., 2] = np.where(x < 0.1, 1000.0, np.where(x > 0.9, 100.0, 0.01))
    return prim


def _sedov_ic(x, dx):
    if dx is None:
        raise ConfigError("sedov initial condition needs the grid spacing")
    x = np.asarray(x, dtype=float)
    delta = dx / 2.0
    prim = np.empty(x.shape + (3,))
    prim[..., 0] = 1.0
    prim[..., 1] = 0.0
    # the tolerance absorbs center-coordinate roundoff; next centers sit at 3*delta
    prim[..., 2] = np.where(np.abs(x) <= delta * (1.0 + 1e-9), 2.56e8, 4.0e-13)
    return prim


def euler1d_initial(pid: str, x, dx=None):
    """Primitive (rho, u, p) initial state of a 1D Euler problem."""
    prob = get_problem(pid)
    if prob.kind != "euler1d":
        raise ConfigError(f"{pid!r} is not a 1D Euler problem")
    return prob.initial(x, dx)


def riemann_reference(pid: str, x, t: float):
    """Exact-Riemann reference (rho, u, p) for sod/lax at time t."""
    prob = get_problem(pid)
    if prob.exact is None:
        raise ConfigError(f"problem {pid!r} has no exact reference")
    return prob.exact(x, t)


def _riemann_exact(left, right, gamma, x_jump=0.0):
    def ref(x, t):
        x = np.asarray(x, dtype=float)
        if t <= 0.0:
            return _riemann_ic(left, right, x_jump)(x)
        sol = exact_riemann(np.array(left), np.array(right), gamma)
        return sample_riemann(sol, (x - x_jump) / t)

    return ref


# --- 2D problems ----------------------------------------------------------------

RTI_GAMMA = 5.0 / 3.0
RTI_BOTTOM = (2.0, 0.0, 0.0, 1.0)  # primitive (rho, u, v, p) at y = 0
RTI_TOP = (1.0, 0.0, 0.0, 2.5)

DMR_POST = (8.0, 4.125 * SQRT3, -4.125, 116.5)
DMR_PRE = (1.4, 0.0, 0.0, 1.0)


def prim_to_cons_2d(prim, gamma):
    prim = np.asarray(prim, dtype=float)
    rho, u, v, p = (prim[..., k] for k in range(4))
    out = np.empty_like(prim)
    out[..., 0] = rho
    out[..., 1] = rho * u
    out[..., 2] = rho * v
    out[..., 3] = p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v)
    return out


def cons_to_prim_2d(cons, gamma):
    cons = np.asarray(cons, dtype=float)
    rho = cons[..., 0]
    u = cons[..., 1] / rho
    v = cons[..., 2] / rho
    p = (gamma - 1.0) * (cons[..., 3] - 0.5 * rho * (u * u + v * v))
    out = np.empty_like(cons)
    out[..., 0] = rho
    out[..., 1] = u
    out[..., 2] = v
    out[..., 3] = p
    return out


def rti_initial(X, Y):
    """Primitive (rho, u, v, p) of the Rayleigh-Taylor layered state."""
    lower = Y < 0.5
    rho = np.where(lower, 2.0, 1.0)
    p = np.where(lower, 2.0 * Y + 1.0, Y + 1.5)
    a = np.sqrt(RTI_GAMMA * p / rho)
    v = -0.025 * a * np.cos(8.0 * np.pi * X)
    return np.stack([rho, np.zeros_like(rho), v, p], axis=-1)


def rti_source(U, t=0.0):
    """Buoyancy source (0, 0, rho, rho*v) on the conserved field."""
    s = np.zeros_like(U)
    s[..., 2] = U[..., 0]
    s[..., 3] = U[..., 2]
    return s


def dmr_initial(X, Y):
    post = X < 1.0 / 6.0 + Y / SQRT3
    prim = np.empty(X.shape + (4,))
    prim[post] = DMR_POST
    prim[~post] = DMR_PRE
    return prim


def dmr_shock_top_x(t: float) -> float:
    """x where the Mach-10 oblique shock crosses the top boundary y = 1."""
    return 1.0 / 6.0 + (1.0 + 20.0 * t) / SQRT3


def dmr_fill_y(U, grids: Grid2D, t: float):
    """DMR bottom (fixed for x <= 1/6, reflective beyond) and moving-shock top."""
    gx, gy = grids.gx, grids.gy
    g, ny = gy.ghost, gy.n
    xg = gx.x_with_ghosts
    post = prim_to_cons_2d(np.array(DMR_POST), 1.4)
    pre = prim_to_cons_2d(np.array(DMR_PRE), 1.4)

    fixed = xg <= 1.0 / 6.0
    for k in range(g):
        # bottom ghost row k mirrors interior row 2g-1-k across the wall face
        mirror = U[:, 2 * g - 1 - k, :].copy()
        mirror[:, 2] *= -1.0
        row = np.where(fixed[:, None], post[None, :], mirror)
        U[:, k, :] = row
    xs = dmr_shock_top_x(t)
    behind = xg < xs
    top = np.where(behind[:, None], post[None, :], pre[None, :])
    for k in range(g):
        U[:, ny + g + k, :] = top


# --- the registry ----------------------------------------------------------------


@dataclass(frozen=True)
class ProblemSpec:
    pid: str
    kind: str  # "scalar" | "euler1d" | "euler2d" | "function"
    x_min: float = 0.0
    x_max: float = 1.0
    y_min: float | None = None
    y_max: float | None = None
    n_default: int | tuple[int, int] = 100
    cfl: float = 0.5
    t_final: float = 0.0
    gamma: float | None = None
    convention: str = "cells"
    bc: object = None  # (left, right) or dict for 2D
    initial: Callable = None
    exact: Callable | None = None
    source: Callable | None = None
    fill_override: Callable | None = None
    notes: str = ""


PROBLEMS: dict[str, ProblemSpec] = {}


def _register(spec: ProblemSpec):
    PROBLEMS[spec.pid] = spec
    return spec


_register(
    ProblemSpec(
        pid="gste",
        kind="scalar",
        x_min=-1.0,
        x_max=1.0,
        n_default=400,
        cfl=0.45,
        t_final=2.0,
        convention="periodic",
        bc=(Periodic(), Periodic()),
        initial=gste_initial,
        exact=gste_exact,
    )
)

for _fid in ("f0", "f1", "f2"):
    _register(
        ProblemSpec(
            pid=f"accuracy_{_fid}",
            kind="function",
            x_min=-1.0,
            x_max=1.0,
            notes=_fid,
        )
    )

_register(
    ProblemSpec(
        pid="sod",
        kind="euler1d",
        convention="points",
        x_min=-0.5,
        x_max=0.5,
        n_default=200,
        cfl=0.5,
        t_final=0.2,  # the printed T=2 empties the domain; override via config
        gamma=1.4,
        bc=(Outflow(), Outflow()),
        initial=_riemann_ic((0.125, 0.0, 0.1), (1.0, 0.0, 1.0)),
        exact=_riemann_exact((0.125, 0.0, 0.1), (1.0, 0.0, 1.0), 1.4),
    )
)

_register(
    ProblemSpec(
        pid="lax",
        kind="euler1d",
        convention="points",
        x_min=-0.5,
        x_max=0.5,
        n_default=200,
        cfl=0.5,
        t_final=0.13,
        gamma=1.4,
        bc=(Outflow(), Outflow()),
        initial=_riemann_ic((0.445, 0.698, 3.528), (0.5, 0.0, 0.571)),
        exact=_riemann_exact((0.445, 0.698, 3.528), (0.5, 0.0, 0.571), 1.4),
    )
)

_register(
    ProblemSpec(
        pid="shu_osher",
        kind="euler1d",
        convention="points",
        x_min=-5.0,
        x_max=5.0,
        n_default=200,
        cfl=0.5,
        t_final=1.8,
        gamma=1.4,
        bc=(Outflow(), Outflow()),
        initial=_shu_osher_ic,
    )
)

_register(
    ProblemSpec(
        pid="titarev_toro",
        kind="euler1d",
        convention="points",
        x_min=-5.0,
        x_max=5.0,
        n_default=1000,
        cfl=0.5,
        t_final=5.0,
        gamma=1.4,
        bc=(Outflow(), Outflow()),
        initial=_titarev_toro_ic,
    )
)

_register(
    ProblemSpec(
        pid="blast",
        kind="euler1d",
        convention="points",
        x_min=0.0,
        x_max=1.0,
        n_default=400,
        cfl=0.5,
        t_final=0.038,
        gamma=1.4,
        bc=(Reflective(), Reflective()),
        initial=_blast_ic,
    )
)

_register(
    ProblemSpec(
        pid="sedov",
        kind="euler1d",
        convention="points",
        x_min=-2.0,
        x_max=2.0,
        n_default=1250,
        cfl=0.5,
        t_final=1e-3,
        gamma=7.0 / 5.0,
        bc=(Outflow(), Outflow()),
        initial=_sedov_ic,
    )
)

_register(
    ProblemSpec(
        pid="rti",
        kind="euler2d",
        x_min=0.0,
        x_max=0.25,
        y_min=0.0,
        y_max=1.0,
        n_default=(3840, 950),
        cfl=0.3,
        t_final=1.95,
        gamma=RTI_GAMMA,
        bc={
            "x_lo": Reflective(),
            "x_hi": Reflective(),
            "y_lo": FixedState(prim_to_cons_2d(np.array(RTI_BOTTOM), RTI_GAMMA)),
            "y_hi": FixedState(prim_to_cons_2d(np.array(RTI_TOP), RTI_GAMMA)),
        },
        initial=rti_initial,
        source=rti_source,
    )
)

_register(
    ProblemSpec(
        pid="dmr",
        kind="euler2d",
        x_min=0.0,
        x_max=4.0,
        y_min=0.0,
        y_max=1.0,
        n_default=(2000, 500),
        cfl=0.45,
        t_final=0.2,
        gamma=1.4,
        bc={
            "x_lo": FixedState(prim_to_cons_2d(np.array(DMR_POST), 1.4)),
            "x_hi": Outflow(),
            "y_lo": Outflow(),  # overwritten by fill_override
            "y_hi": Outflow(),
        },
        initial=dmr_initial,
        fill_override=dmr_fill_y,
    )
)


def get_problem(pid: str) -> ProblemSpec:
    try:
        return PROBLEMS[pid]
    except KeyError:
        raise ConfigError(
            f"unknown problem {pid!r}; valid ids: {', '.join(sorted(PROBLEMS))}"
        ) from None


def rti_setup() -> ProblemSpec:
    return get_problem("rti")


def dmr_setup() -> ProblemSpec:
    return get_problem("dmr")


def build_grid(prob: ProblemSpec, n: int | None = None, ghost: int = 3):
    """Grid1D for a 1D problem (or the x axis of a 2D one)."""
    nn = n if n is not None else (prob.n_default if isinstance(prob.n_default, int) else prob.n_default[0])
    return make_uniform_grid(prob.x_min, prob.x_max, nn, ghost, prob.convention)


def build_grid2d(prob: ProblemSpec, nx: int | None = None, ny: int | None = None, ghost: int = 3) -> Grid2D:
    base = prob.n_default if isinstance(prob.n_default, tuple) else (prob.n_default, prob.n_default)
    nx = nx if nx is not None else base[0]
    ny = ny if ny is not None else base[1]
    gx = make_uniform_grid(prob.x_min, prob.x_max, nx, ghost, prob.convention)
    gy = make_uniform_grid(prob.y_min, prob.y_max, ny, ghost, prob.convention)
    return Grid2D(gx, gy)


def initial_state(prob: ProblemSpec, grid, gamma: float | None = None):
    """Ghosted conserved (or scalar) state array on the given grid."""
    gamma = gamma if gamma is not None else prob.gamma
    if prob.kind == "scalar":
        u = np.zeros(grid.total)
        grid.interior(u)[:] = prob.initial(grid.x)
        return u
    if prob.kind == "euler1d":
        U = np.zeros((grid.total, 3))
        prim = prob.initial(grid.x, grid.dx)
        grid.interior(U)[:] = prim_to_cons(prim, gamma)
        return U
    if prob.kind == "euler2d":
        gx, gy = grid.gx, grid.gy
        U = np.zeros((gx.total, gy.total, 4))
        X, Y = np.meshgrid(gx.x, gy.x, indexing="ij")
        g = gx.ghost
        U[g : g + gx.n, g : g + gy.n, :] = prim_to_cons_2d(prob.initial(X, Y), gamma)
        return U
    raise ConfigError(f"problem {prob.pid!r} is not runnable")
