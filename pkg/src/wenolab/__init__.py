"""Finite-difference WENO-5 solver library with centered weighting strategies."""

from .errors import ConfigError, NumericalFailure, PositivityFailure, WenoLabError
from .grid import (
    Custom,
    FixedState,
    Grid1D,
    Grid2D,
    Outflow,
    Periodic,
    Reflective,
    fill_ghosts,
    make_uniform_grid,
)
from .kernel import (
    IDEAL_WEIGHTS,
    SCHEMES,
    SchemeConfig,
    Side,
    StencilWindow,
    WeightSet,
    candidate_reconstructions,
    ideal_combination,
    lambda_distribution,
    mapped_g,
    normalize,
    reconstruct_interface,
    smoothness_indicators,
    tau_global,
    unnormalized_weights,
)
from .euler import (
    EigenSystem,
    RiemannSolution,
    cons_to_prim,
    euler_flux,
    exact_riemann,
    max_wavespeed,
    prim_to_cons,
    roe_eigensystem,
    sample_riemann,
)
from .solver import (
    Euler1D,
    Euler2D,
    LinearAdvection,
    Observer,
    RHSContext,
    TimeControls,
    cfl_dt,
    integrate,
    lf_split,
    rhs_euler_1d,
    rhs_euler_2d,
    rhs_scalar_1d,
    rk3_step,
)
from .problems import PROBLEMS, ProblemSpec, eval_test_function, get_problem

__version__ = "0.1.0"
