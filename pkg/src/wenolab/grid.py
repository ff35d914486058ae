"""Uniform grids, ghost layers, and boundary filling.

Grids are immutable after construction.  A field is a plain numpy array of
length ``n + 2 * ghost`` (per axis); operations here only ever touch the
ghost entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigError

#: Sample placements.  "points" places n nodes on the closed interval
#: (dx = L/(n-1)), "cells" places n cell centers (dx = L/n), and "periodic"
#: places n nodes on the half-open interval (dx = L/n, x_max excluded).
CONVENTIONS = ("points", "cells", "periodic")


@dataclass(frozen=True)
class Grid1D:
    x_min: float
    x_max: float
    n: int
    ghost: int
    convention: str
    dx: float

    @property
    def x(self) -> np.ndarray:
        """Interior sample coordinates, length n."""
        return self.x_with_ghosts[self.ghost : self.ghost + self.n]

    @property
    def x_with_ghosts(self) -> np.ndarray:
        i = np.arange(-self.ghost, self.n + self.ghost)
        if self.convention == "points":
            return self.x_min + i * self.dx
        if self.convention == "cells":
            return self.x_min + (i + 0.5) * self.dx
        return self.x_min + i * self.dx  # periodic nodes

    @property
    def total(self) -> int:
        return self.n + 2 * self.ghost

    def interior(self, a: np.ndarray) -> np.ndarray:
        """View of the interior samples of a ghosted field."""
        return a[self.ghost : self.ghost + self.n]


@dataclass(frozen=True)
class Grid2D:
    gx: Grid1D
    gy: Grid1D


def make_uniform_grid(
    x_min: float,
    x_max: float,
    n: int,
    ghost: int = 3,
    convention: str = "points",
) -> Grid1D:
    """Build a uniform 1D grid.

    ``n`` counts interior samples.  With the default "points" convention the
    samples include both endpoints and dx = (x_max - x_min)/(n - 1); "cells"
    and "periodic" use dx = (x_max - x_min)/n.
    """
    if not (np.isfinite(x_min) and np.isfinite(x_max)):
        raise ConfigError("grid bounds must be finite")
    if x_max <= x_min:
        raise ConfigError(f"x_max must exceed x_min, got [{x_min}, {x_max}]")
    if n < 5:
        raise ConfigError(f"need at least 5 samples for a 5-point stencil, got {n}")
    if ghost < 3:
        raise ConfigError(f"ghost width must be >= 3 for WENO-5, got {ghost}")
    if convention not in CONVENTIONS:
        raise ConfigError(f"unknown grid convention {convention!r}")
    length = x_max - x_min
    dx = length / (n - 1) if convention == "points" else length / n
    return Grid1D(float(x_min), float(x_max), int(n), int(ghost), convention, dx)


# --- boundary kinds ---------------------------------------------------------


@dataclass(frozen=True)
class Periodic:
    pass


@dataclass(frozen=True)
class Outflow:
    pass


@dataclass(frozen=True)
class Reflective:
    pass


@dataclass(frozen=True)
class FixedState:
    """Dirichlet ghost values; ``state`` is a scalar or one row per variable."""

    state: np.ndarray

    def __init__(self, state):
        object.__setattr__(self, "state", np.atleast_1d(np.asarray(state, dtype=float)))


@dataclass(frozen=True)
class Custom:
    """Problem-supplied fill rule, called as fill(x_ghost, t) -> values."""

    fill: Callable[[np.ndarray, float], np.ndarray]


BoundaryKind = Periodic | Outflow | Reflective | FixedState | Custom


def fill_ghosts(
    values: np.ndarray,
    grid: Grid1D,
    left: BoundaryKind,
    right: BoundaryKind,
    t: float = 0.0,
    momentum_component: int | None = None,
) -> np.ndarray:
    """Populate the ghost entries of ``values`` in place and return it.

    ``values`` has shape (n + 2*ghost,) or (n + 2*ghost, nvar).  Reflective
    walls mirror all components and negate ``momentum_component`` when given
    (the wall-normal momentum of an Euler field).
    """
    g, n = grid.ghost, grid.n
    if values.shape[0] != grid.total:
        raise ConfigError(
            f"field length {values.shape[0]} does not match grid total {grid.total}"
        )
    if isinstance(left, Periodic) != isinstance(right, Periodic):
        raise ConfigError("periodic boundaries must be used on both sides")

    if isinstance(left, Periodic):
        values[:g] = values[n : n + g]
        values[n + g :] = values[g : 2 * g]
        return values

    _fill_side(values, grid, left, t, momentum_component, side="left")
    _fill_side(values, grid, right, t, momentum_component, side="right")
    return values


def _fill_side(values, grid, kind, t, momentum_component, side):
    g, n = grid.ghost, grid.n
    ghost_sl = slice(0, g) if side == "left" else slice(n + g, n + 2 * g)
    if isinstance(kind, Outflow):
        edge = values[g] if side == "left" else values[n + g - 1]
        values[ghost_sl] = edge
    elif isinstance(kind, FixedState):
        state = kind.state if values.ndim > 1 else kind.state[0]
        values[ghost_sl] = state
    elif isinstance(kind, Custom):
        xg = grid.x_with_ghosts[ghost_sl]
        values[ghost_sl] = kind.fill(xg, t)
    elif isinstance(kind, Reflective):
        # "cells"/"periodic" mirror across the boundary face; "points" across
        # the boundary node itself (which stays untouched).
        off = 0 if grid.convention in ("cells", "periodic") else 1
        if side == "left":
            src = values[g + off : 2 * g + off][::-1]
            values[ghost_sl] = src
        else:
            src = values[n + g - g - off : n + g - off][::-1]
            values[ghost_sl] = src
        if momentum_component is not None and values.ndim > 1:
            values[ghost_sl, momentum_component] *= -1.0
    else:
        raise ConfigError(f"unsupported boundary kind {kind!r}")
