import numpy as np
import pytest

from wenolab.errors import ConfigError
from wenolab.grid import (
    Custom,
    FixedState,
    Outflow,
    Periodic,
    Reflective,
    fill_ghosts,
    make_uniform_grid,
)


def test_points_convention_matches_quoted_definition():
    grid = make_uniform_grid(0.0, 1.0, 101, 3, "points")
    assert grid.dx == pytest.approx(0.01)
    assert grid.x[0] == pytest.approx(0.0)
    assert grid.x[100] == pytest.approx(1.0)


def test_n_points_convention_large_domain():
    grid = make_uniform_grid(-5.0, 5.0, 1000, 3, "points")
    assert grid.dx == pytest.approx(10.0 / 999.0)


def test_cells_and_periodic_spacing():
    cells = make_uniform_grid(0.0, 1.0, 10, 3, "cells")
    assert cells.dx == pytest.approx(0.1)
    assert cells.x[0] == pytest.approx(0.05)
    per = make_uniform_grid(-1.0, 1.0, 400, 3, "periodic")
    assert per.dx == pytest.approx(0.005)
    assert per.x[0] == pytest.approx(-1.0)
    assert per.x[-1] == pytest.approx(1.0 - per.dx)


def test_centers_equispaced_and_increasing():
    grid = make_uniform_grid(-3.0, 7.0, 57, 4, "cells")
    d = np.diff(grid.x_with_ghosts)
    assert np.all(d > 0)
    assert np.allclose(d, grid.dx, rtol=0, atol=1e-14)


@pytest.mark.parametrize(
    "args",
    [
        (-1.0, 1.0, 3, 3),
        (0.0, 1.0, 10, 2),
        (1.0, 0.0, 10, 3),
        (0.0, np.inf, 10, 3),
    ],
)
def test_bad_grid_arguments_rejected(args):
    with pytest.raises(ConfigError):
        make_uniform_grid(*args)


def _ghosted(grid, interior):
    u = np.zeros(grid.total)
    grid.interior(u)[:] = interior
    return u


def test_periodic_fill_wraps_bitwise():
    grid = make_uniform_grid(0.0, 1.0, 8, 3, "periodic")
    u = _ghosted(grid, np.arange(8.0))
    fill_ghosts(u, grid, Periodic(), Periodic())
    assert u[2] == u[2 + 8]  # ghost[-1] equals the last interior value
    np.testing.assert_array_equal(u[:3], u[8:11])
    np.testing.assert_array_equal(u[11:], u[3:6])


def test_outflow_copies_edge_value():
    grid = make_uniform_grid(0.0, 1.0, 6, 3, "cells")
    u = _ghosted(grid, np.array([5.0, 1, 2, 3, 4, 9.0]))
    fill_ghosts(u, grid, Outflow(), Outflow())
    assert np.all(u[:3] == 5.0)
    assert np.all(u[-3:] == 9.0)


def test_reflective_mirror_negates_momentum():
    grid = make_uniform_grid(0.0, 1.0, 6, 3, "cells")
    U = np.zeros((grid.total, 3))
    grid.interior(U)[:] = np.column_stack(
        [np.arange(1.0, 7.0), np.arange(1.0, 7.0), np.ones(6)]
    )
    fill_ghosts(U, grid, Reflective(), Reflective(), momentum_component=1)
    # ghost[-1] mirrors the first interior cell
    assert U[2, 0] == U[3, 0]
    assert U[2, 1] == -U[3, 1]
    assert U[0, 0] == U[5, 0]
    assert U[9, 1] == -U[8, 1]  # first right ghost mirrors the last interior cell
    assert U[11, 1] == -U[6, 1]


def test_fixed_state_and_custom_fill():
    grid = make_uniform_grid(0.0, 1.0, 6, 3, "cells")
    U = np.ones((grid.total, 2))
    fill_ghosts(U, grid, FixedState([3.0, 4.0]), Custom(lambda x, t: np.column_stack([x, np.full_like(x, t)])), t=2.5)
    assert np.all(U[:3] == [3.0, 4.0])
    np.testing.assert_allclose(U[-3:, 0], grid.x_with_ghosts[-3:])
    assert np.all(U[-3:, 1] == 2.5)


def test_fill_is_idempotent():
    grid = make_uniform_grid(0.0, 1.0, 8, 3, "cells")
    u = _ghosted(grid, np.sin(np.arange(8.0)))
    fill_ghosts(u, grid, Outflow(), Reflective())
    snapshot = u.copy()
    fill_ghosts(u, grid, Outflow(), Reflective())
    np.testing.assert_array_equal(u, snapshot)


def test_reflective_preserves_even_symmetry():
    # an even-symmetric interior about the left wall face stays symmetric
    grid = make_uniform_grid(0.0, 1.0, 6, 3, "cells")
    interior = np.array([1.0, 2.0, 3.0, 3.0, 2.0, 1.0])
    u = _ghosted(grid, interior)
    fill_ghosts(u, grid, Reflective(), Reflective())
    ext = u[:6]  # ghosts + first three interior cells
    np.testing.assert_array_equal(ext, ext[::-1])


def test_size_mismatch_rejected():
    grid = make_uniform_grid(0.0, 1.0, 8, 3, "cells")
    with pytest.raises(ConfigError):
        fill_ghosts(np.zeros(7), grid, Outflow(), Outflow())
