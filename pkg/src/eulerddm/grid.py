"""Uniform grid, per-cell background states, and cell-averaged fields.

The grid is vertex centered: cell (i, j) is the square of size dx*dy whose
center sits at (origin_x + (i + 1/2)*dx, origin_y + (j + 1/2)*dy).

Discrete operators use the scheme's zeroth-order coefficient
1/(c*dt) per cell (the nondimensional form of the implicit step), so the
effective inverse time scale of the discretized problem is 1/(c*dt), not
the physical 1/dt carried by analysis states.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .states import LinearizationState

__all__ = ["Grid", "CellStates", "PrimitiveField", "time_step_from_cfl"]


@dataclass(frozen=True)
class Grid:
    """Uniform rectangular grid with an implicit time step."""

    nx: int
    ny: int
    dx: float
    dy: float
    dt: float
    origin: tuple = (0.0, 0.0)
    y_periodic: bool = False

    def __post_init__(self):
        if self.nx < 2 or self.ny < 1:
            raise ValueError(f"grid needs nx >= 2 and ny >= 1, got {self.nx}x{self.ny}")
        if self.dx <= 0 or self.dy <= 0 or self.dt <= 0:
            raise ValueError("dx, dy and dt must be positive")

    @classmethod
    def for_domain(cls, x_extent, y_extent, nx, ny, dt, y_periodic=False):
        """Grid covering [x0, x1] x [y0, y1] with nx-by-ny cells."""
        (x0, x1), (y0, y1) = x_extent, y_extent
        return cls(
            nx=nx,
            ny=ny,
            dx=(x1 - x0) / nx,
            dy=(y1 - y0) / ny,
            dt=dt,
            origin=(x0, y0),
            y_periodic=y_periodic,
        )

    def x_centers(self) -> np.ndarray:
        return self.origin[0] + (np.arange(self.nx) + 0.5) * self.dx

    def y_centers(self) -> np.ndarray:
        return self.origin[1] + (np.arange(self.ny) + 0.5) * self.dy

    def dbar_x(self, c: float) -> float:
        """Nondimensional mesh size dx/(c*dt)."""
        return self.dx / (c * self.dt)

    def dbar_y(self, c: float) -> float:
        return self.dy / (c * self.dt)


@dataclass
class CellStates:
    """Frozen background state per cell, arrays of shape (nx, ny)."""

    rho: np.ndarray
    u: np.ndarray
    v: np.ndarray
    c: np.ndarray

    @classmethod
    def uniform(cls, state: LinearizationState, nx: int, ny: int) -> "CellStates":
        return cls(
            rho=np.full((nx, ny), state.rho),
            u=np.full((nx, ny), state.u),
            v=np.full((nx, ny), state.v),
            c=np.full((nx, ny), state.c),
        )

    @classmethod
    def from_rows(cls, rho, u, v, c, nx: int) -> "CellStates":
        """Tile per-row (y-dependent) values across all columns."""
        tile = lambda a: np.tile(np.asarray(a, dtype=float), (nx, 1))
        return cls(rho=tile(rho), u=tile(u), v=tile(v), c=tile(c))

    @property
    def shape(self):
        return self.rho.shape

    def state_at(self, i: int, j: int, beta: float = 1.0) -> LinearizationState:
        return LinearizationState(
            rho=float(self.rho[i, j]),
            u=float(self.u[i, j]),
            v=float(self.v[i, j]),
            c=float(self.c[i, j]),
            beta=beta,
        )

    def check_subsonic(self) -> None:
        """Raise naming the first offending cell if any state is not subsonic."""
        bad = self.u**2 + self.v**2 >= self.c**2
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise ValueError(
                f"cell ({i}, {j}) is not subsonic: |V| >= c "
                f"({math.hypot(self.u[i, j], self.v[i, j]):.6g} >= {self.c[i, j]:.6g})"
            )
        if (self.rho <= 0).any() or (self.c <= 0).any():
            raise ValueError("cell states need rho > 0 and c > 0")


@dataclass
class PrimitiveField:
    """Cell-averaged unknown triple (P, U, V) on a grid."""

    grid: Grid
    data: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.data is None:
            self.data = np.zeros((self.grid.nx, self.grid.ny, 3))
        expected = (self.grid.nx, self.grid.ny, 3)
        if self.data.shape != expected:
            raise ValueError(f"field shape {self.data.shape} != {expected}")

    def max_norm(self) -> float:
        return float(np.max(np.abs(self.data)))

    def to_csv_rows(self):
        """Rows (i, j, P, U, V) in row-major cell order."""
        for i in range(self.grid.nx):
            for j in range(self.grid.ny):
                p, u, v = self.data[i, j]
                yield i, j, p, u, v


def time_step_from_cfl(cells: CellStates, dx: float, dy: float, cfl: float) -> float:
    """dt = cfl * min(dx, dy) / max over cells of (|V| + c)."""
    speed = np.sqrt(cells.u**2 + cells.v**2) + cells.c
    return cfl * min(dx, dy) / float(speed.max())
