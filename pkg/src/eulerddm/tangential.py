"""One-dimensional difference operators along an interface.

D_minus and D_plus are the usual backward/forward differences with the
same closure convention as the interior scheme: outside values are zero,
or wrap around when the grid is y-periodic.  The upwind combinations

    D_my = (c+v)/2 * D_minus - (c-v)/2 * D_plus
    D_py = (c+v)/2 * D_minus + (c-v)/2 * D_plus

are the scalar pieces the interior y-operator decomposes into; D_py/c is
the centered-like derivative the interface conditions use for tangential
velocity (it tends to d/dy as dy -> 0, while D_my/.. tends to v*d/dy).

Matrices are small (ny x ny) and dense; determinism matters more than
sparsity at these sizes.
"""

import numpy as np

__all__ = [
    "diff_minus",
    "diff_plus",
    "d_my",
    "d_py",
    "symbol_d_minus",
    "symbol_d_plus",
]


def diff_minus(ny: int, dy: float, periodic: bool = False) -> np.ndarray:
    """Backward difference (w_j - w_{j-1}) / dy with zero or wrapped ghost."""
    m = (np.eye(ny) - np.eye(ny, k=-1)) / dy
    if periodic and ny > 1:
        m[0, ny - 1] = -1.0 / dy
    return m


def diff_plus(ny: int, dy: float, periodic: bool = False) -> np.ndarray:
    """Forward difference (w_{j+1} - w_j) / dy with zero or wrapped ghost."""
    m = (np.eye(ny, k=1) - np.eye(ny)) / dy
    if periodic and ny > 1:
        m[ny - 1, 0] = 1.0 / dy
    return m


def _row_weights(c, v, ny):
    c = np.broadcast_to(np.asarray(c, dtype=float), (ny,))
    v = np.broadcast_to(np.asarray(v, dtype=float), (ny,))
    return c, v


def d_my(c, v, ny: int, dy: float, periodic: bool = False) -> np.ndarray:
    """(c+v)/2 * D_minus - (c-v)/2 * D_plus with per-row coefficients."""
    c, v = _row_weights(c, v, ny)
    dm = diff_minus(ny, dy, periodic)
    dp = diff_plus(ny, dy, periodic)
    return (0.5 * (c + v))[:, None] * dm - (0.5 * (c - v))[:, None] * dp


def d_py(c, v, ny: int, dy: float, periodic: bool = False) -> np.ndarray:
    """(c+v)/2 * D_minus + (c-v)/2 * D_plus with per-row coefficients."""
    c, v = _row_weights(c, v, ny)
    dm = diff_minus(ny, dy, periodic)
    dp = diff_plus(ny, dy, periodic)
    return (0.5 * (c + v))[:, None] * dm + (0.5 * (c - v))[:, None] * dp


def symbol_d_minus(xi: float, dy: float) -> complex:
    """Fourier symbol of D_minus on the mode exp(I*j*xi*dy)."""
    return (1.0 - np.exp(-1j * xi * dy)) / dy


def symbol_d_plus(xi: float, dy: float) -> complex:
    """Fourier symbol of D_plus on the mode exp(I*j*xi*dy)."""
    return (np.exp(1j * xi * dy) - 1.0) / dy
