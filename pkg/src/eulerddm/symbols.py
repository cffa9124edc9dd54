"""Fourier symbols of the linearized operator and their factorization.

Fourier transform in y (dual variable xi), with d/dx replaced by a complex
number lam, turns beta + A d/dx + B d/dy into the 3x3 symbol matrix
``symbol_p_hat``.  Its determinant factors exactly as

    det P_hat = G_hat * L_hat

where G_hat is a first order transport symbol and L_hat the convected
wave symbol.  The factorization is the basis of the whole interface
construction, so it is checked as a hard identity in the test suite.
"""

import numpy as np

from .states import LinearizationState

__all__ = ["symbol_p_hat", "det_p_hat", "g_hat", "l_hat"]


def symbol_p_hat(state: LinearizationState, xi: float, lam: complex) -> np.ndarray:
    """Symbol matrix of beta + A d/dx + B d/dy with d/dx -> lam, d/dy -> i*xi."""
    rho, u, v, c, beta = state.rho, state.u, state.v, state.c, state.beta
    g = beta + u * lam + 1j * xi * v
    rc2 = rho * c * c
    return np.array(
        [
            [g, rc2 * lam, 1j * rc2 * xi],
            [lam / rho, g, 0.0],
            [1j * xi / rho, 0.0, g],
        ],
        dtype=complex,
    )


def det_p_hat(state: LinearizationState, xi: float, lam: complex) -> complex:
    """Determinant of the symbol matrix by direct cofactor expansion."""
    m = symbol_p_hat(state, xi, lam)
    return (
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )


def g_hat(state: LinearizationState, xi: float, lam: complex) -> complex:
    """Transport symbol beta + u*lam + i*xi*v."""
    return state.beta + state.u * lam + 1j * xi * state.v


def l_hat(state: LinearizationState, xi: float, lam: complex) -> complex:
    """Convected wave symbol.

    beta^2 + 2i*xi*u*v*lam + 2*beta*(u*lam + i*xi*v)
    + (c^2 - v^2)*xi^2 - (c^2 - u^2)*lam^2
    """
    u, v, c, beta = state.u, state.v, state.c, state.beta
    return (
        beta * beta
        + 2j * xi * u * v * lam
        + 2.0 * beta * (u * lam + 1j * xi * v)
        + (c * c - v * v) * xi * xi
        - (c * c - u * u) * lam * lam
    )
