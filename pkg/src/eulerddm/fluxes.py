"""Jacobians of the linearized system and characteristic flux splitting.

The unknown vector is W = (P, U, V).  The quasi-linear form is

    beta*W + A dW/dx + B dW/dy = f

with

        / u    rho*c^2   0 \          / v      0    rho*c^2 \
    A = | 1/rho   u      0 |      B = | 0      v      0     |
        \ 0      0       u /          \ 1/rho  0      v     /

For a unit normal n, A_n = nx*A + ny*B has eigenvalues u_n, u_n +- c with
a closed-form eigensystem, which is used instead of a numerical
eigendecomposition so the split matrices are reproducible to rounding.
"""

from dataclasses import dataclass

import numpy as np

from .states import LinearizationState

__all__ = [
    "JacobianPair",
    "FluxSplit",
    "jacobians",
    "normal_jacobian",
    "normal_eigensystem",
    "flux_split",
    "characteristic_projectors",
]


@dataclass(frozen=True)
class JacobianPair:
    """Flux Jacobians in primitive variables."""

    A: np.ndarray
    B: np.ndarray


@dataclass(frozen=True)
class FluxSplit:
    """Characteristic splitting of A_n.

    a_plus + a_minus = A_n and a_plus - a_minus = a_abs; a_plus has
    nonnegative spectrum, a_minus nonpositive.
    """

    a_plus: np.ndarray
    a_minus: np.ndarray
    a_abs: np.ndarray


def jacobians(state: LinearizationState) -> JacobianPair:
    """Jacobian matrices A and B for a background state."""
    rho, u, v, c = state.rho, state.u, state.v, state.c
    rc2 = rho * c * c
    a = np.array([[u, rc2, 0.0], [1.0 / rho, u, 0.0], [0.0, 0.0, u]])
    b = np.array([[v, 0.0, rc2], [0.0, v, 0.0], [1.0 / rho, 0.0, v]])
    return JacobianPair(A=a, B=b)


def normal_jacobian(state: LinearizationState, normal) -> np.ndarray:
    """A_n = nx*A + ny*B."""
    jac = jacobians(state)
    return float(normal[0]) * jac.A + float(normal[1]) * jac.B


def normal_eigensystem(state: LinearizationState, normal):
    """Closed-form eigensystem of A_n.

    Returns
    -------
    lams : ndarray, shape (3,)
        Eigenvalues (u_n + c, u_n - c, u_n).
    rvec : ndarray, shape (3, 3)
        Right eigenvectors as columns, ordered like ``lams``.
    lvec : ndarray, shape (3, 3)
        Left eigenvectors as rows; ``lvec @ rvec = I``.
    """
    nx, ny = float(normal[0]), float(normal[1])
    rho, c = state.rho, state.c
    u_n = state.u * nx + state.v * ny
    rc = rho * c

    lams = np.array([u_n + c, u_n - c, u_n])
    # acoustic pair couples P with the normal velocity; the u_n mode is the
    # tangential velocity
    rvec = np.array(
        [
            [rc, rc, 0.0],
            [nx, -nx, -ny],
            [ny, -ny, nx],
        ]
    )
    lvec = np.array(
        [
            [0.5 / rc, 0.5 * nx, 0.5 * ny],
            [0.5 / rc, -0.5 * nx, -0.5 * ny],
            [0.0, -ny, nx],
        ]
    )
    return lams, rvec, lvec


def flux_split(state: LinearizationState, normal) -> FluxSplit:
    """Split A_n into its nonnegative and nonpositive characteristic parts."""
    lams, rvec, lvec = normal_eigensystem(state, normal)
    lam_plus = np.maximum(lams, 0.0)
    lam_minus = np.minimum(lams, 0.0)
    a_plus = (rvec * lam_plus) @ lvec
    a_minus = (rvec * lam_minus) @ lvec
    a_abs = (rvec * np.abs(lams)) @ lvec
    return FluxSplit(a_plus=a_plus, a_minus=a_minus, a_abs=a_abs)


def characteristic_projectors(state: LinearizationState, normal):
    """Spectral projectors (P_plus, P_minus) of A_n by eigenvalue sign.

    P_plus collects the eigenmodes travelling in the +n direction
    (eigenvalue > 0), P_minus the ones travelling against it.  For a
    subsonic state with 0 < u_n < c, P_plus has rank 2 and P_minus rank 1.
    Zero eigenvalues are assigned to P_plus so the pair always sums to the
    identity.
    """
    lams, rvec, lvec = normal_eigensystem(state, normal)
    mask_minus = lams < 0.0
    p_minus = (rvec * mask_minus.astype(float)) @ lvec
    p_plus = np.eye(3) - p_minus
    return p_plus, p_minus
