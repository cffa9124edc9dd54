"""Continuous Fourier analysis of the two-subdomain iteration.

For the error equation on two half planes separated by {x = 0} with flow
from left to right, bounded solutions per wavenumber xi are spanned by
exponential modes exp(lam_l(xi) * x):

* lam_1 (Re > 0) lives in the left domain,
* lam_2, lam_3 (Re < 0) live in the right domain.

``continuous_two_step_check`` replays one correction + update round of the
interface iteration on these modes, assembling each interface system
numerically, and reports the coefficients that survive.  The construction
guarantees they all vanish to rounding, which is what makes the iteration
a direct method at the continuous level.
"""

from dataclasses import dataclass

import numpy as np

from .states import LinearizationState

__all__ = ["ContinuousModes", "TwoStepReport", "lambda_roots", "continuous_two_step_check"]

# relative floor used when checking the denominators a*c +- u*R; they can
# only degenerate on the measure-zero double-root set v = 0, xi = beta/u
_DEGENERATE_RTOL = 1e-10


@dataclass(frozen=True)
class ContinuousModes:
    """Mode exponents lam_1..3 at one wavenumber plus the shorthand values.

    a_xi = beta + i*xi*v and r_xi is the principal square root of
    a_xi^2 + xi^2 (c^2 - u^2), so Re(r_xi) >= 0.
    """

    lambda1: complex
    lambda2: complex
    lambda3: complex
    a_xi: complex
    r_xi: complex


@dataclass(frozen=True)
class TwoStepReport:
    """Outcome of one correction + update round on the error modes."""

    alpha_start: np.ndarray
    alpha_tilde: np.ndarray
    gamma_hat: complex
    delta_hat: complex
    alpha_next: np.ndarray
    residual: float


def lambda_roots(state: LinearizationState, xi: float) -> ContinuousModes:
    """Exponents of the bounded exponential solutions at wavenumber xi.

    lam_1,2 are the roots of the convected wave symbol,
    lam_3 = -(beta + i*xi*v)/u is the root of the transport symbol.
    """
    state.require_analysis_mode()
    u, v, c, beta = state.u, state.v, state.c, state.beta
    c2u2 = c * c - u * u
    a = beta + 1j * xi * v
    r = np.sqrt(a * a + xi * xi * c2u2 + 0j)
    if r.real < 0.0:  # pin the principal branch explicitly
        r = -r
    lam1 = (u * a + c * r) / c2u2
    lam2 = (u * a - c * r) / c2u2
    lam3 = -a / u
    return ContinuousModes(lambda1=lam1, lambda2=lam2, lambda3=lam3, a_xi=a, r_xi=r)


def _g_trace(state: LinearizationState, modes: ContinuousModes) -> np.ndarray:
    """Transport-symbol factor (a + u*lam_l) for each mode, at x = 0."""
    lams = np.array([modes.lambda1, modes.lambda2, modes.lambda3])
    return modes.a_xi + state.u * lams


def _robin_factor(state: LinearizationState, xi: float, lam: complex) -> complex:
    """Conormal-flux symbol (c^2-u^2)*lam - i*xi*u*v applied to one mode."""
    return (state.c**2 - state.u**2) * lam - 1j * xi * state.u * state.v


def continuous_two_step_check(
    state: LinearizationState,
    xi: float,
    alpha_gamma: complex,
    alpha3_start: complex = 0.0,
) -> TwoStepReport:
    """Run one correction + update round and report the remaining modes.

    The starting error is parametrized by alpha_gamma through the
    compatibility constraint on the transport traces,

        alpha_1 * (a*c + u*R) = alpha_2 * (a*c - u*R) = alpha_gamma,

    while alpha3_start (invisible to the constraint) may be anything.  The
    returned ``alpha_next`` solves the assembled update-step interface
    system; ``residual`` is max|alpha_next| / max(|alpha_gamma|, tiny).

    Raises
    ------
    ValueError
        If xi == 0, or on the degenerate double-root set where
        a*c - u*R vanishes.
    """
    if xi == 0.0:
        raise ValueError("xi = 0 is excluded from the two-step analysis")
    state.require_analysis_mode()
    u, c = state.u, state.c
    modes = lambda_roots(state, xi)
    a, r = modes.a_xi, modes.r_xi
    lams = np.array([modes.lambda1, modes.lambda2, modes.lambda3])

    den1 = a * c + u * r
    den2 = a * c - u * r
    scale = abs(a * c) + abs(u * r)
    if min(abs(den1), abs(den2)) <= _DEGENERATE_RTOL * scale:
        raise ValueError(
            "degenerate wavenumber: transport trace annihilates an acoustic mode"
        )

    alpha = np.array(
        [alpha_gamma / den1, alpha_gamma / den2, alpha3_start], dtype=complex
    )

    g_tr = _g_trace(state, modes)  # (a + u*lam_l), zero for mode 3
    robin = np.array([_robin_factor(state, xi, lam) for lam in lams])

    # correction data: minus half the jump of the conormal flux of the
    # transport trace between the two sides (mode 1 on side 1, modes 2-3 on
    # side 2; the outward normals give the side-2 terms a minus sign)
    gamma = -0.5 * (
        robin[0] * g_tr[0] * alpha[0]
        - robin[1] * g_tr[1] * alpha[1]
        - robin[2] * g_tr[2] * alpha[2]
    )

    # Robin operator including the -beta*u advective shift: on a mode it
    # multiplies the transport trace by (c^2-u^2)*lam - u*a
    shift = np.array(
        [(c * c - u * u) * lam - u * a for lam in lams], dtype=complex
    )

    # side-1 correction: single bounded mode, one Robin row
    a_tilde_1 = gamma / (shift[0] * g_tr[0])

    # side-2 correction: Robin row (sign flipped by the outward normal) and
    # homogeneous Dirichlet row
    m2 = np.array(
        [
            [-shift[1] * g_tr[1], -shift[2] * g_tr[2]],
            [1.0, 1.0],
        ],
        dtype=complex,
    )
    rhs2 = np.array([gamma, 0.0], dtype=complex)
    a_tilde_23 = np.linalg.solve(m2, rhs2)
    alpha_tilde = np.array([a_tilde_1, a_tilde_23[0], a_tilde_23[1]])

    delta = 0.5 * (g_tr[0] * alpha_tilde[0] + g_tr[1:] @ alpha_tilde[1:])

    # update-step interface system for the next coefficients:
    #   transport trace of side 1  = old value + delta
    #   transport trace of side 2  = old value + delta
    #   side-2 Dirichlet trace     = side-1 old + side-1 correction traces
    m3 = np.array(
        [
            [g_tr[0], 0.0, 0.0],
            [0.0, g_tr[1], g_tr[2]],
            [0.0, 1.0, 1.0],
        ],
        dtype=complex,
    )
    rhs3 = np.array(
        [
            g_tr[0] * alpha[0] + delta,
            g_tr[1:] @ alpha[1:] + delta,
            alpha[0] + alpha_tilde[0],
        ],
        dtype=complex,
    )
    alpha_next = np.linalg.solve(m3, rhs3)

    denom = max(abs(alpha_gamma), np.finfo(float).tiny)
    residual = float(np.max(np.abs(alpha_next)) / denom)
    return TwoStepReport(
        alpha_start=alpha,
        alpha_tilde=alpha_tilde,
        gamma_hat=gamma,
        delta_hat=delta,
        alpha_next=alpha_next,
        residual=residual,
    )
