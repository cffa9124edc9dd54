"""Discrete exponential modes of the interior scheme at one wavenumber.

Inserting W_ij = t^i exp(I j xi dy) V into the homogeneous balance gives a
singular 3x3 pencil in t.  Multiplying by t makes every entry a quadratic
polynomial; the determinant (expanded exactly, degree <= 6) is rooted via
the companion matrix, and a null vector is recovered per root by SVD.

Rank structure of the split matrices caps the true degree at 4 with one
root pinned at t = 0, so a subsonic state with u > 0 generically yields
three usable roots mirroring the three continuous exponents: one with
|t| > 1 (bounded on the left half plane) and two with |t| < 1.
"""

from dataclasses import dataclass, field

import numpy as np

from .fluxes import flux_split
from .grid import Grid
from .states import LinearizationState

__all__ = ["DiscreteMode", "DiscreteModeSet", "discrete_modes", "pencil_matrix"]

RESIDUAL_TOL = 1e-10
MARGINAL_BAND = 1e-8


@dataclass(frozen=True)
class DiscreteMode:
    """One root of the dispersion pencil with its null vector."""

    t: complex
    lam: complex
    v: np.ndarray
    residual: float

    @property
    def is_outside(self) -> bool:
        return abs(self.t) > 1.0


@dataclass
class DiscreteModeSet:
    """All usable roots at one wavenumber, split by the unit circle."""

    xi: float
    modes: list
    flags: list = field(default_factory=list)

    @property
    def outside(self):
        return [m for m in self.modes if m.is_outside]

    @property
    def inside(self):
        return [m for m in self.modes if not m.is_outside]


def _pencil_coefficients(state: LinearizationState, grid: Grid, xi: float):
    """Matrix coefficients (C_minus, C_zero, C_plus) of t*M(t)."""
    dx, dy, dt = grid.dx, grid.dy, grid.dt
    fx = flux_split(state, (1.0, 0.0))
    fy = flux_split(state, (0.0, 1.0))
    theta = xi * dy
    y_factor = (
        fy.a_abs
        + fy.a_minus * np.exp(1j * theta)
        - fy.a_plus * np.exp(-1j * theta)
    ) / dy
    c_zero = np.eye(3) / (state.c * dt) + fx.a_abs / dx + y_factor
    c_plus = fx.a_minus / dx
    c_minus = -fx.a_plus / dx
    return c_minus, c_zero.astype(complex), c_plus


def pencil_matrix(state: LinearizationState, grid: Grid, xi: float, t: complex):
    """t * M(t) evaluated at one t (avoids dividing by t)."""
    c_minus, c_zero, c_plus = _pencil_coefficients(state, grid, xi)
    return c_minus + t * c_zero + t * t * c_plus


def _det_polynomial(c_minus, c_zero, c_plus):
    """Exact coefficients (ascending) of det(C_minus + t C_zero + t^2 C_plus)."""
    entry = lambda a, b: np.array(
        [c_minus[a, b], c_zero[a, b], c_plus[a, b]], dtype=complex
    )
    det = np.zeros(7, dtype=complex)
    for perm, sign in (
        ((0, 1, 2), 1.0),
        ((1, 2, 0), 1.0),
        ((2, 0, 1), 1.0),
        ((2, 1, 0), -1.0),
        ((0, 2, 1), -1.0),
        ((1, 0, 2), -1.0),
    ):
        term = np.convolve(
            np.convolve(entry(0, perm[0]), entry(1, perm[1])), entry(2, perm[2])
        )
        det += sign * term
    return det


def discrete_modes(state: LinearizationState, grid: Grid, xi: float) -> DiscreteModeSet:
    """Solve the dispersion pencil at wavenumber xi.

    Roots whose pencil residual exceeds 1e-10 (relative to the largest
    singular value) are dropped as spurious; roots within 1e-8 of the unit
    circle raise a marginal-mode flag since the rate analysis becomes
    near-resonant there.
    """
    state.require_analysis_mode()
    c_minus, c_zero, c_plus = _pencil_coefficients(state, grid, xi)
    coeffs = _det_polynomial(c_minus, c_zero, c_plus)
    scale = np.max(np.abs(coeffs))
    if scale == 0.0:
        raise ValueError("dispersion polynomial vanished identically")
    coeffs = coeffs / scale

    # descending order for np.roots, with negligible leading terms removed
    desc = coeffs[::-1]
    keep = np.abs(desc) > 1e-13
    first = int(np.argmax(keep))
    roots = np.roots(desc[first:])

    # polish with Newton steps: companion eigenvalues lose accuracy when
    # roots cluster near t = 1 on fine meshes
    dcoeffs = coeffs[1:] * np.arange(1, len(coeffs))
    for _ in range(3):
        p = np.polyval(coeffs[::-1], roots)
        dp = np.polyval(dcoeffs[::-1], roots)
        step = np.where(np.abs(dp) > 0, p / np.where(dp == 0, 1.0, dp), 0.0)
        roots = roots - step

    flags = []
    modes = []
    for t in sorted(roots, key=lambda z: (abs(z), z.real, z.imag)):
        if abs(t) < 1e-10:
            continue  # structural root at the origin
        q = c_minus + t * c_zero + t * t * c_plus
        _, svals, vh = np.linalg.svd(q)
        residual = float(svals[-1] / svals[0])
        if residual > RESIDUAL_TOL:
            flags.append(f"spurious root {t:.3g} dropped (residual {residual:.2e})")
            continue
        if abs(abs(t) - 1.0) < MARGINAL_BAND:
            flags.append(f"marginal mode |t| = {abs(t):.12f}")
        modes.append(
            DiscreteMode(
                t=complex(t),
                lam=complex(np.log(t) / grid.dx),
                v=vh[-1].conj(),
                residual=residual,
            )
        )
    return DiscreteModeSet(xi=xi, modes=modes, flags=flags)
