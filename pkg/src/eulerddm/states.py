"""Background flow states and rotation into an interface frame.

Every operator in the package is built from a frozen constant (or per-cell
frozen) background state.  Velocities are stored either in the fixed x-y
frame (:class:`LinearizationState`) or decomposed into normal/tangential
components at an interface (:class:`NormalFrameState`).
"""

import math
from dataclasses import dataclass

__all__ = [
    "LinearizationState",
    "NormalFrameState",
    "rotate_to_normal",
    "mean_state",
]

_UNIT_TOL = 1e-12


@dataclass(frozen=True)
class LinearizationState:
    """Constant background state around which the equations are linearized.

    Parameters
    ----------
    rho : float
        Background density, > 0.
    u, v : float
        Background velocity components in the x and y directions.
    c : float
        Background sound speed, > 0.
    beta : float
        Inverse time step 1/dt of the implicit solve, > 0.
    """

    rho: float
    u: float
    v: float
    c: float
    beta: float

    def __post_init__(self):
        if self.rho <= 0.0:
            raise ValueError(f"density must be positive, got {self.rho}")
        if self.c <= 0.0:
            raise ValueError(f"sound speed must be positive, got {self.c}")
        if self.beta <= 0.0:
            raise ValueError(f"inverse time step must be positive, got {self.beta}")
        if self.u**2 + self.v**2 >= self.c**2:
            raise ValueError(
                f"state must be subsonic: |({self.u}, {self.v})| >= c = {self.c}"
            )

    @property
    def mach_n(self) -> float:
        """Normal Mach number u/c (normal = x direction)."""
        return self.u / self.c

    @property
    def mach_t(self) -> float:
        """Tangential Mach number v/c."""
        return self.v / self.c

    def require_analysis_mode(self) -> None:
        """Check 0 < u < c, required by the half-plane mode analysis."""
        if not (0.0 < self.u < self.c):
            raise ValueError(
                f"analysis requires 0 < u < c, got u = {self.u}, c = {self.c}"
            )


@dataclass(frozen=True)
class NormalFrameState:
    """Background state with velocity split along an interface normal.

    ``u_n`` is the velocity component along the unit normal, ``u_tau`` the
    component along the tangent obtained by rotating the normal by +90
    degrees.  The rotation is an isometry, so ``u_n**2 + u_tau**2`` equals
    the squared speed of the originating state.
    """

    rho: float
    u_n: float
    u_tau: float
    c: float
    beta: float

    @property
    def mach_n(self) -> float:
        return self.u_n / self.c

    @property
    def mach_t(self) -> float:
        return self.u_tau / self.c


def rotate_to_normal(state: LinearizationState, normal) -> NormalFrameState:
    """Express the background velocity in the frame of a unit normal.

    u_n = u*nx + v*ny,  u_tau = -u*ny + v*nx.

    Raises
    ------
    ValueError
        If ``normal`` is not a unit vector to within 1e-12.
    """
    nx, ny = float(normal[0]), float(normal[1])
    if abs(math.hypot(nx, ny) - 1.0) > _UNIT_TOL:
        raise ValueError(f"normal must be a unit vector, got ({nx}, {ny})")
    return NormalFrameState(
        rho=state.rho,
        u_n=state.u * nx + state.v * ny,
        u_tau=-state.u * ny + state.v * nx,
        c=state.c,
        beta=state.beta,
    )


def mean_state(a: LinearizationState, b: LinearizationState) -> LinearizationState:
    """Arithmetic-mean state used for flux splitting at a cell edge."""
    return LinearizationState(
        rho=0.5 * (a.rho + b.rho),
        u=0.5 * (a.u + b.u),
        v=0.5 * (a.v + b.v),
        c=0.5 * (a.c + b.c),
        beta=0.5 * (a.beta + b.beta),
    )
