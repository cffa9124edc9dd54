"""Per-wavenumber convergence rates of the interface iterations.

The two half planes keep one bounded discrete mode on the left and two on
the right, so the per-wavenumber error state is the coefficient vector
(alpha_1 | alpha_2, alpha_3).  One iteration of either method is a linear
map on it, assembled numerically from mode data; the convergence rate is
its spectral radius.

The two-step method preserves the pressure-trace jump across the
interface exactly (both sides shift by the same averaged increment), so
its meaningful rate is the spectral radius restricted to the
jump-free subspace the iteration actually lives on; the quotient
direction carries a neutral eigenvalue 1 by construction.
"""

from dataclasses import dataclass, field

import numpy as np

from .fluxes import normal_eigensystem
from .grid import Grid
from .modes import discrete_modes
from .states import LinearizationState
from .tangential import symbol_d_minus, symbol_d_plus

__all__ = [
    "RatePoint",
    "RateCurve",
    "discrete_convergence_rate",
    "rate_curve",
    "VARIANTS",
]

VARIANTS = ("stabilized", "unstabilized", "classical")


@dataclass(frozen=True)
class RatePoint:
    xi: float
    rho: float
    variant: str
    flags: tuple = ()


@dataclass
class RateCurve:
    variant: str
    points: list = field(default_factory=list)

    @property
    def max_rho(self) -> float:
        return max(p.rho for p in self.points)

    def rows(self):
        for p in self.points:
            yield p.xi, p.rho, p.variant, ";".join(p.flags)


@dataclass
class _ModeData:
    t1: complex
    tau1: np.ndarray  # interface trace of the left bounded mode
    t23: tuple
    tau23: np.ndarray  # (3, 2): traces of the two right bounded modes
    v1: np.ndarray
    v23: np.ndarray  # (3, 2)
    lvec: np.ndarray
    flags: tuple


def _mode_data(state: LinearizationState, grid: Grid, xi: float) -> _ModeData:
    ms = discrete_modes(state, grid, xi)
    outside, inside = ms.outside, ms.inside
    if len(outside) != 1 or len(inside) != 2:
        raise ValueError(
            f"expected a 1/2 mode split at xi = {xi}, "
            f"got {len(outside)} outside and {len(inside)} inside"
        )
    lams, rvec, lvec = normal_eigensystem(state, (1.0, 0.0))
    l_m = lvec[1]
    p_minus = np.outer(rvec[:, 1], l_m)
    p_plus = np.eye(3) - p_minus

    m1 = outside[0]
    tau1 = (p_plus + m1.t * p_minus) @ m1.v
    tau23 = np.empty((3, 2), dtype=complex)
    v23 = np.empty((3, 2), dtype=complex)
    for k, m in enumerate(inside):
        tau23[:, k] = (p_minus + p_plus / m.t) @ m.v
        v23[:, k] = m.v
    flags = tuple(f for f in ms.flags if f.startswith("marginal"))
    return _ModeData(
        t1=m1.t,
        tau1=tau1,
        t23=(inside[0].t, inside[1].t),
        tau23=tau23,
        v1=m1.v,
        v23=v23,
        lvec=lvec,
        flags=flags,
    )


def _interface_symbols(state: LinearizationState, grid: Grid, xi: float, sigma: float):
    """Scalars applying the interface functionals to a trace 3-vector."""
    rho, u, v, c = state.rho, state.u, state.v, state.c
    beta = 1.0 / (c * grid.dt)
    dm = symbol_d_minus(xi, grid.dy)
    dp = symbol_d_plus(xi, grid.dy)
    dpy_c = 0.5 * (c + v) / c * dm + 0.5 * (c - v) / c * dp

    def t_hat(tr):
        return (
            (beta + v * dm) * tr[1]
            - u * dpy_c * tr[2]
            - sigma * (u * grid.dy / (rho * c)) * (dp * dm) * tr[0]
        )

    def p_hat(tr):
        return tr[0]

    def puun_hat(tr):
        return tr[0] + rho * u * tr[1]

    return t_hat, p_hat, puun_hat


def _new_method_map(state, grid, xi, sigma):
    md = _mode_data(state, grid, xi)
    t_hat, p_hat, puun_hat = _interface_symbols(state, grid, xi, sigma)
    flags = list(md.flags)

    t_tau1 = t_hat(md.tau1)
    m_cor = np.array(
        [
            [t_hat(md.tau23[:, 0]), t_hat(md.tau23[:, 1])],
            [puun_hat(md.tau23[:, 0]), puun_hat(md.tau23[:, 1])],
        ],
        dtype=complex,
    )
    m_upd = np.array(
        [
            [p_hat(md.tau23[:, 0]), p_hat(md.tau23[:, 1])],
            [puun_hat(md.tau23[:, 0]), puun_hat(md.tau23[:, 1])],
        ],
        dtype=complex,
    )

    def one_step(alpha):
        tr1 = alpha[0] * md.tau1
        tr2 = md.tau23 @ alpha[1:]
        gamma = -0.5 * (t_hat(tr2) - t_hat(tr1))
        # correction step
        at1 = -gamma / t_tau1
        at23 = np.linalg.solve(m_cor, np.array([gamma, 0.0], dtype=complex))
        ctr1 = at1 * md.tau1
        ctr2 = md.tau23 @ at23
        delta = 0.5 * (p_hat(ctr1) + p_hat(ctr2))
        jval = puun_hat(tr1) + puun_hat(ctr1)
        # update step
        a1 = (p_hat(tr1) + delta) / p_hat(md.tau1)
        a23 = np.linalg.solve(
            m_upd, np.array([p_hat(tr2) + delta, jval], dtype=complex)
        )
        return np.array([a1, a23[0], a23[1]], dtype=complex)

    m = np.empty((3, 3), dtype=complex)
    for k in range(3):
        e = np.zeros(3, dtype=complex)
        e[k] = 1.0
        m[:, k] = one_step(e)

    # pressure-jump functional; the map must leave it invariant
    c_row = np.array(
        [-p_hat(md.tau1), p_hat(md.tau23[:, 0]), p_hat(md.tau23[:, 1])],
        dtype=complex,
    )
    drift = np.linalg.norm(c_row @ m - c_row) / np.linalg.norm(c_row)
    if drift > 1e-8:
        flags.append(f"jump functional drifts by {drift:.2e}")

    # restrict to the jump-free subspace
    _, _, vh = np.linalg.svd(c_row[None, :])
    basis = vh[1:].conj().T  # (3, 2) orthonormal basis of the null space
    m_r = basis.conj().T @ (m @ basis)
    rho = float(np.max(np.abs(np.linalg.eigvals(m_r))))
    return rho, tuple(flags)


def _classical_map(state, grid, xi):
    md = _mode_data(state, grid, xi)
    lvec = md.lvec
    l_p, l_m, l_0 = lvec[0], lvec[1], lvec[2]
    t2, t3 = md.t23

    m = np.zeros((3, 3), dtype=complex)
    # left strip: incoming coefficient from the right boundary cell
    denom1 = md.t1 * (l_m @ md.v1)
    m[0, 1] = (l_m @ md.v23[:, 0]) / denom1
    m[0, 2] = (l_m @ md.v23[:, 1]) / denom1
    # right strip: two incoming conditions from the left boundary cell
    a = np.array(
        [
            [l_p @ md.v23[:, 0] / t2, l_p @ md.v23[:, 1] / t3],
            [l_0 @ md.v23[:, 0] / t2, l_0 @ md.v23[:, 1] / t3],
        ],
        dtype=complex,
    )
    b = np.array([l_p @ md.v1, l_0 @ md.v1], dtype=complex)
    sol = np.linalg.solve(a, b)
    m[1, 0], m[2, 0] = sol[0], sol[1]
    rho = float(np.max(np.abs(np.linalg.eigvals(m))))
    return rho, md.flags


def discrete_convergence_rate(
    state: LinearizationState, grid: Grid, xi: float, variant: str
) -> RatePoint:
    """Spectral radius of the per-wavenumber iteration map."""
    if variant == "stabilized":
        rho, flags = _new_method_map(state, grid, xi, sigma=1.0)
    elif variant == "unstabilized":
        rho, flags = _new_method_map(state, grid, xi, sigma=0.0)
    elif variant == "classical":
        rho, flags = _classical_map(state, grid, xi)
    else:
        raise ValueError(f"unknown variant {variant!r}, expected one of {VARIANTS}")
    return RatePoint(xi=xi, rho=rho, variant=variant, flags=flags)


def rate_curve(
    state: LinearizationState,
    grid: Grid,
    variant: str,
    n_samples: int = 200,
    spacing: str = "log",
) -> RateCurve:
    """Sample the rate over (0, pi/dy], always including the Nyquist point."""
    if n_samples < 2:
        raise ValueError("need at least two samples")
    xi_max = np.pi / grid.dy
    if spacing == "log":
        xis = np.geomspace(xi_max * 1e-3, xi_max, n_samples)
    elif spacing == "uniform":
        xis = np.linspace(xi_max / n_samples, xi_max, n_samples)
    else:
        raise ValueError(f"unknown spacing {spacing!r}")
    xis = np.unique(np.append(xis, xi_max))
    curve = RateCurve(variant=variant)
    for xi in xis:
        curve.points.append(discrete_convergence_rate(state, grid, float(xi), variant))
    return curve
