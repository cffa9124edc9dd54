"""Interface frames, characteristic traces, and transmission conditions.

An interface is a vertical cell-edge line with the flow crossing it from
left to right (u_n > 0).  Per interface row j the frame holds the local
eigensystem of A_n and the tangential difference operators entering the
correction-step condition.

Traces.  The value "at" the interface seen by one side combines its own
boundary cell with its own ghost unknowns through the characteristic
projectors:

    left side:   tr_j = P_plus W(last column, j) + zeta_m r_m
    right side:  tr_j = P_minus W(first column, j) + zeta_p r_p + zeta_0 r_0

Both sides therefore reconstruct the same upwind interface state once the
ghosts agree with the neighbor, which makes the monolithic solution an
exact fixed point of the iteration for any right-hand side.

Correction flux functional.  Eliminating the normal derivative of the
pressure with the semi-discrete equations turns the conormal flux of the
scalar formulation into

    T[W] = (beta + u_tau D_minus) U_n - u_n (D_py/c) U_tau
           - sigma * (u_n dy/(rho c)) D_plus D_minus P

where the last term is the high-wavenumber pressure stabilization
(sigma = 1) or absent (sigma = 0).
"""

from dataclasses import dataclass

import numpy as np

from .fluxes import normal_eigensystem
from .grid import CellStates, Grid
from .states import LinearizationState
from .tangential import diff_minus, diff_plus

__all__ = ["InterfaceFrame", "build_frame", "STAB_NONE", "STAB_LAPLACIAN"]

STAB_NONE = "none"
STAB_LAPLACIAN = "laplacian"


@dataclass
class InterfaceFrame:
    """Per-row geometry and operators of one vertical interface."""

    i_edge: int  # interface sits between columns i_edge-1 and i_edge
    ny: int
    dy: float
    rho: np.ndarray
    u_n: np.ndarray
    u_tau: np.ndarray
    c: np.ndarray
    beta: np.ndarray  # 1/(c dt) per row
    lam_p: np.ndarray
    lam_m: np.ndarray
    lam_0: np.ndarray
    r_p: np.ndarray  # (ny, 3)
    r_m: np.ndarray
    r_0: np.ndarray
    l_p: np.ndarray
    l_m: np.ndarray
    l_0: np.ndarray
    p_plus: np.ndarray  # (ny, 3, 3)
    p_minus: np.ndarray
    t_u: np.ndarray  # (ny, ny): diag(beta) + diag(u_tau) @ D_minus
    t_v: np.ndarray  # (ny, ny): diag(u_n) @ D_py / c
    t_p: np.ndarray  # (ny, ny): diag(u_n dy/(rho c)) @ D_plus @ D_minus

    def flux_jump_data(self, tr, sigma: float):
        """Apply the correction flux functional T to a trace array (ny, 3)."""
        return self.t_u @ tr[:, 1] - self.t_v @ tr[:, 2] - sigma * (self.t_p @ tr[:, 0])

    def p_of(self, tr):
        return tr[:, 0]

    def puun_of(self, tr):
        """P + rho u_n U_n of a trace array."""
        return tr[:, 0] + self.rho * self.u_n * tr[:, 1]

    def left_trace(self, w_strip, zeta_m):
        """Trace seen from the left strip: own last column plus ghost."""
        cell = w_strip[-1]  # (ny, 3)
        tr = np.einsum("jab,jb->ja", self.p_plus, cell)
        return tr + zeta_m[:, None] * self.r_m

    def right_trace(self, w_strip, zeta):
        """Trace seen from the right strip; zeta has shape (ny, 2)."""
        cell = w_strip[0]
        tr = np.einsum("jab,jb->ja", self.p_minus, cell)
        return tr + zeta[:, 0:1] * self.r_p + zeta[:, 1:2] * self.r_0

    def left_ghost_flux(self):
        """A1m applied to the left side's ghost basis vector, (ny, 3)."""
        return self.lam_m[:, None] * self.r_m

    def right_ghost_flux(self):
        """A1p applied to the right side's ghost basis, (ny, 3, 2)."""
        out = np.empty((self.ny, 3, 2))
        out[:, :, 0] = self.lam_p[:, None] * self.r_p
        out[:, :, 1] = self.lam_0[:, None] * self.r_0
        return out

    def exchange_left_ghost(self, w_right_strip):
        """Incoming coefficients for the left strip from the right cells."""
        cell = w_right_strip[0]
        return np.einsum("ja,ja->j", self.l_m, cell)

    def exchange_right_ghost(self, w_left_strip):
        """Incoming coefficients for the right strip from the left cells."""
        cell = w_left_strip[-1]
        zp = np.einsum("ja,ja->j", self.l_p, cell)
        z0 = np.einsum("ja,ja->j", self.l_0, cell)
        return np.stack([zp, z0], axis=1)

    # --- interface-condition rows over a strip's augmented unknowns ---

    def _trace_rows(self, idx, side: str, coef_p, coef_u, coef_v):
        """Rows of a functional sum_j' coef[comp][j, j'] * tr_j'[comp].

        Returns one (cols, vals) pair per row j.  ``side`` is "left" for
        the strip left of the interface (trace through P_plus and the
        single ghost) and "right" for the strip to its right.
        """
        ny = self.ny
        coef = np.stack([coef_p, coef_u, coef_v], axis=2)  # (ny, ny, 3)
        if side == "left":
            cell_w = np.einsum("ijb,jba->ija", coef, self.p_plus)
            ghost_w = np.einsum("ijb,jb->ij", coef, self.r_m)
            i_bnd = idx.i1 - 1
            ghost_cols = [[idx.ghost_right(j)] for j in range(ny)]
            ghost_vals = lambda i, j: [ghost_w[i, j]]
        else:
            cell_w = np.einsum("ijb,jba->ija", coef, self.p_minus)
            gp = np.einsum("ijb,jb->ij", coef, self.r_p)
            g0 = np.einsum("ijb,jb->ij", coef, self.r_0)
            i_bnd = idx.i0
            ghost_cols = [[idx.ghost_left(j, 0), idx.ghost_left(j, 1)] for j in range(ny)]
            ghost_vals = lambda i, j: [gp[i, j], g0[i, j]]
        rows = []
        for i in range(ny):
            cols, vals = [], []
            for j in range(ny):
                for comp in range(3):
                    w = cell_w[i, j, comp]
                    if w != 0.0:
                        cols.append(idx.cell(i_bnd, j, comp))
                        vals.append(w)
                for c, v in zip(ghost_cols[j], ghost_vals(i, j)):
                    if v != 0.0:
                        cols.append(c)
                        vals.append(v)
            rows.append((np.asarray(cols, dtype=int), np.asarray(vals)))
        return rows

    def flux_condition_rows(self, idx, side: str, sigma: float):
        """Rows imposing T[trace] = data on one side of the interface."""
        return self._trace_rows(idx, side, -sigma * self.t_p, self.t_u, -self.t_v)

    def pressure_rows(self, idx, side: str):
        """Rows imposing P(trace) = data."""
        eye = np.eye(self.ny)
        zero = np.zeros((self.ny, self.ny))
        return self._trace_rows(idx, side, eye, zero, zero)

    def puun_rows(self, idx, side: str):
        """Rows imposing (P + rho u_n U_n)(trace) = data."""
        eye = np.eye(self.ny)
        zero = np.zeros((self.ny, self.ny))
        return self._trace_rows(idx, side, eye, np.diag(self.rho * self.u_n), zero)


def build_frame(grid: Grid, cells: CellStates, i_edge: int) -> InterfaceFrame:
    """Frame of the interface between grid columns i_edge-1 and i_edge."""
    if not (0 < i_edge < grid.nx):
        raise ValueError(f"interface column {i_edge} outside grid interior")
    ny, dy = grid.ny, grid.dy
    rho = 0.5 * (cells.rho[i_edge - 1] + cells.rho[i_edge])
    u_n = 0.5 * (cells.u[i_edge - 1] + cells.u[i_edge])
    u_tau = 0.5 * (cells.v[i_edge - 1] + cells.v[i_edge])
    c = 0.5 * (cells.c[i_edge - 1] + cells.c[i_edge])
    if np.any(u_n <= 0.0):
        raise ValueError(
            f"interface at column {i_edge} needs u_n > 0 on every row"
        )
    beta = 1.0 / (c * grid.dt)

    lam_p = u_n + c
    lam_m = u_n - c
    lam_0 = u_n.copy()
    r_p = np.empty((ny, 3))
    r_m = np.empty((ny, 3))
    r_0 = np.empty((ny, 3))
    l_p = np.empty((ny, 3))
    l_m = np.empty((ny, 3))
    l_0 = np.empty((ny, 3))
    p_plus = np.empty((ny, 3, 3))
    p_minus = np.empty((ny, 3, 3))
    for j in range(ny):
        state = LinearizationState(
            rho=float(rho[j]), u=float(u_n[j]), v=float(u_tau[j]),
            c=float(c[j]), beta=float(beta[j]),
        )
        lams, rvec, lvec = normal_eigensystem(state, (1.0, 0.0))
        r_p[j], r_m[j], r_0[j] = rvec[:, 0], rvec[:, 1], rvec[:, 2]
        l_p[j], l_m[j], l_0[j] = lvec[0], lvec[1], lvec[2]
        p_minus[j] = np.outer(r_m[j], l_m[j])
        p_plus[j] = np.eye(3) - p_minus[j]

    dm = diff_minus(ny, dy, grid.y_periodic)
    dp = diff_plus(ny, dy, grid.y_periodic)
    dpy_over_c = ((0.5 * (c + u_tau) / c)[:, None] * dm
                  + (0.5 * (c - u_tau) / c)[:, None] * dp)
    t_u = np.diag(beta) + u_tau[:, None] * dm
    t_v = u_n[:, None] * dpy_over_c
    t_p = (u_n * dy / (rho * c))[:, None] * (dp @ dm)

    return InterfaceFrame(
        i_edge=i_edge, ny=ny, dy=dy,
        rho=rho, u_n=u_n, u_tau=u_tau, c=c, beta=beta,
        lam_p=lam_p, lam_m=lam_m, lam_0=lam_0,
        r_p=r_p, r_m=r_m, r_0=r_0, l_p=l_p, l_m=l_m, l_0=l_0,
        p_plus=p_plus, p_minus=p_minus,
        t_u=t_u, t_v=t_v, t_p=t_p,
    )
