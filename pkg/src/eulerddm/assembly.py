"""Sparse assembly of the upwind finite-volume operator on strips.

Interior rows discretize the balance

    W_ij/(c dt) + (|A1| W_ij + A1m W_i+1,j - A1p W_i-1,j)/dx
                + (|A2| W_ij + A2m W_i,j+1 - A2p W_i,j-1)/dy = f_ij

with the split matrices evaluated at the arithmetic-mean state of the two
cells sharing each edge.  Physical boundaries use the characteristic ghost
closure W_ext = 0, which simply drops the neighbor term.  At an interface
side the incoming part of the exterior state is kept as extra unknowns
(one per row on an outflow side, two on an inflow side); the matching
interface-condition rows are appended by the caller, which keeps the
system square.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from .fluxes import flux_split
from .grid import CellStates, Grid
from .states import LinearizationState, mean_state

__all__ = ["StripIndexMap", "SubdomainOperator", "assemble_operator", "apply_operator"]

PHYSICAL = "physical"
INTERFACE = "interface"


@dataclass(frozen=True)
class StripIndexMap:
    """Unknown numbering for a strip: cells first, then ghost coefficients."""

    i0: int
    i1: int
    ny: int
    has_left_ghost: bool
    has_right_ghost: bool

    @property
    def n_cells(self) -> int:
        return (self.i1 - self.i0) * self.ny

    @property
    def n_cell_unknowns(self) -> int:
        return 3 * self.n_cells

    @property
    def n_ghost(self) -> int:
        return (2 * self.ny if self.has_left_ghost else 0) + (
            self.ny if self.has_right_ghost else 0
        )

    @property
    def n_unknowns(self) -> int:
        return self.n_cell_unknowns + self.n_ghost

    def cell(self, i: int, j: int, comp: int) -> int:
        """Global unknown index of component comp of cell (i, j); i is the
        grid-wide column index."""
        return ((i - self.i0) * self.ny + j) * 3 + comp

    def ghost_left(self, j: int, k: int) -> int:
        """Ghost coefficient k in {0: fast incoming, 1: shear} at row j."""
        return self.n_cell_unknowns + 2 * j + k

    def ghost_right(self, j: int) -> int:
        return (
            self.n_cell_unknowns
            + (2 * self.ny if self.has_left_ghost else 0)
            + j
        )


class SubdomainOperator:
    """Assembled strip system with a cached sparse LU factorization."""

    def __init__(self, matrix: sp.csc_matrix, index_map: StripIndexMap):
        if matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"operator must be square, got {matrix.shape}")
        self.matrix = matrix
        self.index_map = index_map
        self._lu = None

    @property
    def lu(self):
        if self._lu is None:
            self._lu = splu(self.matrix)
        return self._lu

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Direct solve; complex right-hand sides are split into parts."""
        if np.iscomplexobj(rhs) and not np.iscomplexobj(self.matrix.data):
            return self.lu.solve(rhs.real) + 1j * self.lu.solve(rhs.imag)
        return self.lu.solve(rhs)

    def residual_norm(self, x: np.ndarray, rhs: np.ndarray) -> float:
        return float(np.max(np.abs(self.matrix @ x - rhs)))


def _edge_split_cache():
    cache = {}

    def split(state: LinearizationState, normal):
        key = (state.rho, state.u, state.v, state.c, normal)
        if key not in cache:
            cache[key] = flux_split(state, normal)
        return cache[key]

    return split


def assemble_operator(
    grid: Grid,
    cells: CellStates,
    i0: int,
    i1: int,
    left: str = PHYSICAL,
    right: str = PHYSICAL,
    left_ghost_flux=None,
    right_ghost_flux=None,
    extra_rows=None,
) -> SubdomainOperator:
    """Assemble the strip operator for grid columns i0 <= i < i1.

    Parameters
    ----------
    left, right : {"physical", "interface"}
        Closure of the two x-boundaries.  Interface sides need the
        corresponding ghost flux arrays: ``left_ghost_flux`` of shape
        (ny, 3, 2) holding A1p applied to the two incoming basis vectors,
        ``right_ghost_flux`` of shape (ny, 3) holding A1m applied to the
        single incoming basis vector.
    extra_rows : list of (cols, vals)
        Interface-condition rows appended below the balance rows, one per
        ghost unknown.
    """
    cells.check_subsonic()
    ny, dx, dy, dt = grid.ny, grid.dx, grid.dy, grid.dt
    periodic = grid.y_periodic
    idx = StripIndexMap(
        i0=i0,
        i1=i1,
        ny=ny,
        has_left_ghost=(left == INTERFACE),
        has_right_ghost=(right == INTERFACE),
    )
    if left == INTERFACE and left_ghost_flux is None:
        raise ValueError("left interface closure needs left_ghost_flux")
    if right == INTERFACE and right_ghost_flux is None:
        raise ValueError("right interface closure needs right_ghost_flux")

    split = _edge_split_cache()
    state_of = lambda i, j: cells.state_at(i, j)

    rows, cols, vals = [], [], []

    def add_block(r0: int, c0: int, block: np.ndarray):
        for a in range(3):
            for b in range(3):
                w = block[a, b]
                if w != 0.0:
                    rows.append(r0 + a)
                    cols.append(c0 + b)
                    vals.append(w)

    def add_col(r0: int, c: int, column: np.ndarray):
        for a in range(3):
            if column[a] != 0.0:
                rows.append(r0 + a)
                cols.append(c)
                vals.append(column[a])

    eye = np.eye(3)
    for i in range(i0, i1):
        for j in range(ny):
            r0 = idx.cell(i, j, 0)
            s_own = state_of(i, j)
            add_block(r0, r0, eye / (s_own.c * dt))

            # east edge
            if i + 1 < i1:
                fs = split(mean_state(s_own, state_of(i + 1, j)), (1.0, 0.0))
                add_block(r0, r0, fs.a_plus / dx)
                add_block(r0, idx.cell(i + 1, j, 0), fs.a_minus / dx)
            else:
                fs = split(s_own, (1.0, 0.0))
                add_block(r0, r0, fs.a_plus / dx)
                if right == INTERFACE:
                    add_col(r0, idx.ghost_right(j), right_ghost_flux[j] / dx)

            # west edge
            if i - 1 >= i0:
                fs = split(mean_state(s_own, state_of(i - 1, j)), (1.0, 0.0))
                add_block(r0, r0, -fs.a_minus / dx)
                add_block(r0, idx.cell(i - 1, j, 0), -fs.a_plus / dx)
            else:
                fs = split(s_own, (1.0, 0.0))
                add_block(r0, r0, -fs.a_minus / dx)
                if left == INTERFACE:
                    add_col(r0, idx.ghost_left(j, 0), -left_ghost_flux[j, :, 0] / dx)
                    add_col(r0, idx.ghost_left(j, 1), -left_ghost_flux[j, :, 1] / dx)

            # north edge
            jn = j + 1
            if jn < ny or periodic:
                jn = jn % ny
                fs = split(mean_state(s_own, state_of(i, jn)), (0.0, 1.0))
                add_block(r0, r0, fs.a_plus / dy)
                add_block(r0, idx.cell(i, jn, 0), fs.a_minus / dy)
            else:
                fs = split(s_own, (0.0, 1.0))
                add_block(r0, r0, fs.a_plus / dy)

            # south edge
            js = j - 1
            if js >= 0 or periodic:
                js = js % ny
                fs = split(mean_state(s_own, state_of(i, js)), (0.0, 1.0))
                add_block(r0, r0, -fs.a_minus / dy)
                add_block(r0, idx.cell(i, js, 0), -fs.a_plus / dy)
            else:
                fs = split(s_own, (0.0, 1.0))
                add_block(r0, r0, -fs.a_minus / dy)

    n_extra = 0 if extra_rows is None else len(extra_rows)
    if n_extra != idx.n_ghost:
        raise ValueError(
            f"need exactly one extra row per ghost unknown: "
            f"{n_extra} rows for {idx.n_ghost} ghosts"
        )
    for k, (rcols, rvals) in enumerate(extra_rows or []):
        r = idx.n_cell_unknowns + k
        for c, w in zip(rcols, rvals):
            if w != 0.0:
                rows.append(r)
                cols.append(int(c))
                vals.append(float(w))

    n = idx.n_unknowns
    matrix = sp.csc_matrix(
        (np.asarray(vals), (np.asarray(rows), np.asarray(cols))), shape=(n, n)
    )
    return SubdomainOperator(matrix=matrix, index_map=idx)


def apply_operator(op: SubdomainOperator, x: np.ndarray) -> np.ndarray:
    return op.matrix @ x
