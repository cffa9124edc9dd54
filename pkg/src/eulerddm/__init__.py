"""Domain decomposition solvers and Fourier convergence analysis for the
linearized subsonic Euler equations."""

from .states import LinearizationState, NormalFrameState, rotate_to_normal, mean_state
from .fluxes import JacobianPair, FluxSplit, jacobians, flux_split
from .symbols import symbol_p_hat, det_p_hat, g_hat, l_hat
from .continuous import ContinuousModes, lambda_roots, continuous_two_step_check

__all__ = [
    "LinearizationState",
    "NormalFrameState",
    "rotate_to_normal",
    "mean_state",
    "JacobianPair",
    "FluxSplit",
    "jacobians",
    "flux_split",
    "symbol_p_hat",
    "det_p_hat",
    "g_hat",
    "l_hat",
    "ContinuousModes",
    "lambda_roots",
    "continuous_two_step_check",
]
