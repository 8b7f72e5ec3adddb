"""Variational eigenvalues of the discretized fractional g-Laplacian."""

from ._core import (
    Field,
    Grid1D,
    Workspace,
    YoungFunction,
    maximize_i_on_j,
    minimax_k2,
    minimize_j_on_i,
    oracle_p_lower,
    oracle_spectrum,
    run_verify,
    sweep_alpha,
    verify_structure,
    __version__,
)

__all__ = [
    "Field",
    "Grid1D",
    "Workspace",
    "YoungFunction",
    "maximize_i_on_j",
    "minimax_k2",
    "minimize_j_on_i",
    "oracle_p_lower",
    "oracle_spectrum",
    "run_verify",
    "sweep_alpha",
    "verify_structure",
    "__version__",
]
