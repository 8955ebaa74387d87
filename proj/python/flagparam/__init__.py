"""Grassmann-chart parametrization of unitary and density matrices."""

from ._core import (
    FlagparamError,
    ball_to_jarlskog,
    ball_to_log,
    chart_select,
    decompose,
    deparametrize,
    exp_k,
    expm_reference,
    haar_unitary,
    jarlskog_matrix,
    kappa_sigma,
    log_to_ball,
    parameter_count,
    parametrize,
    psi_sigma,
    reconstruct,
    run_verification,
    sqrt_i_minus_xxstar,
    w_of_x,
)

__all__ = [
    "FlagparamError",
    "ball_to_jarlskog",
    "ball_to_log",
    "chart_select",
    "decompose",
    "deparametrize",
    "exp_k",
    "expm_reference",
    "haar_unitary",
    "jarlskog_matrix",
    "kappa_sigma",
    "log_to_ball",
    "parameter_count",
    "parametrize",
    "psi_sigma",
    "reconstruct",
    "run_verification",
    "sqrt_i_minus_xxstar",
    "w_of_x",
]
