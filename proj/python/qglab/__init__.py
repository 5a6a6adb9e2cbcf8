"""Pseudo-spectral laboratory for inviscid, dissipative and regularized QG models.

Fields are square numpy arrays sampled on the uniform grid of [0, 2pi)^2 with
``theta[j, i]`` the value at ``(x1_i, x2_j)``.
"""

from ._qglab import (
    Error,
    ValidationError,
    apply_lambda,
    besov_norm,
    cmt_datum,
    compare_mu,
    dr_flux,
    gn_sweep,
    load_snapshot,
    log_bound_check,
    log_bound_ratio,
    lp_norm,
    mollify,
    picard,
    random_shell_field,
    rhs,
    riesz_velocity,
    save_snapshot,
    simulate,
    single_mode,
    sobolev_norm,
)

__all__ = [
    "Error",
    "ValidationError",
    "apply_lambda",
    "besov_norm",
    "cmt_datum",
    "compare_mu",
    "dr_flux",
    "gn_sweep",
    "load_snapshot",
    "log_bound_check",
    "log_bound_ratio",
    "lp_norm",
    "mollify",
    "picard",
    "random_shell_field",
    "rhs",
    "riesz_velocity",
    "save_snapshot",
    "simulate",
    "single_mode",
    "sobolev_norm",
]
