"""Recursive minimum-norm least squares over a maintained rank factorization."""

from ._core import (
    ConfigError,
    ConvergenceError,
    DimensionError,
    ParseError,
    RationalSolver,
    ScalarError,
    Solver,
    cond2,
    fit_power_law,
    ill_conditioned_power,
    kahan,
    oracle_min_norm_lstsq,
    pascal,
    pascal_inverse,
    penrose_residuals,
    pinv,
    pinv_exact,
    random_standardized,
    random_usv,
    residual_error,
    solve_batch,
    solve_batch_exact,
    stability_factor,
)

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DimensionError",
    "ParseError",
    "RationalSolver",
    "ScalarError",
    "Solver",
    "cond2",
    "fit_power_law",
    "ill_conditioned_power",
    "kahan",
    "oracle_min_norm_lstsq",
    "pascal",
    "pascal_inverse",
    "penrose_residuals",
    "pinv",
    "pinv_exact",
    "random_standardized",
    "random_usv",
    "residual_error",
    "solve_batch",
    "solve_batch_exact",
    "stability_factor",
]
