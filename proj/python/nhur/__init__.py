"""Sum uncertainty relations for non-Hermitian operators."""

from ._core import (
    NhurError,
    evaluate,
    example1,
    example2,
    g_covariance,
    g_expectation,
    g_variance,
    is_good_observable,
    pt_hamiltonian,
    pt_metric,
    sigma_x,
    sigma_y,
    sigma_z,
    sweep_example1,
    sweep_example2,
    validate_metric,
)

__all__ = [
    "NhurError",
    "evaluate",
    "example1",
    "example2",
    "g_covariance",
    "g_expectation",
    "g_variance",
    "is_good_observable",
    "pt_hamiltonian",
    "pt_metric",
    "sigma_x",
    "sigma_y",
    "sigma_z",
    "sweep_example1",
    "sweep_example2",
    "validate_metric",
]
