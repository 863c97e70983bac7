"""Exact and sampled mean partition functions on Galton-Watson trees."""

from ._core import (
    GwplasmaError,
    Law,
    RationalFunction,
    beta_infinity,
    fixed_point,
    glued_occupation,
    mc_mean_z,
    mean_gcpf,
    mean_z,
    mean_z_numeric,
    verify_functional_equation,
    verify_q_power_identity,
    verify_regular_quadratic,
)

__all__ = [
    "GwplasmaError",
    "Law",
    "RationalFunction",
    "beta_infinity",
    "fixed_point",
    "glued_occupation",
    "mc_mean_z",
    "mean_gcpf",
    "mean_z",
    "mean_z_numeric",
    "verify_functional_equation",
    "verify_q_power_identity",
    "verify_regular_quadratic",
]
