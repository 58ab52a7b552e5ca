"""Exact and numerical engine for the parafermion planar para algebra."""

from .scalars import (
    APPROX,
    EXACT,
    CycloScalar,
    ParameterError,
    ScalarContext,
    Unrepresentable,
    gauss_omega,
    make_context,
    omega_sqrt,
    sqrt_n,
)

__all__ = [
    "APPROX",
    "EXACT",
    "CycloScalar",
    "ParameterError",
    "ScalarContext",
    "Unrepresentable",
    "gauss_omega",
    "make_context",
    "omega_sqrt",
    "sqrt_n",
]
