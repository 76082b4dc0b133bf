"""Exact arithmetic: rationals, sparse polynomials, linear algebra, syzygies."""

from .linalg import Echelon, kernel_basis, matrix_rank, rank_mod_p, rref, sparse_rank
from .points import GenericityError, PointAssignment, generic_point, origin, prime_sequence
from .poly import Monomial, PolyMatrix, Polynomial, monomial_gcd, monomials_of_degree, scalar
from .syzygy import (
    DEFAULT_DEGREE_BOUND,
    FiberDim,
    StabilizationError,
    annihilates,
    fiber_dim_of_submodule,
    monomial_kernel_fiber_dim,
    monomial_syzygies,
    syzygy_span_dims,
    truncated_kernel_dim,
)

__all__ = [
    "DEFAULT_DEGREE_BOUND",
    "Echelon",
    "FiberDim",
    "GenericityError",
    "Monomial",
    "PointAssignment",
    "PolyMatrix",
    "Polynomial",
    "StabilizationError",
    "annihilates",
    "fiber_dim_of_submodule",
    "generic_point",
    "kernel_basis",
    "matrix_rank",
    "monomial_gcd",
    "monomial_kernel_fiber_dim",
    "monomial_syzygies",
    "monomials_of_degree",
    "origin",
    "prime_sequence",
    "rank_mod_p",
    "rref",
    "scalar",
    "sparse_rank",
    "syzygy_span_dims",
    "truncated_kernel_dim",
]
