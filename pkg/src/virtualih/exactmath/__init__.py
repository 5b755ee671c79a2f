"""Exact scalars, linear algebra and graded polynomial spaces."""
from .field import (
    QuadraticField,
    QuadraticNumber,
    RationalField,
    field_from_spec,
    format_scalar,
    parse_scalar,
    sign,
)
from .linalg import (
    ExactMatrix,
    InconsistentRow,
    RowReducer,
    annihilator,
    bareiss_rank,
    determinant,
    inverse,
    rank_and_kernel,
    solve_linear,
    solve_many,
    sparse_rank,
)
from .poly import (
    GradedPolySpace,
    Substitution,
    dim_sym,
    monomial_basis,
    poly_mul,
    restrict_polynomial,
)

__all__ = [
    "QuadraticField", "QuadraticNumber", "RationalField", "field_from_spec",
    "format_scalar", "parse_scalar", "sign",
    "ExactMatrix", "InconsistentRow", "RowReducer", "annihilator", "bareiss_rank",
    "determinant", "inverse", "rank_and_kernel", "solve_linear", "solve_many",
    "sparse_rank",
    "GradedPolySpace", "Substitution", "dim_sym", "monomial_basis", "poly_mul",
    "restrict_polynomial",
]
