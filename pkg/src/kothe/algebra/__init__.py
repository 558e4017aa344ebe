"""Structure-constant algebras, their radicals, idempotents and modules."""
from .core import (
    AlgebraError,
    FDAlgebra,
    SizeCapError,
    corner_algebra,
    direct_product,
    field_algebra,
    full_matrix_algebra,
    matrix_ring,
    path_algebra,
    radical_square_zero_local,
    truncated_polynomial,
)
from .idempotents import IdempotentSystem, UncertifiedError, is_local, primitive_idempotents
from .radical import jacobson_radical, quotient_algebra

__all__ = [
    "AlgebraError",
    "FDAlgebra",
    "IdempotentSystem",
    "SizeCapError",
    "UncertifiedError",
    "corner_algebra",
    "direct_product",
    "field_algebra",
    "full_matrix_algebra",
    "is_local",
    "jacobson_radical",
    "matrix_ring",
    "path_algebra",
    "primitive_idempotents",
    "quotient_algebra",
    "radical_square_zero_local",
    "truncated_polynomial",
]
