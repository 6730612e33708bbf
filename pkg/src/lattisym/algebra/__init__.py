"""Exact arithmetic over Q(sqrt2, sqrt3) and small dense linear algebra."""

from .field import ONE, SQRT2, SQRT3, SQRT6, ZERO, FieldElement, field_inv, field_mul
from .matrix import (
    EXACT,
    MODES,
    NUMERIC,
    NUMERIC_EPS,
    Matrix,
    det,
    inverse,
    leading_minors,
    nullspace,
    nullspace_of_rref,
    rank,
    rref,
    same_row_space,
    vstack,
)

__all__ = [
    "EXACT",
    "MODES",
    "NUMERIC",
    "NUMERIC_EPS",
    "ONE",
    "SQRT2",
    "SQRT3",
    "SQRT6",
    "ZERO",
    "FieldElement",
    "Matrix",
    "det",
    "field_inv",
    "field_mul",
    "inverse",
    "leading_minors",
    "nullspace",
    "nullspace_of_rref",
    "rank",
    "rref",
    "same_row_space",
    "vstack",
]
