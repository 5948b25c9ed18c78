"""Exact linear algebra over F_2 and Z."""

from .f2 import (
    F2Matrix,
    RowReduction,
    Vector,
    block_matrix,
    cokernel_dim,
    extend_basis,
    kernel_basis,
    nullity,
    rank,
    row_reduce,
    span_rank,
)
from .smith import (
    IntMatrix,
    SmithForm,
    elementary_divisors,
    format_abelian_group,
    smith_normal_form,
)

__all__ = [
    "F2Matrix",
    "IntMatrix",
    "RowReduction",
    "SmithForm",
    "Vector",
    "block_matrix",
    "cokernel_dim",
    "elementary_divisors",
    "extend_basis",
    "format_abelian_group",
    "kernel_basis",
    "nullity",
    "rank",
    "row_reduce",
    "smith_normal_form",
    "span_rank",
]
