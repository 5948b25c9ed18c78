"""Exact arithmetic in Q(sqrt(-2)) and its dyadic subrings."""

from .audit import audit_fixed_values, audit_valuation_axioms, random_element
from .quadratic import (
    INFINITY,
    OMEGA,
    ONE,
    ZERO,
    ArithmeticDomainError,
    InfiniteValuation,
    QuadElement,
    SubringTag,
    dyadic_valuation,
    format_quad,
    in_subring,
    is_uniformizer,
    min_valuation,
    norm,
    parse_quad,
    two_adic_valuation,
    valuation,
)

__all__ = [
    "audit_fixed_values",
    "audit_valuation_axioms",
    "random_element",
    "INFINITY",
    "OMEGA",
    "ONE",
    "ZERO",
    "ArithmeticDomainError",
    "InfiniteValuation",
    "QuadElement",
    "SubringTag",
    "dyadic_valuation",
    "format_quad",
    "in_subring",
    "is_uniformizer",
    "min_valuation",
    "norm",
    "parse_quad",
    "two_adic_valuation",
    "valuation",
]
