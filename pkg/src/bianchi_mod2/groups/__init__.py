"""SL_2 matrices over Z[w], named generators and finite subgroup closure."""

from .audit import (
    audit_finite_subgroups,
    audit_generator_orders,
    audit_injection,
    random_gamma0_word,
)
from .closure import (
    ELEMENT_CAP,
    EXCEEDS_CAP,
    ClosureCapError,
    ExceedsCap,
    Subgroup,
    element_order,
    find_binary_tetrahedral_pair,
    generate_subgroup,
    is_binary_tetrahedral,
    is_quaternion_pair,
    p_normalizes_gamma0,
)
from .matrices import (
    CONJUGATOR_P,
    GEN_A,
    GEN_B,
    GEN_C,
    GEN_H,
    GEN_SMALL_B,
    GEN_SMALL_C,
    GEN_T,
    GEN_U,
    IDENTITY,
    NAMED_GENERATORS,
    Mat2,
    MatrixPreconditionError,
    conjugate_by_p,
    format_mat,
    in_gamma0,
    inject_second_factor,
    inverse,
    multiply,
    parse_mat,
    power,
    serre_injection,
    verify_conjugacy,
)
from .words import Word, evaluate_word, format_word, parse_word

__all__ = [
    "audit_finite_subgroups",
    "audit_generator_orders",
    "audit_injection",
    "random_gamma0_word",
    "CONJUGATOR_P",
    "ELEMENT_CAP",
    "EXCEEDS_CAP",
    "GEN_A",
    "GEN_B",
    "GEN_C",
    "GEN_H",
    "GEN_SMALL_B",
    "GEN_SMALL_C",
    "GEN_T",
    "GEN_U",
    "IDENTITY",
    "NAMED_GENERATORS",
    "ClosureCapError",
    "ExceedsCap",
    "Mat2",
    "MatrixPreconditionError",
    "Subgroup",
    "Word",
    "conjugate_by_p",
    "element_order",
    "evaluate_word",
    "find_binary_tetrahedral_pair",
    "format_mat",
    "format_word",
    "generate_subgroup",
    "in_gamma0",
    "inject_second_factor",
    "inverse",
    "is_binary_tetrahedral",
    "is_quaternion_pair",
    "multiply",
    "p_normalizes_gamma0",
    "parse_mat",
    "parse_word",
    "power",
    "serre_injection",
    "verify_conjugacy",
]
