"""Stabilizer cohomology tables, the equivariant spectral sequence and the Mayer-Vietoris solve."""

from .mayer_vietoris import (
    PERIOD,
    FreeModuleVerdict,
    LESRow,
    NamedClass,
    PoincareSeries,
    degreewise_kernel_cokernel,
    free_module_check,
    name_classes,
    poincare_series,
    solve_les,
)
from .restrictions import (
    Correspondence,
    NamedMap,
    RestrictionConfig,
    audit_degree_one,
    check_kinds,
    load_restrictions,
    parse_restriction_config,
)
from .spectral import (
    MAX_P,
    ChainMapError,
    Comparison,
    ComparisonEntry,
    E1Page,
    E2Entry,
    E2Page,
    RangeError,
    assemble_e1,
    comparison,
    compute_e2,
    total_dims,
)
from .tables import (
    GradedF2Map,
    GradedF2Space,
    degree_one_classes,
    identity_map,
    multiplication_matrix,
    parse_expression,
    restriction_map,
    table_for,
)

__all__ = [
    "MAX_P",
    "PERIOD",
    "ChainMapError",
    "Comparison",
    "ComparisonEntry",
    "Correspondence",
    "E1Page",
    "E2Entry",
    "E2Page",
    "FreeModuleVerdict",
    "GradedF2Map",
    "GradedF2Space",
    "LESRow",
    "NamedClass",
    "NamedMap",
    "PoincareSeries",
    "RangeError",
    "RestrictionConfig",
    "assemble_e1",
    "audit_degree_one",
    "check_kinds",
    "comparison",
    "compute_e2",
    "degree_one_classes",
    "degreewise_kernel_cokernel",
    "free_module_check",
    "identity_map",
    "load_restrictions",
    "multiplication_matrix",
    "name_classes",
    "parse_expression",
    "parse_restriction_config",
    "poincare_series",
    "restriction_map",
    "solve_les",
    "table_for",
    "total_dims",
]
