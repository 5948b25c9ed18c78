"""Equivariant cell complexes for Gamma_0(w) and SL_2(Z[w])."""

from .cells import (
    Cell,
    EquivariantComplex,
    GroupTag,
    Identification,
    StabilizerKind,
    StabilizerLabel,
    StructuralError,
    build_complex,
)
from .fundamental_domains import (
    GAMMA0_PRESENTATION,
    TILING,
    CellCorrespondence,
    JIdentity,
    JIdentityStatus,
    audit_j_identities,
    audit_nesting,
    audit_normalizer,
    audit_presentation,
    audit_stabilizers,
    audit_tiling,
    build_gamma0_complex,
    build_sl2_complex,
    describe_complex,
    parity_matrix,
    sl2_counterpart,
    stabilizer_kinds,
)
from .homology import (
    HomologyGroup,
    Incidence,
    OrbitCell,
    QuotientComplex,
    Translate,
    abelianization,
    betti_numbers,
    cohomology_dims,
    derive_presentation,
    corank,
    integral_homology,
    orbit_translates,
    quotient,
    torsion_subcomplex,
)
from .presentation import (
    AbelianGroup,
    PreconditionError,
    Presentation,
    RelatorCheck,
    abelianize,
    check_relators,
)

__all__ = [
    "GAMMA0_PRESENTATION",
    "TILING",
    "AbelianGroup",
    "Cell",
    "CellCorrespondence",
    "EquivariantComplex",
    "GroupTag",
    "HomologyGroup",
    "Identification",
    "Incidence",
    "JIdentity",
    "JIdentityStatus",
    "OrbitCell",
    "PreconditionError",
    "Presentation",
    "QuotientComplex",
    "RelatorCheck",
    "StabilizerKind",
    "StabilizerLabel",
    "StructuralError",
    "Translate",
    "abelianization",
    "abelianize",
    "audit_j_identities",
    "audit_nesting",
    "audit_normalizer",
    "audit_presentation",
    "audit_stabilizers",
    "audit_tiling",
    "betti_numbers",
    "build_complex",
    "build_gamma0_complex",
    "build_sl2_complex",
    "check_relators",
    "cohomology_dims",
    "corank",
    "derive_presentation",
    "describe_complex",
    "integral_homology",
    "orbit_translates",
    "parity_matrix",
    "quotient",
    "sl2_counterpart",
    "stabilizer_kinds",
    "torsion_subcomplex",
]
