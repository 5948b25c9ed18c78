"""The two fundamental domains and the audits run against them.

The Gamma_0(w) domain is three quadrangles Q1, Q2, Q3 glued along the
vertices v1..v2''' of the vertex table. The SL_2(Z[w]) domain is Q3 on its
own, folded to a cylinder by U.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Any

from ..geometry import VERTICES, EdgeAction, act, edge_action, fixes_point, maps_point_set, vertex_name
from ..groups import (
    GEN_A,
    GEN_B,
    GEN_C,
    GEN_H,
    GEN_SMALL_C,
    GEN_T,
    GEN_U,
    IDENTITY,
    NAMED_GENERATORS,
    Mat2,
    MatrixPreconditionError,
    format_mat,
    in_gamma0,
    inject_second_factor,
    inverse,
    is_binary_tetrahedral,
    is_quaternion_pair,
    multiply,
    p_normalizes_gamma0,
    serre_injection,
)
from ..utils.checks import Check
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
from .homology import Translate, quotient
from .presentation import Presentation, check_relators

logger = logging.getLogger(__name__)

# Stabilizer relations, then the edge pairings, then the face relation.
GAMMA0_PRESENTATION = Presentation.parse(
    ("T", "U", "A", "B", "C"),
    (
        "C^4",
        "C^2 B^-2",
        "B C B^-1 C",
        "A^4",
        "B^2 A^-2",
        "A B A^-1 B",
        "U^-1 C U B^-1 C^-1",
        "T^-1 A T A^-1 B^-1",
        "T^-1 U^-1 T U B^-1",
    ),
)

# Element of SL_2(Z[w]) carrying each Gamma_0 quadrangle onto Q3.
TILING: dict[str, tuple[str, Mat2]] = {
    "Q1": ("h", GEN_H),
    "Q2": ("c", GEN_SMALL_C),
    "Q3": ("1", IDENTITY),
}


def _label(kind: StabilizerKind, *names: str, inferred: bool = False) -> StabilizerLabel:
    return StabilizerLabel(kind, names, tuple(NAMED_GENERATORS[n] for n in names), inferred)


def _translated(label: StabilizerLabel, word: str, g: Mat2) -> StabilizerLabel:
    """Label of g * cell: the stabilizer conjugated by g."""
    if label.kind is StabilizerKind.CENTER_ONLY:
        return label
    g_inv = inverse(g)
    return StabilizerLabel(
        label.kind,
        tuple(f"{word}*{n}*{word}^-1" for n in label.generator_names),
        tuple(g @ x @ g_inv for x in label.generators),
        label.inferred,
    )


def build_gamma0_complex() -> EquivariantComplex:
    """The three-quadrangle domain of Gamma_0(w) with its U- and T-pairings."""
    q8_cb = _label(StabilizerKind.Q8, "C", "B")
    q8_ba = _label(StabilizerKind.Q8, "B", "A")
    z4_a = _label(StabilizerKind.Z4, "A", inferred=True)
    tu = GEN_T @ GEN_U

    vertices = [
        ("v2", q8_cb),
        ("v1", q8_ba),
        ("v2'", z4_a),
        ("v2'''", _translated(q8_cb, "U", GEN_U)),
        ("v1'''", _translated(q8_ba, "U", GEN_U)),
        ("v1'", _translated(q8_ba, "T", GEN_T)),
        ("v1''", _translated(q8_ba, "TU", tu)),
        ("v2''", _translated(z4_a, "U", GEN_U)),
    ]
    z4_b = _label(StabilizerKind.Z4, "B")
    z4_c = _label(StabilizerKind.Z4, "C")
    z4_a_edge = _label(StabilizerKind.Z4, "A")
    edges = [
        ("e_B", "v2", "v1", z4_b),
        ("e_T", "v1", "v1'''", StabilizerLabel.center(inferred=True)),
        ("U.e_B", "v2'''", "v1'''", _translated(z4_b, "U", GEN_U)),
        ("e_C", "v2", "v2'''", z4_c),
        ("e_A", "v1", "v2'", z4_a_edge),
        ("e_c", "v2'", "v2''", StabilizerLabel.center()),
        ("U.e_A", "v1'''", "v2''", _translated(z4_a_edge, "U", GEN_U)),
        ("e_A'", "v2'", "v1'", z4_a_edge),
        ("T.e_T", "v1'", "v1''", StabilizerLabel.center(inferred=True)),
        ("U.e_A'", "v2''", "v1''", _translated(z4_a_edge, "U", GEN_U)),
    ]
    faces = [
        ("Q1", ("v2", "v1", "v1'''", "v2'''"), StabilizerLabel.center()),
        ("Q2", ("v1", "v2'", "v2''", "v1'''"), StabilizerLabel.center()),
        ("Q3", ("v2'", "v1'", "v1''", "v2''"), StabilizerLabel.center()),
    ]
    pairings = [
        Identification("v2", "v2'''", "U", GEN_U),
        Identification("v1", "v1'''", "U", GEN_U),
        Identification("v1", "v1'", "T", GEN_T),
        Identification("v2'", "v2''", "U", GEN_U),
        Identification("v1'''", "v1''", "T", GEN_T),
        Identification("e_B", "U.e_B", "U", GEN_U),
        Identification("e_A", "U.e_A", "U", GEN_U),
        Identification("e_T", "T.e_T", "T", GEN_T),
        Identification("e_A'", "U.e_A'", "U", GEN_U),
    ]
    return build_complex(GroupTag.GAMMA0, VERTICES, vertices, edges, faces, pairings)


def build_sl2_complex() -> EquivariantComplex:
    """Q3 alone, with U gluing (v2', v1') to (v2'', v1'')."""
    q8_ac = _label(StabilizerKind.Q8, "A", "c")
    te24 = _label(StabilizerKind.TE24, "A", "b")
    z4_a = _label(StabilizerKind.Z4, "A")
    vertices = [
        ("v2'", q8_ac),
        ("v1'", te24),
        ("v1''", _translated(te24, "U", GEN_U)),
        ("v2''", _translated(q8_ac, "U", GEN_U)),
    ]
    points = {name: VERTICES[name] for name, _ in vertices}
    edges = [
        ("e_a", "v2'", "v1'", z4_a),
        ("e_b", "v1'", "v1''", _label(StabilizerKind.Z6, "b")),
        ("e_c", "v2'", "v2''", _label(StabilizerKind.Z4, "c")),
        ("U.e_a", "v2''", "v1''", _translated(z4_a, "U", GEN_U)),
    ]
    faces = [("Q3", ("v2'", "v1'", "v1''", "v2''"), StabilizerLabel.center())]
    pairings = [
        Identification("v2'", "v2''", "U", GEN_U),
        Identification("v1'", "v1''", "U", GEN_U),
        Identification("e_a", "U.e_a", "U", GEN_U),
    ]
    return build_complex(GroupTag.SL2, points, vertices, edges, faces, pairings)


def _acts_on_cell(x: EquivariantComplex, g: Mat2, cell: Cell) -> bool:
    points = [x.points[v] for v in cell.vertices]
    if cell.dimension == 0:
        return fixes_point(g, points[0])
    if cell.dimension == 1:
        return edge_action(g, points[0], points[1]) is not EdgeAction.NONE
    return maps_point_set(g, points, points)


def _kind_holds(label: StabilizerLabel) -> bool:
    kind = label.kind
    if label.subgroup.order != kind.order:
        return False
    if kind is StabilizerKind.Q8:
        return is_quaternion_pair(*label.generators)
    if kind is StabilizerKind.TE24:
        return is_binary_tetrahedral(label.generators)
    return True


def audit_stabilizers(x: EquivariantComplex) -> list[Check]:
    """Every label's generators act on their cell and generate a group of the right type."""
    checks: list[Check] = []
    for cell in x.cells:
        label = cell.stabilizer
        name = f"stabilizer:{x.group.value}:{cell.id}"
        acting = all(_acts_on_cell(x, g, cell) for g in label.generators)
        typed = _kind_holds(label)
        member = True
        if x.group is GroupTag.GAMMA0:
            member = all(in_gamma0(g) for g in label.generators)
        detail = f"{label.display()} ~ {label.kind.value}, order {label.subgroup.order}"
        if label.inferred:
            detail += " (inferred)"
        checks.append(Check(name, acting and typed and member, detail))
    failed = [c.name for c in checks if not c.passed]
    if failed:
        logger.warning(f"Stabilizer audit failed for {', '.join(failed)}")
    return checks


def audit_nesting(gamma0: EquivariantComplex, sl2: EquivariantComplex) -> Check:
    """Every SL_2 cell is a cell of the Gamma_0 domain."""
    missing = [c.id for c in sl2.cells if gamma0.find_cell(c.vertices) is None]
    return Check("nesting:sl2_in_gamma0", not missing, f"missing: {', '.join(missing)}" if missing else "")


def audit_tiling(gamma0: EquivariantComplex) -> list[Check]:
    """Each Gamma_0 quadrangle is an SL_2 translate of Q3; index N(w) + 1 = 3."""
    target = [gamma0.points[v] for v in gamma0.cell("Q3").vertices]
    checks = []
    for face in gamma0.cells_of_dim(2):
        word, g = TILING[face.id]
        source = [gamma0.points[v] for v in face.vertices]
        checks.append(Check(f"tiling:{face.id}", maps_point_set(g, source, target), f"{word} * {face.id} = Q3"))
    checks.append(Check("tiling:index", len(gamma0.cells_of_dim(2)) == 3, "[SL_2 : Gamma_0] = 3"))
    return checks


def audit_presentation(presentation: Presentation = GAMMA0_PRESENTATION) -> list[Check]:
    return [
        Check(f"relator:{r.relator}", r.holds)
        for r in check_relators(presentation, NAMED_GENERATORS)
    ]


def audit_normalizer() -> Check:
    """Conjugation by P keeps T, U, A, B, C inside Gamma_0(w)."""
    gens = [GEN_T, GEN_U, GEN_A, GEN_B, GEN_C]
    return Check("normalizer:P", p_normalizes_gamma0(gens), "P = [[0,1],[w,0]]")


@dataclass(frozen=True)
class CellCorrespondence:
    """A Gamma_0 cell matched to an SL_2 orbit representative.

    ``gamma0_cell = translate * sl2_cell`` as cells of the upper half-space.
    """

    gamma0_cell: str
    sl2_cell: str
    translate: Translate


def sl2_counterpart(
    gamma0: EquivariantComplex,
    sl2: EquivariantComplex,
    cell_id: str,
    sl2_translates: dict[str, tuple[str, Translate]] | None = None,
) -> CellCorrespondence:
    """The SL_2 orbit containing a Gamma_0 cell, via the tiling of the domain.

    Raises:
        StructuralError: If the tiled image is not a cell of the SL_2 domain.
    """
    cell = gamma0.cell(cell_id)
    face = next(f for f in gamma0.cells_of_dim(2) if set(cell.vertices) <= set(f.vertices))
    word, k = TILING[face.id]
    image_names = [vertex_name(act(k, gamma0.points[v])) for v in cell.vertices]
    if None in image_names:
        raise StructuralError(f"{word} * {cell_id} leaves the vertex table")
    found = sl2.find_cell([n for n in image_names if n is not None])
    if found is None:
        raise StructuralError(f"{word} * {cell_id} is not an SL_2 cell")
    translates = sl2_translates if sl2_translates is not None else quotient(sl2).translates
    rep, t = translates[found[0].id]
    k_word = "" if word == "1" else f"{word}^-1 "
    t_word = "" if t.word == "1" else t.word
    label = f"{k_word}{t_word}".strip() or "1"
    return CellCorrespondence(cell_id, rep, Translate(label, inverse(k) @ t.matrix))


def parity_matrix(source: StabilizerLabel, target: StabilizerLabel, g: Mat2) -> list[list[int]]:
    """Degree-one restriction data from Stab(rep) to Stab(g * rep) subgroups.

    Entry [i][k] is the mod-2 exponent of source generator i in
    g^-1 * (target generator k) * g. Source and target are the larger and
    smaller stabilizer respectively.

    Raises:
        StructuralError: If a conjugated generator misses the source group.
    """
    g_inv = inverse(g)
    columns = []
    for name, x in zip(target.generator_names, target.generators, strict=True):
        y = g_inv @ x @ g
        try:
            columns.append(source.subgroup.parity_coordinates(y))
        except MatrixPreconditionError as e:
            raise StructuralError(f"conjugate of {name} is not in {source.display()}") from e
    return [[col[i] for col in columns] for i in range(len(source.generators))]


class JIdentityStatus(enum.Enum):
    HOLDS = "holds"
    UP_TO_SIGN = "up_to_sign"
    SERRE_ONLY = "serre_only"
    FAILS = "fails"


@dataclass(frozen=True)
class JIdentity:
    name: str
    lhs: str
    rhs: str
    status: JIdentityStatus


def _j_status(m: Mat2, expected: Mat2) -> JIdentityStatus:
    image = inject_second_factor(m)
    if image == expected:
        return JIdentityStatus.HOLDS
    if image == -expected:
        return JIdentityStatus.UP_TO_SIGN
    serre = serre_injection(m)
    if serre in (expected, -expected):
        return JIdentityStatus.SERRE_ONLY
    return JIdentityStatus.FAILS


def audit_j_identities() -> list[JIdentity]:
    """The printed identities j(A) = c^-1 C c and j(B) = -c^-1 B c."""
    c_inv = inverse(GEN_SMALL_C)
    rhs_a = multiply(c_inv, GEN_C, GEN_SMALL_C)
    rhs_b = -multiply(c_inv, GEN_B, GEN_SMALL_C)
    results = [
        JIdentity("j(A) = c^-1 C c", format_mat(inject_second_factor(GEN_A)), format_mat(rhs_a), _j_status(GEN_A, rhs_a)),
        JIdentity("j(B) = -c^-1 B c", format_mat(inject_second_factor(GEN_B)), format_mat(rhs_b), _j_status(GEN_B, rhs_b)),
    ]
    for r in results:
        logger.info(f"{r.name}: {r.status.value}")
    return results


def describe_complex(x: EquivariantComplex) -> dict[str, Any]:
    """Plain-data fixture of the complex for the report bundle."""
    return {
        "group": x.group.value,
        "cells": [
            {
                "id": c.id,
                "dimension": c.dimension,
                "vertices": list(c.vertices),
                "stabilizer": c.stabilizer.display(),
                "kind": c.stabilizer.kind.value,
                "inferred": c.stabilizer.inferred,
                "boundary": [[b, s] for b, s in c.boundary],
            }
            for c in x.cells
        ],
        "identifications": [
            {"source": i.source, "target": i.target, "matrix": i.matrix_name} for i in x.identifications
        ],
    }


def stabilizer_kinds(x: EquivariantComplex, dimension: int) -> set[StabilizerKind]:
    return {c.stabilizer.kind for c in x.cells_of_dim(dimension)}
