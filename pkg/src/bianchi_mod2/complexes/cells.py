"""Cells, stabilizer labels and the equivariant cell complex."""

from __future__ import annotations

import enum
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from ..geometry import HPoint
from ..groups import IDENTITY, Mat2, Subgroup, generate_subgroup


class StructuralError(Exception):
    """Inconsistent cell structure or identification."""


class GroupTag(enum.Enum):
    GAMMA0 = "gamma0"
    SL2 = "sl2"


class StabilizerKind(enum.Enum):
    """Isomorphism types of cell stabilizers."""

    CENTER_ONLY = "CenterOnly"
    Z4 = "Z4"
    Z6 = "Z6"
    Q8 = "Q8"
    TE24 = "Te24"

    @property
    def order(self) -> int:
        return _KIND_ORDERS[self]

    @property
    def has_noncentral_two_torsion(self) -> bool:
        """True iff the group has a non-central element of 2-power order."""
        return self in (StabilizerKind.Z4, StabilizerKind.Q8, StabilizerKind.TE24)


_KIND_ORDERS = {
    StabilizerKind.CENTER_ONLY: 2,
    StabilizerKind.Z4: 4,
    StabilizerKind.Z6: 6,
    StabilizerKind.Q8: 8,
    StabilizerKind.TE24: 24,
}


@dataclass(frozen=True)
class StabilizerLabel:
    """Stabilizer of a cell, named by its generators.

    Attributes:
        kind: Isomorphism type.
        generator_names: Names in the order the cohomology table uses
            them (first generator <-> x1, second <-> y1).
        generators: Matrices, parallel to ``generator_names``.
        inferred: True when the label is not printed in the source
            diagrams and was derived instead.
    """

    kind: StabilizerKind
    generator_names: tuple[str, ...] = ()
    generators: tuple[Mat2, ...] = ()
    inferred: bool = False

    def __post_init__(self) -> None:
        if len(self.generator_names) != len(self.generators):
            raise StructuralError("stabilizer names and generators differ in length")
        if self.kind is not StabilizerKind.CENTER_ONLY and not self.generators:
            raise StructuralError(f"{self.kind.value} label needs generators")

    @classmethod
    def center(cls, inferred: bool = False) -> StabilizerLabel:
        return cls(StabilizerKind.CENTER_ONLY, ("-I",), (-IDENTITY,), inferred)

    @cached_property
    def subgroup(self) -> Subgroup:
        return generate_subgroup(self.generators, self.generator_names)

    def display(self) -> str:
        if self.kind is StabilizerKind.CENTER_ONLY:
            return "<+-I>"
        return f"<{','.join(self.generator_names)}>"


@dataclass(frozen=True)
class Cell:
    """A cell of the fundamental domain.

    Attributes:
        id: Cell name.
        dimension: 0, 1 or 2.
        vertices: (v,) for a vertex, (tail, head) for an edge, the boundary
            cycle for a face.
        stabilizer: Stabilizer label.
        boundary: (cell id, integer incidence) pairs, filled in by
            build_complex.
    """

    id: str
    dimension: int
    vertices: tuple[str, ...]
    stabilizer: StabilizerLabel
    boundary: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        if self.dimension not in (0, 1, 2):
            raise StructuralError(f"cell {self.id}: dimension {self.dimension} not in 0..2")
        expected = {0: 1, 1: 2}.get(self.dimension)
        if expected is not None and len(self.vertices) != expected:
            raise StructuralError(f"cell {self.id}: {len(self.vertices)} vertices for dim {self.dimension}")
        if self.dimension == 2 and not self.vertices:
            raise StructuralError(f"face {self.id} has no boundary cycle")


@dataclass(frozen=True)
class Identification:
    """``matrix`` carries cell ``source`` onto cell ``target``."""

    source: str
    target: str
    matrix_name: str
    matrix: Mat2


@dataclass(frozen=True)
class EquivariantComplex:
    """Fundamental-domain cells of a group action, with their pairings."""

    group: GroupTag
    cells: tuple[Cell, ...]
    identifications: tuple[Identification, ...]
    points: Mapping[str, HPoint] = field(repr=False)

    @cached_property
    def by_id(self) -> dict[str, Cell]:
        return {c.id: c for c in self.cells}

    def cell(self, cell_id: str) -> Cell:
        try:
            return self.by_id[cell_id]
        except KeyError:
            raise StructuralError(f"no cell named {cell_id!r}") from None

    def cells_of_dim(self, p: int) -> list[Cell]:
        return [c for c in self.cells if c.dimension == p]

    def find_cell(self, vertices: Sequence[str]) -> tuple[Cell, int] | None:
        """Cell with the given vertex tuple, and +1/-1 for its orientation.

        Edges match reversed with sign -1; faces match any rotation or
        reflection of their cycle.
        """
        target = tuple(vertices)
        for c in self.cells:
            if len(c.vertices) != len(target):
                continue
            if c.vertices == target:
                return c, 1
            if c.dimension == 1 and c.vertices[::-1] == target:
                return c, -1
            if c.dimension == 2 and _same_cycle(c.vertices, target):
                return c, 1 if _same_cycle(c.vertices, target, oriented=True) else -1
        return None

    def restricted_to(self, keep: set[str]) -> EquivariantComplex:
        """Subcomplex on the given cell ids, with the pairings among them."""
        cells = tuple(c for c in self.cells if c.id in keep)
        for c in cells:
            missing = [b for b, _ in c.boundary if b not in keep]
            if missing:
                raise StructuralError(f"subcomplex not closed: {c.id} needs {missing}")
        pairs = tuple(i for i in self.identifications if i.source in keep and i.target in keep)
        return EquivariantComplex(self.group, cells, pairs, self.points)


def _same_cycle(a: Sequence[str], b: Sequence[str], oriented: bool = False) -> bool:
    n = len(a)
    if n != len(b):
        return False
    candidates = [tuple(b)] if oriented else [tuple(b), tuple(reversed(b))]
    for cand in candidates:
        for shift in range(n):
            if tuple(a[shift:]) + tuple(a[:shift]) == cand:
                return True
    return False


def build_complex(
    group: GroupTag,
    points: Mapping[str, HPoint],
    vertex_labels: Sequence[tuple[str, StabilizerLabel]],
    edges: Sequence[tuple[str, str, str, StabilizerLabel]],
    faces: Sequence[tuple[str, Sequence[str], StabilizerLabel]],
    identifications: Sequence[Identification],
) -> EquivariantComplex:
    """Assemble cells and resolve boundaries.

    Edge boundaries are head - tail. A face's boundary walks its vertex
    cycle and picks up each edge with the sign of its orientation.

    Raises:
        StructuralError: If a face cycle uses an edge that does not exist.
    """
    cells: list[Cell] = []
    for name, label in vertex_labels:
        if name not in points:
            raise StructuralError(f"vertex {name} has no coordinates")
        cells.append(Cell(name, 0, (name,), label))

    edge_by_pair: dict[tuple[str, str], str] = {}
    for edge_id, tail, head, label in edges:
        boundary = ((head, 1), (tail, -1)) if tail != head else ()
        cells.append(Cell(edge_id, 1, (tail, head), label, boundary))
        edge_by_pair[(tail, head)] = edge_id

    for face_id, cycle, label in faces:
        terms: list[tuple[str, int]] = []
        n = len(cycle)
        for k in range(n):
            u, v = cycle[k], cycle[(k + 1) % n]
            if (u, v) in edge_by_pair:
                terms.append((edge_by_pair[(u, v)], 1))
            elif (v, u) in edge_by_pair:
                terms.append((edge_by_pair[(v, u)], -1))
            else:
                raise StructuralError(f"face {face_id}: no edge between {u} and {v}")
        cells.append(Cell(face_id, 2, tuple(cycle), label, tuple(terms)))

    ids = [c.id for c in cells]
    if len(set(ids)) != len(ids):
        raise StructuralError("duplicate cell ids")
    known = set(ids)
    for ident in identifications:
        if ident.source not in known or ident.target not in known:
            raise StructuralError(f"identification {ident.source} -> {ident.target} names an unknown cell")
    return EquivariantComplex(group, tuple(cells), tuple(identifications), dict(points))
