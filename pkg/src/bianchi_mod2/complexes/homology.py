"""Orbit complexes, their cellular (co)homology, torsion subcomplex, co-rank."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..geometry import act
from ..groups import IDENTITY, Mat2, Word, in_gamma0, inverse, parse_word
from ..linalg import (
    F2Matrix,
    IntMatrix,
    extend_basis,
    format_abelian_group,
    kernel_basis,
    rank,
    smith_normal_form,
    span_rank,
)
from .cells import Cell, EquivariantComplex, GroupTag, StabilizerKind, StabilizerLabel, StructuralError
from .presentation import AbelianGroup, PreconditionError, Presentation, abelianize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Translate:
    """cell = matrix * (orbit representative)."""

    word: str
    matrix: Mat2


@dataclass(frozen=True)
class OrbitCell:
    """One orbit of cells, represented by its first member."""

    id: str
    dimension: int
    stabilizer: StabilizerLabel
    members: tuple[str, ...]


@dataclass(frozen=True)
class Incidence:
    """A boundary term of an orbit cell, kept with multiplicity.

    Attributes:
        coface: Orbit id of the edge or face.
        face: Orbit id of the boundary cell.
        sign: Integer incidence (+1 or -1).
        slot: "tail"/"head" for edges; the boundary edge's orbit id for faces.
        translate: The actual boundary cell is translate * representative.
    """

    coface: str
    face: str
    sign: int
    slot: str
    translate: Translate


@dataclass(frozen=True)
class QuotientComplex:
    """Orbit cells with the induced F_2 and Z incidence."""

    group: GroupTag
    cells: tuple[OrbitCell, ...]
    incidences: tuple[Incidence, ...]
    translates: dict[str, tuple[str, Translate]]

    def cells_of_dim(self, p: int) -> list[OrbitCell]:
        return [c for c in self.cells if c.dimension == p]

    def count(self, p: int) -> int:
        return len(self.cells_of_dim(p))

    def index(self, p: int) -> dict[str, int]:
        return {c.id: k for k, c in enumerate(self.cells_of_dim(p))}

    def orbit(self, cell_id: str) -> OrbitCell:
        for c in self.cells:
            if c.id == cell_id:
                return c
        raise StructuralError(f"no orbit cell {cell_id!r}")

    def incidences_of(self, coface: str) -> list[Incidence]:
        return [i for i in self.incidences if i.coface == coface]

    def boundary_matrix(self, p: int) -> IntMatrix:
        """Integer matrix of d_p: C_p -> C_{p-1} (rows (p-1)-cells)."""
        rows, cols = self.index(p - 1), self.index(p)
        entries = [[0] * len(cols) for _ in rows]
        for inc in self.incidences:
            if inc.coface in cols and inc.face in rows:
                entries[rows[inc.face]][cols[inc.coface]] += inc.sign
        return IntMatrix.from_rows(entries, cols=len(cols))

    def boundary_f2(self, p: int) -> F2Matrix:
        m = self.boundary_matrix(p)
        return F2Matrix.from_dense(np.array(m.entries, dtype=np.int64).reshape(m.rows, m.cols), cols=m.cols)

    def coboundary_f2(self, p: int) -> F2Matrix:
        """delta^p: C^p -> C^{p+1}, the transpose of d_{p+1}."""
        return self.boundary_f2(p + 1).transpose()

    @cached_property
    def euler_characteristic(self) -> int:
        return sum((-1) ** p * self.count(p) for p in range(3))


def _check_identification(x: EquivariantComplex, source: Cell, target: Cell, g: Mat2) -> None:
    if source.dimension != target.dimension:
        raise StructuralError(f"{source.id} and {target.id} differ in dimension")
    if x.group is GroupTag.GAMMA0 and not in_gamma0(g):
        raise StructuralError(f"identification {source.id} -> {target.id} is not in Gamma_0(w)")
    images = [act(g, x.points[v]) for v in source.vertices]
    expected = [x.points[v] for v in target.vertices]
    if source.dimension == 2:
        ok = set(images) == set(expected)
    else:
        ok = images == expected or images == expected[::-1]
    if not ok:
        raise StructuralError(f"identification does not carry {source.id} onto {target.id}")


def orbit_translates(x: EquivariantComplex) -> dict[str, tuple[str, Translate]]:
    """cell id -> (orbit representative, translate), breadth-first from the rep.

    Raises:
        StructuralError: If a pairing is geometrically inconsistent.
    """
    neighbours: dict[str, list[tuple[str, str, Mat2]]] = {c.id: [] for c in x.cells}
    for ident in x.identifications:
        source, target = x.cell(ident.source), x.cell(ident.target)
        _check_identification(x, source, target, ident.matrix)
        neighbours[source.id].append((target.id, ident.matrix_name, ident.matrix))
        neighbours[target.id].append((source.id, f"{ident.matrix_name}^-1", inverse(ident.matrix)))

    result: dict[str, tuple[str, Translate]] = {}
    for c in x.cells:
        if c.id in result:
            continue
        result[c.id] = (c.id, Translate("1", IDENTITY))
        queue = deque([c.id])
        while queue:
            current = queue.popleft()
            _, here = result[current]
            for other, name, g in neighbours[current]:
                if other in result:
                    continue
                word = name if here.word == "1" else f"{name} {here.word}"
                result[other] = (c.id, Translate(word, g @ here.matrix))
                queue.append(other)
    return result


def quotient(x: EquivariantComplex) -> QuotientComplex:
    """Orbit complex of the fundamental domain under its pairings."""
    translates = orbit_translates(x)
    members: dict[str, list[str]] = {}
    for c in x.cells:
        members.setdefault(translates[c.id][0], []).append(c.id)

    orbit_cells = tuple(
        OrbitCell(rep, x.cell(rep).dimension, x.cell(rep).stabilizer, tuple(ids))
        for rep, ids in members.items()
    )

    incidences: list[Incidence] = []
    for orbit in orbit_cells:
        rep = x.cell(orbit.id)
        if rep.dimension == 1:
            for slot, vertex, sign in (("tail", rep.vertices[0], -1), ("head", rep.vertices[1], 1)):
                face, t = translates[vertex]
                incidences.append(Incidence(orbit.id, face, sign, slot, t))
        elif rep.dimension == 2:
            for edge_id, sign in rep.boundary:
                edge_rep, t = translates[edge_id]
                orientation = _orientation(x, x.cell(edge_rep), x.cell(edge_id), t.matrix)
                incidences.append(Incidence(orbit.id, edge_rep, sign * orientation, edge_rep, t))

    q = QuotientComplex(x.group, orbit_cells, tuple(incidences), translates)
    for p in (1, 2):
        d_low, d_high = q.boundary_matrix(p), q.boundary_matrix(p + 1)
        if d_high.rows and d_high.cols and any(any(row) for row in (d_low @ d_high).entries):
            raise StructuralError(f"d o d != 0 in degree {p + 1} of the {x.group.value} quotient")
    logger.debug(
        f"{x.group.value} quotient: "
        f"{q.count(0)} vertex, {q.count(1)} edge, {q.count(2)} face orbits"
    )
    return q


def _orientation(x: EquivariantComplex, rep: Cell, cell: Cell, g: Mat2) -> int:
    tail_image = act(g, x.points[rep.vertices[0]])
    return 1 if tail_image == x.points[cell.vertices[0]] else -1


def cohomology_dims(q: QuotientComplex, p: int) -> int:
    """dim_F2 H^p(q; F_2) by rank-nullity."""
    if p < 0:
        raise ValueError(f"degree must be >= 0, got {p}")
    if p > 2:
        return 0
    n = q.count(p)
    rank_out = rank(q.boundary_f2(p + 1)) if q.count(p + 1) and n else 0
    rank_in = rank(q.boundary_f2(p)) if p > 0 and q.count(p - 1) and n else 0
    return n - rank_out - rank_in


def betti_numbers(q: QuotientComplex) -> tuple[int, int, int]:
    return (cohomology_dims(q, 0), cohomology_dims(q, 1), cohomology_dims(q, 2))


@dataclass(frozen=True)
class HomologyGroup:
    """H_p over Z as free rank plus invariant factors."""

    degree: int
    free_rank: int
    torsion: tuple[int, ...]

    def __str__(self) -> str:
        return format_abelian_group(self.free_rank, self.torsion)


def integral_homology(q: QuotientComplex) -> list[HomologyGroup]:
    """H_0, H_1, H_2 of the orbit complex over Z via Smith normal form."""
    groups: list[HomologyGroup] = []
    for p in range(3):
        n = q.count(p)
        rank_in = smith_normal_form(q.boundary_matrix(p)).rank if p > 0 else 0
        outgoing = smith_normal_form(q.boundary_matrix(p + 1)) if p < 2 else None
        rank_out = outgoing.rank if outgoing else 0
        torsion = outgoing.torsion if outgoing else ()
        groups.append(HomologyGroup(p, n - rank_in - rank_out, torsion))
    return groups


def torsion_subcomplex(x: EquivariantComplex) -> EquivariantComplex:
    """Cells whose stabilizer has a non-central element of 2-power order."""
    keep = {c.id for c in x.cells if c.stabilizer.kind.has_noncentral_two_torsion}
    return x.restricted_to(keep)


def _h1_representatives(q: QuotientComplex) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """(B^1 spanning vectors, cocycles completing them to a basis of Z^1)."""
    n1 = q.count(1)
    if n1 == 0:
        return [], []
    delta0 = q.coboundary_f2(0) if q.count(0) else F2Matrix.zeros(n1, 0)
    coboundaries = [row for row in delta0.transpose().to_dense()]
    delta1 = q.coboundary_f2(1) if q.count(2) else F2Matrix.zeros(0, n1)
    cocycles = kernel_basis(delta1)
    chosen = extend_basis(coboundaries, cocycles, n1)
    return coboundaries, [cocycles[k] for k in chosen]


def corank(x: EquivariantComplex) -> int:
    """Rank of coker(H^1(quotient; F_2) -> H^1(torsion quotient; F_2))."""
    full = quotient(x)
    sub = quotient(torsion_subcomplex(x))
    n_sub = sub.count(1)
    if n_sub == 0:
        return 0
    full_index = full.index(1)
    positions = [full_index[c.id] for c in sub.cells_of_dim(1)]
    _, classes = _h1_representatives(full)
    restricted = [cls[positions] for cls in classes]
    sub_coboundaries, _ = _h1_representatives(sub)
    base = span_rank(sub_coboundaries, n_sub)
    image_rank = span_rank([*sub_coboundaries, *restricted], n_sub) - base
    return cohomology_dims(sub, 1) - image_rank


def _word(text: str) -> Word:
    return () if text == "1" else parse_word(text)


def _inverse_word(word: Word) -> Word:
    return tuple((name, -exp) for name, exp in reversed(word))


def _stabilizer_word(label: StabilizerLabel, element: Mat2, where: str) -> Word:
    group = label.subgroup
    if element not in group:
        raise PreconditionError(f"{element} is not in the stabilizer {label.display()} of {where}")
    return tuple((group.names[k], 1) for k in group.words[element])


def _stabilizer_relators(label: StabilizerLabel) -> list[Word]:
    """x^4 for Z/4, the quaternion relations for Q8, the Cayley table otherwise."""
    names = label.generator_names
    if label.kind is StabilizerKind.Z4 and len(names) == 1:
        return [((names[0], 4),)]
    if label.kind is StabilizerKind.Q8 and len(names) == 2:
        x, y = names
        return [((x, 4),), ((x, 2), (y, -2)), ((y, 1), (x, 1), (y, -1), (x, 1))]
    group = label.subgroup
    relators: list[Word] = []
    for element, indices in group.words.items():
        for k, g in enumerate(group.generators):
            target = group.words[element @ g]
            if indices + (k,) == target:
                continue
            relators.append(
                tuple((group.names[i], 1) for i in (*indices, k))
                + _inverse_word(tuple((group.names[i], 1) for i in target))
            )
    return relators


def _edge_relators(
    x: EquivariantComplex, translates: dict[str, tuple[str, Translate]], edge: Cell
) -> list[Word]:
    """Each edge-stabilizer generator, written in the groups of both end vertices."""
    relators: list[Word] = []
    for y in edge.stabilizer.generators:
        sides: list[Word] = []
        for v in edge.vertices:
            rep, t = translates[v]
            local = _stabilizer_word(x.cell(rep).stabilizer, inverse(t.matrix) @ y @ t.matrix, v)
            shift = _word(t.word)
            sides.append(shift + local + _inverse_word(shift))
        relators.append(sides[0] + _inverse_word(sides[1]))
    return relators


def _face_relator(
    x: EquivariantComplex, translates: dict[str, tuple[str, Translate]], face: Cell
) -> Word:
    """Walk the boundary cycle; the frame maps the current orbit rep onto the current vertex.

    Each step picks up the vertex-stabilizer element absorbing the change of
    frame and the translate word of the edge crossed; the walk closes in the
    stabilizer of the starting vertex.
    """
    cycle = face.vertices
    start_rep, start = translates[cycle[0]]
    frame = start.matrix
    word: Word = ()
    for k, (edge_id, _) in enumerate(face.boundary):
        here = x.points[cycle[k]]
        rep_id, shift = translates[edge_id]
        tail, head = x.cell(rep_id).vertices
        if act(shift.matrix, x.points[tail]) == here:
            near, far = tail, head
        elif act(shift.matrix, x.points[head]) == here:
            near, far = head, tail
        else:
            raise StructuralError(f"face {face.id}: {edge_id} does not start at {cycle[k]}")
        near_rep, via = translates[near]
        _, onward = translates[far]
        s = inverse(frame) @ shift.matrix @ via.matrix
        word += (
            _stabilizer_word(x.cell(near_rep).stabilizer, s, cycle[k])
            + _inverse_word(_word(via.word))
            + _word(onward.word)
        )
        frame = shift.matrix @ onward.matrix
    closing = inverse(frame) @ start.matrix
    return word + _stabilizer_word(x.cell(start_rep).stabilizer, closing, cycle[0])


def derive_presentation(x: EquivariantComplex) -> tuple[Presentation, dict[str, Mat2]]:
    """Presentation of the group read off its fundamental domain.

    Generators are the pairing matrices and the stabilizer generators of the
    vertex orbit representatives. Relators are the stabilizer relations, one
    relation per edge-stabilizer generator tying the two end vertices, and
    one boundary word per face orbit.

    Returns:
        The presentation and the matrix of every generator name.

    Raises:
        StructuralError: If one name stands for two different matrices.
        PreconditionError: If a stabilizer element met on the way is not in
            the labelled stabilizer.
    """
    translates = orbit_translates(x)
    reps = [c for c in x.cells if translates[c.id][0] == c.id]
    values: dict[str, Mat2] = {}
    named = [(i.matrix_name, i.matrix) for i in x.identifications]
    for c in reps:
        if c.dimension == 0:
            named += zip(c.stabilizer.generator_names, c.stabilizer.generators, strict=True)
    for name, g in named:
        if values.setdefault(name, g) != g:
            raise StructuralError(f"generator {name} names two different matrices")

    relators: list[Word] = []
    for c in reps:
        if c.dimension == 0:
            relators += _stabilizer_relators(c.stabilizer)
        elif c.dimension == 1:
            relators += _edge_relators(x, translates, c)
        else:
            relators.append(_face_relator(x, translates, c))
    presentation = Presentation(tuple(values), tuple(r for r in relators if r))
    logger.debug(
        f"{x.group.value} presentation: {len(presentation.generators)} generators, "
        f"{len(presentation.relators)} relators"
    )
    return presentation, values


def abelianization(x: EquivariantComplex) -> AbelianGroup:
    """H_1 of the group, from the presentation derived from its complex.

    Raises:
        PreconditionError: If the quotient is disconnected.
    """
    components = cohomology_dims(quotient(x), 0)
    if components != 1:
        raise PreconditionError(f"{x.group.value} quotient has {components} components")
    presentation, _ = derive_presentation(x)
    result = abelianize(presentation)
    logger.info(f"{x.group.value} abelianization: {result}")
    return result
