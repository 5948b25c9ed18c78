"""Tests for the equivariant cell complexes, their quotients and homology."""

from __future__ import annotations

import pytest

from bianchi_mod2.complexes import (
    GAMMA0_PRESENTATION,
    GroupTag,
    Identification,
    JIdentityStatus,
    PreconditionError,
    Presentation,
    StabilizerKind,
    StabilizerLabel,
    abelianization,
    abelianize,
    audit_j_identities,
    audit_nesting,
    audit_normalizer,
    audit_presentation,
    audit_stabilizers,
    audit_tiling,
    betti_numbers,
    build_complex,
    check_relators,
    cohomology_dims,
    corank,
    derive_presentation,
    describe_complex,
    integral_homology,
    quotient,
    sl2_counterpart,
    stabilizer_kinds,
    torsion_subcomplex,
)
from bianchi_mod2.geometry import VERTICES
from bianchi_mod2.groups import GEN_U, NAMED_GENERATORS
from bianchi_mod2.utils.checks import failures


class TestDomains:
    """Tests for the two fundamental domains and their audits."""

    def test_cell_counts(self, gamma0, sl2) -> None:
        assert [len(gamma0.cells_of_dim(p)) for p in range(3)] == [8, 10, 3]
        assert [len(sl2.cells_of_dim(p)) for p in range(3)] == [4, 4, 1]
        assert gamma0.group is GroupTag.GAMMA0
        assert sl2.group is GroupTag.SL2

    def test_stabilizers_are_verified(self, gamma0, sl2) -> None:
        assert failures(audit_stabilizers(gamma0)) == []
        assert failures(audit_stabilizers(sl2)) == []

    def test_stabilizer_kinds(self, gamma0, sl2) -> None:
        assert stabilizer_kinds(gamma0, 0) == {StabilizerKind.Q8, StabilizerKind.Z4}
        assert stabilizer_kinds(sl2, 0) == {StabilizerKind.Q8, StabilizerKind.TE24}
        assert StabilizerKind.Z6 in stabilizer_kinds(sl2, 1)
        assert stabilizer_kinds(gamma0, 2) == {StabilizerKind.CENTER_ONLY}

    def test_nesting_tiling_presentation(self, gamma0, sl2) -> None:
        assert audit_nesting(gamma0, sl2).passed
        assert failures(audit_tiling(gamma0)) == []
        assert failures(audit_presentation()) == []
        assert audit_normalizer().passed

    def test_inferred_labels_are_marked(self, gamma0) -> None:
        inferred = {c.id for c in gamma0.cells if c.stabilizer.inferred}
        assert {"v2'", "e_T", "T.e_T"} <= inferred

    def test_j_identities_are_reported_not_raised(self) -> None:
        results = audit_j_identities()
        assert len(results) == 2
        assert all(r.status is not JIdentityStatus.FAILS for r in results)

    def test_describe_complex(self, sl2) -> None:
        described = describe_complex(sl2)
        assert described["group"] == "sl2"
        ids = [c["id"] for c in described["cells"]]
        assert "e_b" in ids
        assert {"source": "e_a", "target": "U.e_a", "matrix": "U"} in described["identifications"]

    def test_counterpart_lands_in_sl2_domain(self, gamma0, sl2) -> None:
        corr = sl2_counterpart(gamma0, sl2, "e_c")
        assert corr.gamma0_cell == "e_c"
        assert corr.sl2_cell in {c.id for c in sl2.cells_of_dim(1)}


class TestQuotient:
    """Tests for orbit complexes and their homology."""

    def test_orbit_counts(self, gamma0, sl2) -> None:
        assert [quotient(gamma0).count(p) for p in range(3)] == [3, 6, 3]
        assert [quotient(sl2).count(p) for p in range(3)] == [2, 3, 1]

    def test_betti_numbers(self, gamma0, sl2) -> None:
        assert betti_numbers(quotient(gamma0)) == (1, 2, 1)
        assert betti_numbers(quotient(sl2)) == (1, 1, 0)

    def test_euler_characteristic(self, gamma0) -> None:
        q = quotient(gamma0)
        b0, b1, b2 = betti_numbers(q)
        assert q.euler_characteristic == b0 - b1 + b2

    def test_boundary_squares_to_zero(self, gamma0) -> None:
        q = quotient(gamma0)
        assert (q.boundary_f2(1) @ q.boundary_f2(2)).is_zero()

    def test_integral_homology(self, gamma0, sl2) -> None:
        assert [str(h) for h in integral_homology(quotient(gamma0))] == ["Z", "Z x Z", "Z"]
        assert [str(h) for h in integral_homology(quotient(sl2))] == ["Z", "Z", "trivial"]

    def test_negative_degree_rejected(self, sl2) -> None:
        with pytest.raises(ValueError, match="degree"):
            cohomology_dims(quotient(sl2), -1)
        assert cohomology_dims(quotient(sl2), 3) == 0


class TestTorsionSubcomplex:
    """Tests for the 2-torsion subcomplex and the corank."""

    def test_gamma0_torsion_subcomplex(self, gamma0) -> None:
        sub = quotient(torsion_subcomplex(gamma0))
        assert cohomology_dims(sub, 0) == 1
        assert cohomology_dims(sub, 1) == 2
        assert sub.count(2) == 0

    def test_sl2_torsion_subcomplex_drops_z6_edge(self, sl2) -> None:
        sub = torsion_subcomplex(sl2)
        assert "e_b" not in {c.id for c in sub.cells}
        assert cohomology_dims(quotient(sub), 1) == 1

    def test_gamma0_corank_vanishes(self, gamma0) -> None:
        assert corank(gamma0) == 0


def _point(vertex: str, kind: StabilizerKind, names: tuple[str, ...]):
    """One vertex and nothing else: the group is the vertex stabilizer."""
    label = StabilizerLabel(kind, names, tuple(NAMED_GENERATORS[n] for n in names))
    return build_complex(GroupTag.SL2, {vertex: VERTICES[vertex]}, [(vertex, label)], [], [], [])


class TestAbelianization:
    """Tests for presentations and their abelianization."""

    def test_gamma0(self, gamma0) -> None:
        group = abelianization(gamma0)
        assert group.free_rank == 2
        assert group.torsion == (2, 2)
        assert group.f2_corank == 4
        assert str(group) == "Z x Z x C2 x C2"

    def test_gamma0_presentation_from_domain(self, gamma0) -> None:
        presentation, values = derive_presentation(gamma0)
        assert presentation.generators == ("U", "T", "C", "B", "A")
        assert all(r.holds for r in check_relators(presentation, values))

    def test_printed_relators_hold(self) -> None:
        assert all(r.holds for r in check_relators(GAMMA0_PRESENTATION, NAMED_GENERATORS))

    def test_point_with_cyclic_stabilizer(self) -> None:
        group = abelianization(_point("v2'", StabilizerKind.Z4, ("A",)))
        assert (group.free_rank, group.torsion) == (0, (4,))

    def test_point_with_quaternion_stabilizer(self) -> None:
        group = abelianization(_point("v2", StabilizerKind.Q8, ("C", "B")))
        assert (group.free_rank, group.torsion) == (0, (2, 2))

    def test_point_with_binary_tetrahedral_stabilizer(self) -> None:
        group = abelianization(_point("v1'", StabilizerKind.TE24, ("A", "b")))
        assert (group.free_rank, group.torsion) == (0, (3,))

    def test_loop_closed_by_pairing(self) -> None:
        center = StabilizerLabel.center()
        x = build_complex(
            GroupTag.SL2,
            {v: VERTICES[v] for v in ("v2'", "v2''")},
            [("v2'", center), ("v2''", center)],
            [("e", "v2'", "v2''", center)],
            [],
            [Identification("v2'", "v2''", "U", GEN_U)],
        )
        presentation, _ = derive_presentation(x)
        assert presentation.generators == ("U", "-I")
        group = abelianization(x)
        assert (group.free_rank, group.torsion) == (1, (2,))

    def test_disconnected(self) -> None:
        center = StabilizerLabel.center()
        x = build_complex(
            GroupTag.SL2,
            {v: VERTICES[v] for v in ("v2'", "v2''")},
            [("v2'", center), ("v2''", center)],
            [],
            [],
            [],
        )
        with pytest.raises(PreconditionError, match="2 components"):
            abelianization(x)
    def test_free_abelian_toy(self) -> None:
        group = abelianize(Presentation.parse(("a", "b"), ("a b a^-1 b^-1",)))
        assert (group.free_rank, group.torsion) == (2, ())

    def test_cyclic_toy(self) -> None:
        group = abelianize(Presentation.parse(("a",), ("a^4",)))
        assert group.torsion == (4,)
        assert group.f2_corank == 1
        assert group.elementary_divisors() == [4]

    def test_no_relators(self) -> None:
        assert abelianize(Presentation.parse(("a", "b", "c"), ())).free_rank == 3
