"""Tests for the stabilizer cohomology tables and graded restriction maps."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bianchi_mod2.cohomology import (
    degree_one_classes,
    identity_map,
    multiplication_matrix,
    parse_expression,
    restriction_map,
    table_for,
)
from bianchi_mod2.complexes import StabilizerKind
from bianchi_mod2.config import ConfigurationError
from bianchi_mod2.linalg import F2Matrix, rank

Q8_TO_Z4_FIRST = {"x1": "b1", "y1": "0", "x2": "0", "y2": "0", "x3": "0", "e4": "e2^2"}


class TestGradedSpaces:
    """Tests for the per-kind tables."""

    @pytest.mark.parametrize(
        ("kind", "dims"),
        [
            (StabilizerKind.Q8, [1, 2, 2, 1, 1, 2, 2, 1]),
            (StabilizerKind.Z4, [1, 1, 1, 1, 1, 1, 1, 1]),
            (StabilizerKind.TE24, [1, 0, 0, 1, 1, 0, 0, 1]),
            (StabilizerKind.Z6, [1, 1, 1, 1, 1, 1, 1, 1]),
            (StabilizerKind.CENTER_ONLY, [1, 1, 1, 1, 1, 1, 1, 1]),
        ],
    )
    def test_dimensions(self, kind: StabilizerKind, dims: list[int]) -> None:
        space = table_for(kind)
        assert [space.dim(q) for q in range(8)] == dims
        assert space.dim(-1) == 0

    def test_basis_names(self) -> None:
        q8 = table_for(StabilizerKind.Q8)
        assert q8.basis_names(5) == ["e4*x1", "e4*y1"]
        assert q8.basis_names(8) == ["e4^2"]
        assert table_for(StabilizerKind.Z4).basis_names(4) == ["e2^2"]

    def test_degree_one_classes(self) -> None:
        assert degree_one_classes(StabilizerKind.Q8) == ["x1", "y1"]
        assert degree_one_classes(StabilizerKind.Z4) == ["b1"]
        assert degree_one_classes(StabilizerKind.TE24) == []

    def test_unknown_generator(self) -> None:
        with pytest.raises(ConfigurationError, match="not a module generator"):
            table_for(StabilizerKind.Z4).degree_of("x1")


class TestParseExpression:
    """Tests for textual class expressions."""

    def test_sums_and_cancellation(self) -> None:
        q8 = table_for(StabilizerKind.Q8)
        assert parse_expression(q8, "x1 + y1") == [(0, "x1"), (0, "y1")]
        assert parse_expression(q8, "x1 + x1") == []
        assert parse_expression(q8, "e4*x1") == [(1, "x1")]
        assert parse_expression(q8, "0") == []

    def test_powers(self) -> None:
        assert parse_expression(table_for(StabilizerKind.Z4), "e2^2") == [(2, "1")]

    @pytest.mark.parametrize("text", ["x1*y1", "z9", "x1^2", "b1-"])
    def test_malformed(self, text: str) -> None:
        with pytest.raises(ConfigurationError):
            parse_expression(table_for(StabilizerKind.Q8), text)


class TestGradedMaps:
    """Tests for maps extended along the periodicity class."""

    def test_restriction_matrices(self) -> None:
        m = restriction_map(StabilizerKind.Q8, StabilizerKind.Z4, Q8_TO_Z4_FIRST)
        assert m.matrix(1).to_dense().tolist() == [[1, 0]]
        assert m.matrix(4).to_dense().tolist() == [[1]]
        assert m.matrix(5).to_dense().tolist() == [[1, 0]]
        assert m.matrix(2).is_zero()

    def test_missing_image(self) -> None:
        with pytest.raises(ConfigurationError, match="no image for e4"):
            restriction_map(StabilizerKind.Q8, StabilizerKind.Z4, {k: v for k, v in Q8_TO_Z4_FIRST.items() if k != "e4"})

    def test_inhomogeneous_image(self) -> None:
        bad = {**Q8_TO_Z4_FIRST, "x2": "b1"}
        with pytest.raises(ConfigurationError, match="homogeneous"):
            restriction_map(StabilizerKind.Q8, StabilizerKind.Z4, bad)

    def test_unknown_class(self) -> None:
        with pytest.raises(ConfigurationError, match="unknown classes"):
            restriction_map(StabilizerKind.Z4, StabilizerKind.Z4, {"b1": "b1", "e2": "e2", "w": "0"})

    @given(st.sampled_from(list(StabilizerKind)), st.integers(0, 12))
    def test_identity_is_invertible(self, kind: StabilizerKind, q: int) -> None:
        m = identity_map(kind)
        assert m.matrix(q) == F2Matrix.identity(m.source.dim(q))
        assert m.commutes_with_periodicity(4)

    @given(st.integers(0, 12))
    def test_multiplication_is_injective(self, q: int) -> None:
        q8 = table_for(StabilizerKind.Q8)
        assert rank(multiplication_matrix(q8, 1, q)) == q8.dim(q)

    def test_restriction_commutes_with_periodicity(self) -> None:
        m = restriction_map(StabilizerKind.Q8, StabilizerKind.Z4, Q8_TO_Z4_FIRST)
        assert m.commutes_with_periodicity(9)
        to_center = restriction_map(
            StabilizerKind.Z4, StabilizerKind.CENTER_ONLY, {"b1": "0", "e2": "t1^2"}
        )
        assert to_center.commutes_with_periodicity(9)
