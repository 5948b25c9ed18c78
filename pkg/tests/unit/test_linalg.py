"""Tests for F_2 linear algebra and the integer Smith normal form."""

from __future__ import annotations

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from bianchi_mod2.linalg import (
    F2Matrix,
    IntMatrix,
    block_matrix,
    cokernel_dim,
    elementary_divisors,
    extend_basis,
    format_abelian_group,
    kernel_basis,
    nullity,
    rank,
    smith_normal_form,
    span_rank,
)


@st.composite
def bit_matrices(draw: st.DrawFn, max_rows: int = 8, max_cols: int = 80) -> np.ndarray:
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    bits = draw(st.lists(st.integers(0, 1), min_size=rows * cols, max_size=rows * cols))
    return np.array(bits, dtype=np.uint8).reshape(rows, cols)


@st.composite
def int_matrices(draw: st.DrawFn) -> list[list[int]]:
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 4))
    return [draw(st.lists(st.integers(-6, 6), min_size=m, max_size=m)) for _ in range(n)]


class TestF2Matrix:
    """Tests for the bit-packed F_2 matrix."""

    def test_from_dense_reduces_mod_two(self) -> None:
        m = F2Matrix.from_dense([[2, 3], [-1, 4]])
        assert m.to_dense().tolist() == [[0, 1], [1, 0]]

    def test_wide_matrix_round_trips(self) -> None:
        dense = np.zeros((2, 130), dtype=np.uint8)
        dense[0, 0] = dense[0, 64] = dense[1, 129] = 1
        m = F2Matrix.from_dense(dense)
        assert np.array_equal(m.to_dense(), dense)
        assert m[0, 64] == 1
        assert m[1, 128] == 0

    def test_index_out_of_range(self) -> None:
        with pytest.raises(IndexError):
            F2Matrix.zeros(2, 2)[2, 0]

    def test_empty_shapes(self) -> None:
        m = F2Matrix.from_dense(np.zeros((0, 3)), cols=3)
        assert m.shape == (0, 3)
        assert rank(m) == 0
        assert len(kernel_basis(m)) == 3

    def test_product_and_sum(self) -> None:
        a = F2Matrix.from_dense([[1, 1], [0, 1]])
        assert a @ a == F2Matrix.identity(2)
        assert (a + a).is_zero()
        with pytest.raises(ValueError, match="shape mismatch"):
            a @ F2Matrix.zeros(3, 1)

    def test_block_matrix(self) -> None:
        i2, z = F2Matrix.identity(2), F2Matrix.zeros(2, 1)
        m = block_matrix([[i2, z], [F2Matrix.zeros(1, 2), F2Matrix.identity(1)]])
        assert m == F2Matrix.identity(3)


class TestRankAndKernel:
    """Tests for elimination-based routines."""

    def test_rank_nullity(self) -> None:
        m = F2Matrix.from_dense([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
        assert rank(m) == 2
        assert nullity(m) == 1
        assert cokernel_dim(m) == 1
        (v,) = kernel_basis(m)
        assert v.tolist() == [1, 1, 1]

    @given(bit_matrices())
    @settings(max_examples=40, deadline=None)
    def test_rank_of_transpose(self, dense: np.ndarray) -> None:
        """rank(M) = rank(M^T)."""
        m = F2Matrix.from_dense(dense)
        assert rank(m) == rank(m.transpose())

    @given(bit_matrices(max_cols=20))
    @settings(max_examples=40, deadline=None)
    def test_kernel_vectors_are_annihilated(self, dense: np.ndarray) -> None:
        m = F2Matrix.from_dense(dense)
        basis = kernel_basis(m)
        assert len(basis) == nullity(m)
        for v in basis:
            assert not m.apply(v).any()
        if basis:
            assert span_rank(basis, m.cols) == len(basis)

    def test_extend_basis_is_greedy(self) -> None:
        e1 = np.array([1, 0, 0], dtype=np.uint8)
        e2 = np.array([0, 1, 0], dtype=np.uint8)
        both = np.array([1, 1, 0], dtype=np.uint8)
        assert extend_basis([e1], [both, e2, e1], 3) == [0]
        assert extend_basis([], [e1, e1, e2], 3) == [0, 2]


class TestSmithNormalForm:
    """Tests for the integer Smith normal form."""

    def test_small_example(self) -> None:
        smith = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
        assert smith.divisors == (2, 4)
        assert smith.free_rank == 0
        assert smith.torsion == (2, 4)

    def test_coprime_diagonal(self) -> None:
        smith = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
        assert smith.divisors == (1, 6)
        assert smith.torsion == (6,)

    def test_rank_deficient(self) -> None:
        smith = smith_normal_form(IntMatrix.from_rows([[1, 2], [2, 4]]))
        assert smith.rank == 1
        assert smith.free_rank == 1

    def test_ragged_rows_rejected(self) -> None:
        with pytest.raises(ValueError, match="ragged"):
            IntMatrix.from_rows([[1, 2], [3]])

    @given(int_matrices())
    @settings(max_examples=60, deadline=None)
    def test_divisors_match_determinantal_data(self, rows: list[list[int]]) -> None:
        """Divisor chain, rank, |det| for square input and F_2 rank."""
        smith = smith_normal_form(IntMatrix.from_rows(rows))
        divisors = smith.divisors
        assert all(d > 0 for d in divisors)
        assert all(b % a == 0 for a, b in zip(divisors, divisors[1:], strict=False))
        matrix = sympy.Matrix(rows)
        assert smith.rank == matrix.rank()
        if matrix.rows == matrix.cols:
            assert int(np.prod(divisors)) * (smith.rank == matrix.rows) == abs(int(matrix.det()))
        f2_rank = rank(F2Matrix.from_dense(rows))
        assert f2_rank == sum(1 for d in divisors if d % 2)


class TestAbelianGroups:
    """Tests for elementary divisors and formatting."""

    def test_elementary_divisors(self) -> None:
        assert elementary_divisors([2, 2]) == [2, 2]
        assert elementary_divisors([12]) == [4, 3]
        assert elementary_divisors([1, 6]) == [2, 3]

    def test_format(self) -> None:
        assert format_abelian_group(2, (2, 2)) == "Z x Z x C2 x C2"
        assert format_abelian_group(0, (1,)) == "trivial"
