"""Linear algebra over F_2 on bit-packed rows.

Rows are packed little-endian into uint64 words, so an elimination step is
one XOR per word.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

WORD_BITS = 64

Vector = npt.NDArray[np.uint8]


def _words_for(cols: int) -> int:
    return max(1, -(-cols // WORD_BITS))


def _pack(dense: npt.NDArray[np.uint8], cols: int) -> npt.NDArray[np.uint64]:
    rows = dense.shape[0]
    padded = np.zeros((rows, _words_for(cols) * WORD_BITS), dtype=np.uint8)
    padded[:, :cols] = dense
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64)


def _bit(packed: npt.NDArray[np.uint64], row: int, col: int) -> int:
    byte = packed[row].view(np.uint8)[col // 8]
    return int(byte >> (col % 8)) & 1


@dataclass(frozen=True, eq=False)
class F2Matrix:
    """A rows x cols matrix over F_2.

    Attributes:
        rows: Number of rows.
        cols: Number of columns.
        packed: (rows, words) uint64 array; bits past ``cols`` are zero.
    """

    rows: int
    cols: int
    packed: npt.NDArray[np.uint64]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"negative shape {self.rows}x{self.cols}")

    @classmethod
    def from_dense(cls, dense: npt.ArrayLike, cols: int | None = None) -> F2Matrix:
        """Build from a 2-D array-like of integers, reduced mod 2.

        ``cols`` is only needed for matrices with no rows.
        """
        arr = np.asarray(dense, dtype=np.int64)
        if arr.size == 0 and arr.ndim < 2:
            arr = arr.reshape(0, cols or 0)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {arr.shape}")
        bits = (arr % 2).astype(np.uint8)
        return cls(rows=bits.shape[0], cols=bits.shape[1], packed=_pack(bits, bits.shape[1]))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> F2Matrix:
        return cls.from_dense(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> F2Matrix:
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def to_dense(self) -> Vector:
        if self.rows == 0:
            return np.zeros((0, self.cols), dtype=np.uint8)
        bits = np.unpackbits(self.packed.view(np.uint8), axis=1, bitorder="little")
        return bits[:, : self.cols].copy()

    def __getitem__(self, index: tuple[int, int]) -> int:
        row, col = index
        if not (0 <= row < self.rows and 0 <= col < self.cols):
            raise IndexError(f"({row}, {col}) outside {self.rows}x{self.cols}")
        return _bit(self.packed, row, col)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, F2Matrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.packed, other.packed))

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.packed.tobytes()))

    def __add__(self, other: F2Matrix) -> F2Matrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return F2Matrix(self.rows, self.cols, self.packed ^ other.packed)

    def __matmul__(self, other: F2Matrix) -> F2Matrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        product = self.to_dense().astype(np.int64) @ other.to_dense().astype(np.int64)
        return F2Matrix.from_dense(product, cols=other.cols)

    def transpose(self) -> F2Matrix:
        return F2Matrix.from_dense(self.to_dense().T, cols=self.rows)

    @property
    def T(self) -> F2Matrix:  # noqa: N802
        return self.transpose()

    def is_zero(self) -> bool:
        return not bool(self.packed.any())

    def apply(self, vector: Vector) -> Vector:
        """Matrix-vector product M v."""
        v = np.asarray(vector, dtype=np.int64)
        return ((self.to_dense().astype(np.int64) @ v) % 2).astype(np.uint8)

    def __repr__(self) -> str:
        body = "; ".join("".join(str(b) for b in row) for row in self.to_dense())
        return f"F2Matrix({self.rows}x{self.cols}: {body})"


def block_matrix(blocks: Sequence[Sequence[F2Matrix]]) -> F2Matrix:
    """Assemble a block matrix; every row of blocks must agree in height."""
    if not blocks or not blocks[0]:
        return F2Matrix.zeros(0, 0)
    dense_rows = [np.hstack([b.to_dense() for b in row]) for row in blocks]
    cols = sum(b.cols for b in blocks[0])
    return F2Matrix.from_dense(np.vstack(dense_rows), cols=cols)


@dataclass(frozen=True)
class RowReduction:
    """Reduced row echelon form with its pivot columns."""

    packed: npt.NDArray[np.uint64]
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def row_reduce(m: F2Matrix) -> RowReduction:
    """Gauss-Jordan elimination with word-level XOR."""
    work = m.packed.copy()
    pivots: list[int] = []
    row = 0
    for col in range(m.cols):
        if row == m.rows:
            break
        pivot = next((r for r in range(row, m.rows) if _bit(work, r, col)), None)
        if pivot is None:
            continue
        if pivot != row:
            work[[row, pivot]] = work[[pivot, row]]
        for r in range(m.rows):
            if r != row and _bit(work, r, col):
                work[r] ^= work[row]
        pivots.append(col)
        row += 1
    return RowReduction(packed=work, pivots=tuple(pivots))


def rank(m: F2Matrix) -> int:
    return row_reduce(m).rank


def kernel_basis(m: F2Matrix) -> list[Vector]:
    """Basis of {v : M v = 0}, one vector per free column."""
    reduced = row_reduce(m)
    pivot_set = set(reduced.pivots)
    basis: list[Vector] = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = np.zeros(m.cols, dtype=np.uint8)
        vec[free] = 1
        for r, col in enumerate(reduced.pivots):
            if _bit(reduced.packed, r, free):
                vec[col] = 1
        basis.append(vec)
    return basis


def nullity(m: F2Matrix) -> int:
    return m.cols - rank(m)


def cokernel_dim(m: F2Matrix) -> int:
    """Dimension of F_2^rows / image(M)."""
    return m.rows - rank(m)


def span_rank(vectors: Iterable[Vector], length: int) -> int:
    rows = list(vectors)
    if not rows:
        return 0
    return rank(F2Matrix.from_dense(np.vstack(rows), cols=length))


def extend_basis(base: Sequence[Vector], candidates: Sequence[Vector], length: int) -> list[int]:
    """Indices of candidates that extend span(base) to span(base + candidates).

    Candidates are taken greedily in order, so the choice is deterministic.
    """
    chosen: list[int] = []
    current = list(base)
    current_rank = span_rank(current, length)
    for index, candidate in enumerate(candidates):
        trial = span_rank([*current, candidate], length)
        if trial > current_rank:
            current.append(candidate)
            current_rank = trial
            chosen.append(index)
    return chosen
