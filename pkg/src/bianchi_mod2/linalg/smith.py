"""Integer Smith normal form and finitely generated abelian groups."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from sympy import factorint


@dataclass(frozen=True)
class IntMatrix:
    """A rows x cols matrix of Python ints."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        data = tuple(tuple(int(x) for x in row) for row in rows)
        width = len(data[0]) if data else (cols or 0)
        if any(len(row) != width for row in data):
            raise ValueError("ragged integer matrix")
        return cls(rows=len(data), cols=width, entries=data)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        return IntMatrix.from_rows(
            [
                [sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols)) for j in range(other.cols)]
                for i in range(self.rows)
            ],
            cols=other.cols,
        )

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )


@dataclass(frozen=True)
class SmithForm:
    """Result of smith_normal_form: left @ m @ right == diagonal.

    Attributes:
        divisors: Nonzero diagonal entries d1 | d2 | ..., all positive.
        rank: Number of nonzero divisors.
        free_rank: Free rank of the cokernel Z^rows / m Z^cols.
        left: Unimodular row transform.
        right: Unimodular column transform.
        diagonal: The diagonal matrix itself.
    """

    divisors: tuple[int, ...]
    rank: int
    free_rank: int
    left: IntMatrix
    right: IntMatrix
    diagonal: IntMatrix

    @property
    def torsion(self) -> tuple[int, ...]:
        """Invariant factors of the cokernel's torsion part."""
        return tuple(d for d in self.divisors if d > 1)


class _Reducer:
    def __init__(self, m: IntMatrix) -> None:
        self.a = [list(row) for row in m.entries]
        self.rows, self.cols = m.rows, m.cols
        self.left = [[int(i == j) for j in range(m.rows)] for i in range(m.rows)]
        self.right = [[int(i == j) for j in range(m.cols)] for i in range(m.cols)]

    def swap_rows(self, i: int, k: int) -> None:
        self.a[i], self.a[k] = self.a[k], self.a[i]
        self.left[i], self.left[k] = self.left[k], self.left[i]

    def swap_cols(self, j: int, k: int) -> None:
        for row in self.a:
            row[j], row[k] = row[k], row[j]
        for row in self.right:
            row[j], row[k] = row[k], row[j]

    def add_row(self, target: int, source: int, factor: int) -> None:
        """row[target] += factor * row[source]."""
        for mat in (self.a, self.left):
            mat[target] = [x + factor * y for x, y in zip(mat[target], mat[source], strict=True)]

    def add_col(self, target: int, source: int, factor: int) -> None:
        for mat in (self.a, self.right):
            for row in mat:
                row[target] += factor * row[source]

    def negate_row(self, i: int) -> None:
        self.a[i] = [-x for x in self.a[i]]
        self.left[i] = [-x for x in self.left[i]]

    def select_pivot(self, t: int) -> bool:
        """Move the smallest nonzero entry of the trailing block to (t, t)."""
        candidates = [
            (abs(self.a[i][j]), i, j)
            for i in range(t, self.rows)
            for j in range(t, self.cols)
            if self.a[i][j]
        ]
        if not candidates:
            return False
        _, i, j = min(candidates)
        self.swap_rows(t, i)
        self.swap_cols(t, j)
        return True

    def reduce_at(self, t: int) -> None:
        while True:
            pivot = self.a[t][t]
            for i in range(t + 1, self.rows):
                q = self.a[i][t] // pivot
                if q:
                    self.add_row(i, t, -q)
            for j in range(t + 1, self.cols):
                q = self.a[t][j] // pivot
                if q:
                    self.add_col(j, t, -q)

            leftovers = [(abs(self.a[i][t]), i, t) for i in range(t + 1, self.rows) if self.a[i][t]]
            leftovers += [(abs(self.a[t][j]), t, j) for j in range(t + 1, self.cols) if self.a[t][j]]
            if leftovers:
                _, i, j = min(leftovers)
                if j == t:
                    self.swap_rows(t, i)
                else:
                    self.swap_cols(t, j)
                continue

            bad = next(
                (
                    i
                    for i in range(t + 1, self.rows)
                    for j in range(t + 1, self.cols)
                    if self.a[i][j] % pivot
                ),
                None,
            )
            if bad is None:
                break
            self.add_row(t, bad, 1)

        if self.a[t][t] < 0:
            self.negate_row(t)


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Smith normal form with smallest-entry pivoting.

    The transforms are re-multiplied and checked before returning.

    Raises:
        ArithmeticError: If the re-multiplication check fails.
    """
    reducer = _Reducer(m)
    rank = 0
    for t in range(min(m.rows, m.cols)):
        if not reducer.select_pivot(t):
            break
        reducer.reduce_at(t)
        rank += 1

    diagonal = IntMatrix.from_rows(reducer.a, cols=m.cols)
    left = IntMatrix.from_rows(reducer.left, cols=m.rows)
    right = IntMatrix.from_rows(reducer.right, cols=m.cols)
    if left @ m @ right != diagonal:
        raise ArithmeticError("Smith transforms do not reproduce the diagonal")
    divisors = tuple(diagonal.entries[t][t] for t in range(rank))
    for first, second in zip(divisors, divisors[1:], strict=False):
        if second % first:
            raise ArithmeticError(f"divisibility chain broken: {divisors}")
    return SmithForm(
        divisors=divisors,
        rank=rank,
        free_rank=m.rows - rank,
        left=left,
        right=right,
        diagonal=diagonal,
    )


def elementary_divisors(invariant_factors: Sequence[int]) -> list[int]:
    """Split invariant factors into prime powers, sorted by prime then power."""
    powers: list[tuple[int, int]] = []
    for d in invariant_factors:
        if d > 1:
            powers.extend((int(p), int(p) ** int(e)) for p, e in factorint(d).items())
    return [q for _, q in sorted(powers)]


def format_abelian_group(free_rank: int, torsion: Sequence[int]) -> str:
    """e.g. "Z x Z x C2 x C2"; "trivial" for the zero group."""
    parts = ["Z"] * free_rank + [f"C{d}" for d in torsion if d > 1]
    return " x ".join(parts) if parts else "trivial"
