"""E_1 and E_2 pages of the equivariant spectral sequence and the comparison (i*, j*).

E_1^{p,q} is the sum over orbit p-cells of H^q(stabilizer; F_2); d_1 sums
the configured restriction maps over the incidences of the quotient. Higher
differentials vanish for both groups, so E_2 = E_infinity.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..complexes import QuotientComplex
from ..config import ConfigurationError
from ..linalg import F2Matrix, Vector, extend_basis, kernel_basis, span_rank
from .restrictions import RestrictionConfig
from .tables import table_for

logger = logging.getLogger(__name__)

MAX_P = 2


class ChainMapError(ConfigurationError):
    """The comparison map does not commute with d_1."""


class RangeError(Exception):
    """A degree beyond the computed range was requested."""


@dataclass(frozen=True)
class E1Page:
    """E_1 of one complex for 0 <= q <= q_max.

    Attributes:
        quotient: Orbit complex the page is built on.
        config: Restriction configuration for d_1.
        q_max: Highest row.
    """

    quotient: QuotientComplex
    config: RestrictionConfig
    q_max: int
    _d1: dict[tuple[int, int], F2Matrix] = field(default_factory=dict, init=False, repr=False, compare=False)

    def blocks(self, p: int, q: int) -> list[tuple[str, int, int]]:
        """(cell id, offset, width) for every orbit p-cell."""
        out, offset = [], 0
        for cell in self.quotient.cells_of_dim(p):
            width = table_for(cell.stabilizer.kind).dim(q)
            out.append((cell.id, offset, width))
            offset += width
        return out

    def dim(self, p: int, q: int) -> int:
        if p < 0 or p > MAX_P or q < 0:
            return 0
        return sum(w for _, _, w in self.blocks(p, q))

    def basis_names(self, p: int, q: int) -> list[str]:
        names = []
        for cell in self.quotient.cells_of_dim(p):
            for n in table_for(cell.stabilizer.kind).basis_names(q):
                names.append(f"{n}<{cell.id}>")
        return names

    def d1(self, p: int, q: int) -> F2Matrix:
        """d_1: E_1^{p,q} -> E_1^{p+1,q}.

        Raises:
            ConfigurationError: If an incidence has no configured restriction.
        """
        key = (p, q)
        if key in self._d1:
            return self._d1[key]
        rows, cols = self.dim(p + 1, q), self.dim(p, q)
        dense = np.zeros((rows, cols), dtype=np.uint8)
        if rows and cols:
            row_at = {cid: off for cid, off, _ in self.blocks(p + 1, q)}
            col_at = {cid: off for cid, off, _ in self.blocks(p, q)}
            for inc in self.quotient.incidences:
                if inc.coface not in row_at or inc.face not in col_at:
                    continue
                m = self.config.incidence_map(self.quotient.group, inc.coface, inc.slot).graded.matrix(q)
                r, c = row_at[inc.coface], col_at[inc.face]
                dense[r : r + m.rows, c : c + m.cols] ^= m.to_dense()
        result = F2Matrix.from_dense(dense, cols=cols)
        self._d1[key] = result
        return result

    def check_d1_squared(self) -> None:
        """Raises ConfigurationError unless d_1 o d_1 = 0 on every row."""
        for q in range(self.q_max + 1):
            for p in range(MAX_P - 1):
                if not (self.d1(p + 1, q) @ self.d1(p, q)).is_zero():
                    raise ConfigurationError(
                        f"d1 o d1 != 0 at ({p}, {q}) on the {self.quotient.group.value} page"
                    )


def assemble_e1(quotient: QuotientComplex, config: RestrictionConfig, q_max: int) -> E1Page:
    page = E1Page(quotient, config, q_max)
    page.check_d1_squared()
    logger.debug(f"E1 page for {quotient.group.value} assembled up to q = {q_max}")
    return page


def _render(vector: Vector, names: list[str]) -> str:
    terms = [names[k] for k in np.flatnonzero(vector)]
    return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class E2Entry:
    """E_2^{p,q}: cocycle representatives of a basis and the coboundaries they complete."""

    dim: int
    representatives: tuple[Vector, ...]
    coboundaries: tuple[Vector, ...]
    names: tuple[str, ...]


@dataclass(frozen=True)
class E2Page:
    e1: E1Page
    entries: dict[tuple[int, int], E2Entry]

    @property
    def q_max(self) -> int:
        return self.e1.q_max

    def dim(self, p: int, q: int) -> int:
        entry = self.entries.get((p, q))
        return entry.dim if entry else 0

    def row(self, q: int) -> tuple[int, ...]:
        return tuple(self.dim(p, q) for p in range(MAX_P + 1))


def _entry(e1: E1Page, p: int, q: int) -> E2Entry:
    n = e1.dim(p, q)
    names = e1.basis_names(p, q)
    if n == 0:
        return E2Entry(0, (), (), ())
    outgoing = e1.d1(p, q) if e1.dim(p + 1, q) else F2Matrix.zeros(0, n)
    cocycles = kernel_basis(outgoing)
    if p > 0 and e1.dim(p - 1, q):
        incoming = e1.d1(p - 1, q).to_dense()
        coboundaries = [incoming[:, k] for k in range(incoming.shape[1]) if incoming[:, k].any()]
    else:
        coboundaries = []
    chosen = extend_basis(coboundaries, cocycles, n)
    reps = tuple(cocycles[k] for k in chosen)
    return E2Entry(len(reps), reps, tuple(coboundaries), tuple(_render(v, names) for v in reps))


def compute_e2(e1: E1Page) -> E2Page:
    """Rank-nullity on d_1 for every (p, q) with q <= q_max."""
    entries = {(p, q): _entry(e1, p, q) for q in range(e1.q_max + 1) for p in range(MAX_P + 1)}
    page = E2Page(e1, entries)
    for q in range(e1.q_max + 1):
        logger.debug(f"{e1.quotient.group.value} E2 row q={q}: {page.row(q)}")
    return page


def total_dims(e2: E2Page, n: int) -> int:
    """Sum of dim E_2^{p,q} over p + q = n.

    Raises:
        RangeError: If some row needed lies above q_max.
    """
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    if n > e2.q_max:
        raise RangeError(f"degree {n} needs rows above q_max = {e2.q_max}")
    return sum(e2.dim(p, n - p) for p in range(min(n, MAX_P) + 1))


@dataclass(frozen=True)
class ComparisonEntry:
    """Kernel and cokernel of (i*, j*) at one (p, q)."""

    p: int
    q: int
    source_dim: int
    target_dim: int
    kernel: int
    cokernel: int
    kernel_basis: tuple[str, ...]


@dataclass(frozen=True)
class Comparison:
    """(i*, j*): E(SL_2) + E(SL_2) -> E(Gamma_0), on E_1 and induced on E_2."""

    sl2: E2Page
    gamma0: E2Page
    config: RestrictionConfig

    def e1_matrix(self, p: int, q: int) -> F2Matrix:
        """Block matrix with columns [i-copy | j-copy] of the SL_2 page."""
        s1, g1 = self.sl2.e1, self.gamma0.e1
        source_dim = s1.dim(p, q)
        rows = g1.dim(p, q)
        dense = np.zeros((rows, 2 * source_dim), dtype=np.uint8)
        if rows and source_dim:
            row_at = {cid: off for cid, off, _ in g1.blocks(p, q)}
            col_at = {cid: off for cid, off, _ in s1.blocks(p, q)}
            for half, injection in enumerate(("i", "j")):
                for c in self.config.comparison.get(injection, ()):
                    if c.gamma0_cell not in row_at or c.sl2_cell not in col_at:
                        continue
                    m = self.config.map(c.map_name).graded.matrix(q)
                    r = row_at[c.gamma0_cell]
                    col = half * source_dim + col_at[c.sl2_cell]
                    dense[r : r + m.rows, col : col + m.cols] ^= m.to_dense()
        return F2Matrix.from_dense(dense, cols=2 * source_dim)

    def check_chain_map(self) -> None:
        """Raises ChainMapError unless the E_1 comparison commutes with d_1."""
        s1, g1 = self.sl2.e1, self.gamma0.e1
        for q in range(min(s1.q_max, g1.q_max) + 1):
            for p in range(MAX_P):
                d_source = s1.d1(p, q)
                doubled = F2Matrix.from_dense(
                    np.block(
                        [
                            [d_source.to_dense(), np.zeros(d_source.shape, dtype=np.uint8)],
                            [np.zeros(d_source.shape, dtype=np.uint8), d_source.to_dense()],
                        ]
                    ),
                    cols=2 * d_source.cols,
                )
                left = g1.d1(p, q) @ self.e1_matrix(p, q)
                right = self.e1_matrix(p + 1, q) @ doubled
                if left != right:
                    raise ChainMapError(f"comparison does not commute with d1 at ({p}, {q})")

    def entry(self, p: int, q: int) -> ComparisonEntry:
        """Kernel and cokernel of the map induced on E_2^{p,q}."""
        source, target = self.sl2.entries[(p, q)], self.gamma0.entries[(p, q)]
        width = self.sl2.e1.dim(p, q)
        length = self.gamma0.e1.dim(p, q)
        reps = [np.concatenate([v, np.zeros(width, dtype=np.uint8)]) for v in source.representatives]
        reps += [np.concatenate([np.zeros(width, dtype=np.uint8), v]) for v in source.representatives]
        names = [f"({n})^i" for n in source.names] + [f"({n})^j" for n in source.names]

        phi = self.e1_matrix(p, q)
        images = [phi.apply(v) for v in reps]
        base = span_rank(target.coboundaries, length)
        image_rank = span_rank([*target.coboundaries, *images], length) - base
        kernel_names = self._kernel_names(images, list(target.coboundaries), names, length)
        return ComparisonEntry(
            p=p,
            q=q,
            source_dim=2 * source.dim,
            target_dim=target.dim,
            kernel=2 * source.dim - image_rank,
            cokernel=target.dim - image_rank,
            kernel_basis=tuple(kernel_names),
        )

    @staticmethod
    def _kernel_names(images: list[Vector], coboundaries: list[Vector], names: list[str], length: int) -> list[str]:
        if not images:
            return []
        columns = [*images, *coboundaries]
        if length == 0:
            return list(names)
        stacked = F2Matrix.from_dense(np.column_stack(columns), cols=len(columns))
        projected = [v[: len(images)] for v in kernel_basis(stacked)]
        projected = [v for v in projected if v.any()]
        chosen = extend_basis([], projected, len(images))
        return [_render(projected[k], names) for k in chosen]

    @cached_property
    def table(self) -> dict[tuple[int, int], ComparisonEntry]:
        q_max = min(self.sl2.q_max, self.gamma0.q_max)
        return {(p, q): self.entry(p, q) for q in range(q_max + 1) for p in range(MAX_P + 1)}


def comparison(sl2: E2Page, gamma0: E2Page, config: RestrictionConfig) -> Comparison:
    """Build and audit (i*, j*).

    Raises:
        ChainMapError: If the configured correspondences do not intertwine d_1.
    """
    result = Comparison(sl2, gamma0, config)
    result.check_chain_map()
    return result
