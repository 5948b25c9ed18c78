"""Mod-2 cohomology of the finite stabilizers as free modules over a periodicity class.

Each table is F_2[e](g_1, ..., g_k): a polynomial ring on the periodicity
class e, free on the listed module generators. Only dimensions, names and
restriction images are represented; products of module generators are not.
"""

from __future__ import annotations

import re
from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np

from ..complexes import StabilizerKind
from ..config import ConfigurationError
from ..linalg import F2Matrix

# (periodicity exponent, module generator)
Monomial = tuple[int, str]


@dataclass(frozen=True)
class GradedF2Space:
    """F_2[periodicity](generators) with a named basis in every degree.

    Attributes:
        name: Table name, the stabilizer kind.
        generators: Module generators as (name, degree), "1" first.
        periodicity: (name, degree) of the periodicity class.
    """

    name: str
    generators: tuple[tuple[str, int], ...]
    periodicity: tuple[str, int]

    @property
    def period(self) -> int:
        return self.periodicity[1]

    def degree_of(self, generator: str) -> int:
        for name, degree in self.generators:
            if name == generator:
                return degree
        raise ConfigurationError(f"{generator!r} is not a module generator of {self.name}")

    def basis(self, q: int) -> list[Monomial]:
        """Monomials e^m * g of degree q, in generator order."""
        if q < 0:
            return []
        return [
            ((q - degree) // self.period, name)
            for name, degree in self.generators
            if degree <= q and (q - degree) % self.period == 0
        ]

    def dim(self, q: int) -> int:
        return len(self.basis(q))

    def index(self, q: int) -> dict[Monomial, int]:
        return {m: k for k, m in enumerate(self.basis(q))}

    def monomial_name(self, monomial: Monomial) -> str:
        power, generator = monomial
        e = self.periodicity[0]
        prefix = "" if power == 0 else (e if power == 1 else f"{e}^{power}")
        if generator == "1":
            return prefix or "1"
        return f"{prefix}*{generator}" if prefix else generator

    def basis_names(self, q: int) -> list[str]:
        return [self.monomial_name(m) for m in self.basis(q)]

    def monomial_degree(self, monomial: Monomial) -> int:
        return monomial[0] * self.period + self.degree_of(monomial[1])


_TABLES: dict[StabilizerKind, GradedF2Space] = {
    StabilizerKind.CENTER_ONLY: GradedF2Space("CenterOnly", (("1", 0),), ("t1", 1)),
    StabilizerKind.Z4: GradedF2Space("Z4", (("1", 0), ("b1", 1)), ("e2", 2)),
    StabilizerKind.Z6: GradedF2Space("Z6", (("1", 0),), ("t1", 1)),
    StabilizerKind.Q8: GradedF2Space(
        "Q8",
        (("1", 0), ("x1", 1), ("y1", 1), ("x2", 2), ("y2", 2), ("x3", 3)),
        ("e4", 4),
    ),
    StabilizerKind.TE24: GradedF2Space("Te24", (("1", 0), ("b3", 3)), ("e4", 4)),
}


def table_for(kind: StabilizerKind) -> GradedF2Space:
    return _TABLES[kind]


def degree_one_classes(kind: StabilizerKind) -> list[str]:
    """Degree-1 basis names, parallel to the stabilizer label's generators.

    Empty for Te24, whose H^1 vanishes.
    """
    return table_for(kind).basis_names(1)


_FACTOR = re.compile(r"^([A-Za-z]\w*?)(?:\^(\d+))?$")


def parse_expression(space: GradedF2Space, text: str) -> list[Monomial]:
    """Parse "0", "b1", "e2^2", "x1 + y1", "e4*x1" into monomials of ``space``.

    Repeated monomials cancel in pairs.

    Raises:
        ConfigurationError: On unknown class names or a product of two
            module generators.
    """
    cleaned = str(text).replace(" ", "")
    if cleaned in ("", "0"):
        return []
    counts: dict[Monomial, int] = {}
    names = {name for name, _ in space.generators}
    for term in cleaned.split("+"):
        power, generator = 0, "1"
        for factor in term.split("*"):
            if factor == "1":
                continue
            match = _FACTOR.match(factor)
            if match is None:
                raise ConfigurationError(f"cannot parse {factor!r} in {text!r}")
            base, exponent = match.group(1), int(match.group(2) or 1)
            if base == space.periodicity[0]:
                power += exponent
            elif base in names and base != "1":
                if generator != "1" or exponent != 1:
                    raise ConfigurationError(f"{term!r} is not a monomial of {space.name}")
                generator = base
            else:
                raise ConfigurationError(f"unknown class {base!r} for {space.name}")
        counts[(power, generator)] = counts.get((power, generator), 0) + 1
    return sorted(m for m, n in counts.items() if n % 2)


@dataclass(frozen=True)
class GradedF2Map:
    """A map of graded spaces fixed by generator images, extended multiplicatively in the periodicity class.

    Attributes:
        source: Domain table.
        target: Codomain table.
        images: Module generator or periodicity name -> target monomials.
    """

    source: GradedF2Space
    target: GradedF2Space
    images: Mapping[str, tuple[Monomial, ...]]
    _cache: dict[int, F2Matrix] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        required = [name for name, _ in self.source.generators if name != "1"]
        required.append(self.source.periodicity[0])
        missing = [name for name in required if name not in self.images]
        if missing:
            raise ConfigurationError(
                f"{self.source.name} -> {self.target.name}: no image for {', '.join(missing)}"
            )
        extra = sorted(set(self.images) - set(required))
        if extra:
            raise ConfigurationError(
                f"{self.source.name} -> {self.target.name}: unknown classes {', '.join(extra)}"
            )
        for name, degree in [*self.source.generators[1:], self.source.periodicity]:
            for monomial in self.images[name]:
                if self.target.monomial_degree(monomial) != degree:
                    raise ConfigurationError(
                        f"{self.source.name} -> {self.target.name}: image of {name} "
                        f"is not homogeneous of degree {degree}"
                    )
        e_image = self.images[self.source.periodicity[0]]
        if len(e_image) > 1 or any(g != "1" for _, g in e_image):
            raise ConfigurationError(
                f"{self.source.name} -> {self.target.name}: the periodicity class must map "
                "to 0 or a power of the target periodicity class"
            )

    def image_of(self, monomial: Monomial) -> list[Monomial]:
        power, generator = monomial
        e_image = self.images[self.source.periodicity[0]]
        if power and not e_image:
            return []
        shift = power * e_image[0][0] if power else 0
        base = [(0, "1")] if generator == "1" else list(self.images[generator])
        return [(p + shift, g) for p, g in base]

    def matrix(self, q: int) -> F2Matrix:
        """Degree-q matrix, rows indexed by the target basis."""
        if q in self._cache:
            return self._cache[q]
        rows = self.target.index(q)
        cols = self.source.basis(q)
        dense = np.zeros((len(rows), len(cols)), dtype=np.uint8)
        for j, monomial in enumerate(cols):
            for image in self.image_of(monomial):
                dense[rows[image], j] ^= 1
        result = F2Matrix.from_dense(dense, cols=len(cols))
        self._cache[q] = result
        return result

    def commutes_with_periodicity(self, q_max: int) -> bool:
        """map(e * x) == map(e) * map(x) as matrices for degrees up to q_max."""
        e_image = self.images[self.source.periodicity[0]]
        k = e_image[0][0] if e_image else None
        period = self.source.period
        for q in range(q_max + 1):
            lifted = self.matrix(q + period) @ multiplication_matrix(self.source, 1, q)
            if k is None:
                expected = F2Matrix.zeros(self.target.dim(q + period), self.source.dim(q))
            else:
                expected = multiplication_matrix(self.target, k, q) @ self.matrix(q)
            if lifted != expected:
                return False
        return True


def multiplication_matrix(space: GradedF2Space, power: int, q: int) -> F2Matrix:
    """Multiplication by periodicity^power from degree q to q + power * period."""
    source = space.basis(q)
    rows = space.index(q + power * space.period)
    dense = np.zeros((len(rows), len(source)), dtype=np.uint8)
    for j, (p, g) in enumerate(source):
        dense[rows[(p + power, g)], j] = 1
    return F2Matrix.from_dense(dense, cols=len(source))


def restriction_map(
    source: StabilizerKind,
    target: StabilizerKind,
    assignment: Mapping[str, str],
) -> GradedF2Map:
    """Build a map from textual images such as {"x1": "b1", "e4": "e2^2"}.

    Raises:
        ConfigurationError: If the assignment is incomplete, names unknown
            classes or is not homogeneous.
    """
    source_space, target_space = table_for(source), table_for(target)
    images = {name: tuple(parse_expression(target_space, text)) for name, text in assignment.items()}
    return GradedF2Map(source_space, target_space, images)


def identity_map(kind: StabilizerKind) -> GradedF2Map:
    space = table_for(kind)
    images = {name: ((0, name),) for name, _ in space.generators if name != "1"}
    images[space.periodicity[0]] = ((1, "1"),)
    return GradedF2Map(space, space, images)
