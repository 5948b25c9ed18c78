"""Group presentations read off the fundamental domain, and their abelianization."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from ..arithmetic import INFINITY, InfiniteValuation
from ..groups import Mat2, Word, evaluate_word, format_word, parse_word
from ..groups.words import abelianized_exponents
from ..linalg import IntMatrix, elementary_divisors, format_abelian_group, smith_normal_form


class PreconditionError(Exception):
    """Input violates an operation's precondition."""


@dataclass(frozen=True)
class Presentation:
    """Generators and relator words (each relator stands for "= 1")."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    @classmethod
    def parse(cls, generators: Sequence[str], relators: Sequence[str]) -> Presentation:
        return cls(tuple(generators), tuple(parse_word(r) for r in relators))

    def relation_matrix(self) -> IntMatrix:
        """Exponent sums: one row per generator, one column per relator."""
        columns = [abelianized_exponents(r, self.generators) for r in self.relators]
        rows = [[col[g] for col in columns] for g in range(len(self.generators))]
        return IntMatrix.from_rows(rows, cols=len(self.relators))


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank + Z/d1 + Z/d2 + ... with d1 | d2 | ..."""

    free_rank: int
    torsion: tuple[int, ...]

    def divisors(self) -> list[int | InfiniteValuation]:
        """Invariant factors, with INFINITY standing for each free factor."""
        return [*([INFINITY] * self.free_rank), *self.torsion]

    def elementary_divisors(self) -> list[int]:
        return elementary_divisors(self.torsion)

    @property
    def f2_corank(self) -> int:
        """dim Hom(G, F_2)."""
        return self.free_rank + sum(1 for d in self.torsion if d % 2 == 0)

    def __str__(self) -> str:
        return format_abelian_group(self.free_rank, self.torsion)


def abelianize(presentation: Presentation) -> AbelianGroup:
    """Smith normal form of the abelianized relation matrix."""
    if not presentation.relators:
        return AbelianGroup(len(presentation.generators), ())
    smith = smith_normal_form(presentation.relation_matrix())
    return AbelianGroup(smith.free_rank, smith.torsion)


@dataclass(frozen=True)
class RelatorCheck:
    relator: str
    holds: bool


def check_relators(presentation: Presentation, values: Mapping[str, Mat2]) -> list[RelatorCheck]:
    """Evaluate every relator on matrices; each should be the identity."""
    return [
        RelatorCheck(format_word(r), evaluate_word(r, values).is_identity())
        for r in presentation.relators
    ]
