"""Finite subgroup closure, element orders and isomorphism-type checks.

Subgroups are enumerated breadth-first from the identity with an exact
equality hash set. Every element keeps a shortest positive word in the
generators, which gives mod-2 abelianized coordinates for free.
"""

from __future__ import annotations

import enum
import logging
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass, field

from ..arithmetic import ONE
from .matrices import (
    IDENTITY,
    Mat2,
    MatrixPreconditionError,
    conjugate_by_p,
    has_integral_entries,
    in_gamma0,
    power,
)

logger = logging.getLogger(__name__)

ELEMENT_CAP = 10_000


class ExceedsCap(enum.Enum):
    """Sentinel for an element whose order is larger than the search cap."""

    EXCEEDS_CAP = "exceeds cap"


EXCEEDS_CAP = ExceedsCap.EXCEEDS_CAP


class ClosureCapError(Exception):
    """Subgroup enumeration passed the element cap."""


def element_order(m: Mat2, cap: int = ELEMENT_CAP) -> int | ExceedsCap:
    """Least k <= cap with m^k = I, else EXCEEDS_CAP.

    Raises:
        MatrixPreconditionError: If det(m) != 1 or cap < 1.
    """
    if m.det() != ONE:
        raise MatrixPreconditionError(f"element_order requires det = 1, got {m}")
    if cap < 1:
        raise MatrixPreconditionError(f"cap must be >= 1, got {cap}")
    current = m
    for k in range(1, cap + 1):
        if current.is_identity():
            return k
        current = current @ m
    return EXCEEDS_CAP


@dataclass(frozen=True)
class Subgroup:
    """A finite subgroup with a shortest word for every element.

    Attributes:
        generators: Ordered generators.
        names: Generator names, parallel to ``generators``.
        words: Element -> tuple of generator indices multiplying to it.
    """

    generators: tuple[Mat2, ...]
    names: tuple[str, ...]
    words: dict[Mat2, tuple[int, ...]] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.words)

    def __contains__(self, element: object) -> bool:
        return element in self.words

    def elements(self) -> list[Mat2]:
        """Elements in discovery order (deterministic)."""
        return list(self.words)

    def parity_coordinates(self, element: Mat2) -> tuple[int, ...]:
        """Exponent of each generator mod 2 in the element's word.

        Only meaningful when these parities define a homomorphism to F_2,
        which holds for the cyclic and quaternion stabilizers used here.

        Raises:
            MatrixPreconditionError: If the element is not in the subgroup.
        """
        if element not in self.words:
            raise MatrixPreconditionError(f"{element} is not in <{', '.join(self.names)}>")
        counts = [0] * len(self.generators)
        for index in self.words[element]:
            counts[index] ^= 1
        return tuple(counts)


def generate_subgroup(
    generators: Sequence[Mat2],
    names: Sequence[str] | None = None,
    cap: int = ELEMENT_CAP,
) -> Subgroup:
    """Breadth-first closure of the generated subgroup.

    Raises:
        ClosureCapError: If more than ``cap`` elements are found.
    """
    gens = tuple(generators)
    labels = tuple(names) if names is not None else tuple(f"g{k}" for k in range(len(gens)))
    if len(labels) != len(gens):
        raise ValueError("names and generators differ in length")

    words: dict[Mat2, tuple[int, ...]] = {IDENTITY: ()}
    queue: deque[Mat2] = deque([IDENTITY])
    while queue:
        current = queue.popleft()
        for index, g in enumerate(gens):
            product = current @ g
            if product not in words:
                words[product] = words[current] + (index,)
                if len(words) > cap:
                    raise ClosureCapError(
                        f"<{', '.join(labels)}> has more than {cap} elements"
                    )
                queue.append(product)
    logger.debug(f"Closure <{', '.join(labels)}> has order {len(words)}")
    return Subgroup(generators=gens, names=labels, words=words)


def is_quaternion_pair(x: Mat2, y: Mat2) -> bool:
    """x^4 = 1, x^2 = y^2 != 1, y x y^-1 = x^-1 and <x, y> of order 8."""
    x2 = x @ x
    if x2.is_identity() or not (x2 @ x2).is_identity():
        return False
    if x2 != y @ y:
        return False
    if y @ x @ power(y, -1) != power(x, -1):
        return False
    return generate_subgroup([x, y]).order == 8


def find_binary_tetrahedral_pair(group: Subgroup) -> tuple[Mat2, Mat2] | None:
    """Search the group for s, t with s^3 = t^3 = (st)^2 generating it.

    Elements are tried in discovery order so the answer is deterministic.
    Returns None if the group is not binary tetrahedral.
    """
    if group.order != 24:
        return None
    elements = group.elements()
    cubes = {g: g @ g @ g for g in elements}
    for s in elements:
        if cubes[s].is_identity():
            continue
        for t in elements:
            st = s @ t
            if cubes[t] != cubes[s] or st @ st != cubes[s]:
                continue
            if generate_subgroup([s, t]).order == 24:
                return s, t
    return None


def is_binary_tetrahedral(generators: Sequence[Mat2]) -> bool:
    group = generate_subgroup(generators)
    return find_binary_tetrahedral_pair(group) is not None


def p_normalizes_gamma0(generators: Sequence[Mat2]) -> bool:
    """True iff conjugation by P keeps every generator inside Gamma_0(w)."""
    for g in generators:
        image = conjugate_by_p(g)
        if not has_integral_entries(image) or image.det() != ONE:
            return False
        if not in_gamma0(image):
            return False
    return True
