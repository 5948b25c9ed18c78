"""Points of hyperbolic 3-space and the Poincare action on them.

A point is stored as (z, zeta^2) so every coordinate stays rational.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from ..arithmetic import ArithmeticDomainError, QuadElement, format_quad, parse_quad
from ..groups import Mat2


@dataclass(frozen=True, slots=True)
class HPoint:
    """(z, zeta) with z in Q(w) and zeta > 0, kept as zeta^2."""

    z: QuadElement
    zeta_sq: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "zeta_sq", Fraction(self.zeta_sq))
        if self.zeta_sq <= 0:
            raise ArithmeticDomainError(f"zeta^2 must be positive, got {self.zeta_sq}")

    def __str__(self) -> str:
        return f"({format_quad(self.z)}, {self.zeta_sq})"


def act(g: Mat2, p: HPoint) -> HPoint:
    """Poincare action of g on p.

    z' = (conj(cz + d)(az + b) + zeta^2 conj(c) a) / D and
    zeta'^2 = N(det g) zeta^2 / D^2 with D = N(cz + d) + zeta^2 N(c).
    For det g = 1 this is the usual left action; other determinants are
    accepted so that P can be applied in audits.
    """
    a, b, c, d = g.entries()
    denominator_term = c * p.z + d
    denominator = denominator_term.norm() + p.zeta_sq * c.norm()
    numerator = denominator_term.conjugate() * (a * p.z + b) + c.conjugate() * a * p.zeta_sq
    z = numerator / QuadElement.of(denominator)
    zeta_sq = g.det().norm() * p.zeta_sq / (denominator * denominator)
    return HPoint(z, zeta_sq)


def fixes_point(g: Mat2, p: HPoint) -> bool:
    return act(g, p) == p


class EdgeAction(enum.Enum):
    """How an element acts on an edge given by its endpoints."""

    FIXES = "fixes"
    SWAPS = "swaps"
    NONE = "none"


def edge_action(g: Mat2, tail: HPoint, head: HPoint) -> EdgeAction:
    tail_image, head_image = act(g, tail), act(g, head)
    if tail_image == tail and head_image == head:
        return EdgeAction.FIXES
    if tail_image == head and head_image == tail:
        return EdgeAction.SWAPS
    return EdgeAction.NONE


def maps_point_set(g: Mat2, source: Iterable[HPoint], target: Iterable[HPoint]) -> bool:
    """True iff g carries the source set onto the target set."""
    return {act(g, p) for p in source} == set(target)


def _vertex(z: str, zeta_sq: str) -> HPoint:
    return HPoint(parse_quad(z), Fraction(zeta_sq))


VERTICES: dict[str, HPoint] = {
    "v1": _vertex("-1/2-1/2*w", "1/4"),
    "v1'": _vertex("1/2-1/2*w", "1/4"),
    "v1''": _vertex("1/2+1/2*w", "1/4"),
    "v1'''": _vertex("-1/2+1/2*w", "1/4"),
    "v2": _vertex("-1/2-1/4*w", "1/8"),
    "v2'": _vertex("-1/2*w", "1/2"),
    "v2''": _vertex("1/2*w", "1/2"),
    "v2'''": _vertex("-1/2+1/4*w", "1/8"),
}


def vertex_name(p: HPoint) -> str | None:
    """Name of the tabulated vertex at p, if any."""
    for name, vertex in VERTICES.items():
        if vertex == p:
            return name
    return None


def vertex_table() -> list[dict[str, str]]:
    """Rows (name, z, zeta^2) for the report."""
    return [
        {"name": name, "z": format_quad(p.z), "zeta_sq": str(p.zeta_sq)}
        for name, p in VERTICES.items()
    ]
