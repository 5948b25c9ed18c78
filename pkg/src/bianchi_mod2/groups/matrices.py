"""2x2 matrices over Q(w) with group-element semantics."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..arithmetic import (
    OMEGA,
    ONE,
    ZERO,
    QuadElement,
    SubringTag,
    format_quad,
    in_subring,
    parse_quad,
)


class MatrixPreconditionError(Exception):
    """Matrix operation called outside its domain."""


@dataclass(frozen=True, slots=True)
class Mat2:
    """Row-major matrix [[a, b], [c, d]]."""

    a: QuadElement
    b: QuadElement
    c: QuadElement
    d: QuadElement

    @classmethod
    def of(
        cls,
        a: QuadElement | int | Fraction,
        b: QuadElement | int | Fraction,
        c: QuadElement | int | Fraction,
        d: QuadElement | int | Fraction,
    ) -> Mat2:
        return cls(QuadElement.of(a), QuadElement.of(b), QuadElement.of(c), QuadElement.of(d))

    def det(self) -> QuadElement:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: Mat2) -> Mat2:
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> Mat2:
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def entries(self) -> tuple[QuadElement, QuadElement, QuadElement, QuadElement]:
        return (self.a, self.b, self.c, self.d)

    def is_identity(self) -> bool:
        return self == IDENTITY

    def is_central(self) -> bool:
        """True for +-I."""
        return self == IDENTITY or self == -IDENTITY

    def __str__(self) -> str:
        return format_mat(self)


IDENTITY = Mat2(ONE, ZERO, ZERO, ONE)


def multiply(*factors: Mat2) -> Mat2:
    """Exact product of one or more matrices, left to right."""
    if not factors:
        return IDENTITY
    result = factors[0]
    for m in factors[1:]:
        result = result @ m
    return result


def inverse(m: Mat2) -> Mat2:
    """Inverse of a determinant-one matrix via the adjugate.

    Raises:
        MatrixPreconditionError: If det(m) != 1.
    """
    if m.det() != ONE:
        raise MatrixPreconditionError(f"inverse requires det = 1, got det = {m.det()}")
    return Mat2(m.d, -m.b, -m.c, m.a)


def power(m: Mat2, exponent: int) -> Mat2:
    """m**exponent for det-one m (negative exponents use the inverse)."""
    base = inverse(m) if exponent < 0 else m
    result = IDENTITY
    for _ in range(abs(exponent)):
        result = result @ base
    return result


def has_integral_entries(m: Mat2) -> bool:
    return all(in_subring(x, SubringTag.ZOMEGA) for x in m.entries())


def in_gamma0(m: Mat2) -> bool:
    """Membership in Gamma_0(w): lower-left entry in the ideal (w).

    Two predicates are evaluated, norm parity and c/w in Z[w]; they must
    agree.

    Raises:
        MatrixPreconditionError: If m is not in SL_2(Z[w]).
    """
    if not has_integral_entries(m) or m.det() != ONE:
        raise MatrixPreconditionError(f"{m} is not in SL_2(Z[w])")
    by_norm = m.c.norm() % 2 == 0
    by_quotient = in_subring(m.c / OMEGA, SubringTag.ZOMEGA)
    if by_norm != by_quotient:
        raise AssertionError(f"Gamma_0 predicates disagree on {m}")
    return by_norm


# j(m) = P m P^-1 with P = [[0, 1], [w, 0]]
CONJUGATOR_P = Mat2(ZERO, ONE, OMEGA, ZERO)


def inject_second_factor(m: Mat2) -> Mat2:
    """The injection j: [[a, b], [c, d]] -> [[d, c/w], [b*w, a]].

    Raises:
        MatrixPreconditionError: If m is not in Gamma_0(w).
    """
    if not in_gamma0(m):
        raise MatrixPreconditionError(f"j is only defined on Gamma_0(w); got {m}")
    return Mat2(m.d, m.c / OMEGA, m.b * OMEGA, m.a)


def conjugate_by_p(m: Mat2) -> Mat2:
    """P m P^-1 computed with the field inverse of P (det P = -w)."""
    p = CONJUGATOR_P
    det = p.det()
    p_inv = Mat2(p.d / det, -p.b / det, -p.c / det, p.a / det)
    return p @ m @ p_inv


def verify_conjugacy(g: Mat2, target: Mat2, conjugator: Mat2) -> bool:
    """True iff conjugator * g * conjugator^-1 == target exactly."""
    return conjugator @ g @ inverse(conjugator) == target


_MATRIX = re.compile(r"^\[\[(?P<a>[^,\]]+),(?P<b>[^,\]]+)\],\[(?P<c>[^,\]]+),(?P<d>[^,\]]+)\]\]$")


def parse_mat(text: str) -> Mat2:
    """Parse "[[a,b],[c,d]]" with entries in the "a+b*w" syntax."""
    match = _MATRIX.match(text.replace(" ", ""))
    if match is None:
        raise MatrixPreconditionError(f"cannot parse matrix: {text!r}")
    return Mat2(*(parse_quad(match.group(k)) for k in "abcd"))


def format_mat(m: Mat2) -> str:
    a, b, c, d = (format_quad(x) for x in m.entries())
    return f"[[{a},{b}],[{c},{d}]]"


def serre_injection(m: Mat2) -> Mat2:
    """Serre's form of the second injection: [[a, w*b], [c/w, d]].

    Agrees with j up to conjugation by the antidiagonal swap, which has
    determinant -1.
    """
    if not in_gamma0(m):
        raise MatrixPreconditionError(f"j is only defined on Gamma_0(w); got {m}")
    return Mat2(m.a, m.b * OMEGA, m.c / OMEGA, m.d)


GEN_A = Mat2.of(1, OMEGA, OMEGA, -1)
GEN_B = Mat2(-ONE - OMEGA, -OMEGA, QuadElement.of(2), ONE + OMEGA)
GEN_C = Mat2.of(-1, -1, 2, 1)
GEN_SMALL_B = Mat2.of(1, -1, 1, 0)
GEN_SMALL_C = Mat2.of(0, -1, 1, 0)
GEN_H = Mat2.of(1, 0, 1, 1)
GEN_T = Mat2.of(1, 1, 0, 1)
GEN_U = Mat2.of(1, 0, -OMEGA, 1)

NAMED_GENERATORS: dict[str, Mat2] = {
    "A": GEN_A,
    "B": GEN_B,
    "C": GEN_C,
    "b": GEN_SMALL_B,
    "c": GEN_SMALL_C,
    "h": GEN_H,
    "T": GEN_T,
    "U": GEN_U,
}
