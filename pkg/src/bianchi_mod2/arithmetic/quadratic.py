"""Exact arithmetic in Q(sqrt(-2)).

Elements are a + b*w with w^2 = -2 and rational coordinates. The dyadic
norm-valuation, subring membership and the uniformizer predicate live here
too, since every one of them is a statement about the two coordinates.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


class ArithmeticDomainError(Exception):
    """Operation undefined for the given element."""


class SubringTag(enum.Enum):
    """Subrings of Q(w) the verifier distinguishes."""

    ZOMEGA = "ZOmega"  # Z[w]
    ZOMEGA_HALF = "ZOmegaHalf"  # Z[w][1/2]
    DYADIC_LOCAL = "DyadicLocal"  # Z_(2)[w]


class InfiniteValuation(enum.Enum):
    """Valuation of zero. Never compares or adds like an integer."""

    INFINITY = "+inf"


INFINITY = InfiniteValuation.INFINITY


def _as_fraction(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"Expected int or Fraction, got {type(value).__name__}")


def _coerce(value: object) -> QuadElement | None:
    """value as a field element, None for operands outside Q(w)."""
    if isinstance(value, QuadElement):
        return value
    if isinstance(value, Fraction) or (isinstance(value, int) and not isinstance(value, bool)):
        return QuadElement(_as_fraction(value))
    return None


@dataclass(frozen=True, slots=True)
class QuadElement:
    """An element a + b*w of Q(w), w = sqrt(-2).

    Compares equal to an int or Fraction with the same value. Other operand
    types get NotImplemented, so Python raises its own TypeError.

    Attributes:
        a: Rational coefficient of 1.
        b: Rational coefficient of w.
    """

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        # Fraction already keeps lowest terms with a positive denominator.
        object.__setattr__(self, "a", _as_fraction(self.a))
        object.__setattr__(self, "b", _as_fraction(self.b))

    @classmethod
    def of(cls, value: QuadElement | Rational) -> QuadElement:
        """Coerce an int or Fraction into the field."""
        if isinstance(value, QuadElement):
            return value
        return cls(_as_fraction(value))

    def __eq__(self, other: object) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        # Rational elements hash like the int or Fraction they equal.
        return hash(self.a) if self.b == 0 else hash((self.a, self.b))

    def __add__(self, other: object) -> QuadElement:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other: object) -> QuadElement:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a - o.a, self.b - o.b)

    def __rsub__(self, other: object) -> QuadElement:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> QuadElement:
        return QuadElement(-self.a, -self.b)

    def __mul__(self, other: object) -> QuadElement:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        # (a + bw)(c + dw) = ac - 2bd + (ad + bc)w
        return QuadElement(
            self.a * o.a - 2 * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> QuadElement:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(w)")
        num = self * o.conjugate()
        return QuadElement(num.a / n, num.b / n)

    def __rtruediv__(self, other: object) -> QuadElement:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, exponent: object) -> QuadElement:
        if not isinstance(exponent, int) or isinstance(exponent, bool):
            return NotImplemented
        if exponent < 0:
            return (QuadElement(Fraction(1)) / self) ** (-exponent)
        result = QuadElement(Fraction(1))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def conjugate(self) -> QuadElement:
        """Galois conjugate a - b*w."""
        return QuadElement(self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm x * conj(x) = a^2 + 2b^2."""
        return self.a * self.a + 2 * self.b * self.b

    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self) -> str:
        return format_quad(self)


ZERO = QuadElement(Fraction(0))
ONE = QuadElement(Fraction(1))
OMEGA = QuadElement(Fraction(0), Fraction(1))


def norm(x: QuadElement) -> Fraction:
    """Return the number-theoretic norm a^2 + 2b^2 of x."""
    return x.norm()


def two_adic_valuation(r: Rational) -> int:
    """Exponent of 2 in a nonzero rational.

    Raises:
        ArithmeticDomainError: If r is zero.
    """
    q = _as_fraction(r)
    if q == 0:
        raise ArithmeticDomainError("2-adic valuation of 0 is infinite")
    num, den = abs(q.numerator), q.denominator
    return ((num & -num).bit_length() - 1) - ((den & -den).bit_length() - 1)


def valuation(x: QuadElement) -> int | InfiniteValuation:
    """Dyadic norm-valuation, with the sentinel for zero."""
    if not x:
        return INFINITY
    return two_adic_valuation(x.norm())


def dyadic_valuation(x: QuadElement) -> int:
    """Return v_2(N(x)) for nonzero x.

    Raises:
        ArithmeticDomainError: If x is zero; use valuation() to get the
            infinite sentinel instead.
    """
    if not x:
        raise ArithmeticDomainError("dyadic valuation of 0 is +inf")
    return two_adic_valuation(x.norm())


def min_valuation(
    u: int | InfiniteValuation, v: int | InfiniteValuation
) -> int | InfiniteValuation:
    """Minimum in the extended order where INFINITY dominates."""
    if u is INFINITY:
        return v
    if v is INFINITY:
        return u
    assert isinstance(u, int) and isinstance(v, int)
    return min(u, v)


def _odd_denominator(q: Fraction) -> bool:
    return q.denominator % 2 == 1


def _power_of_two_denominator(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


def in_subring(x: QuadElement, tag: SubringTag) -> bool:
    """Membership of x in the tagged subring."""
    if tag is SubringTag.ZOMEGA:
        return x.a.denominator == 1 and x.b.denominator == 1
    if tag is SubringTag.ZOMEGA_HALF:
        return _power_of_two_denominator(x.a) and _power_of_two_denominator(x.b)
    if tag is SubringTag.DYADIC_LOCAL:
        return _odd_denominator(x.a) and _odd_denominator(x.b)
    raise ValueError(f"Unknown subring tag: {tag}")


def is_uniformizer(x: QuadElement) -> bool:
    """True iff x generates the maximal ideal of Z_(2)[w].

    The valuation is integer-valued on nonzero local elements, so the least
    positive value is 1.

    Raises:
        ArithmeticDomainError: If x is zero or not in Z_(2)[w].
    """
    if not x:
        raise ArithmeticDomainError("0 is not a uniformizer candidate")
    if not in_subring(x, SubringTag.DYADIC_LOCAL):
        raise ArithmeticDomainError(f"{x} does not lie in Z_(2)[w]")
    return dyadic_valuation(x) == 1


_RATIONAL = r"\d+(?:/\d+)?"
_TERM = re.compile(
    rf"(?P<sign>[+-]?)\s*(?:(?P<coef>{_RATIONAL})\s*\*?\s*)?(?P<w>w)?"
)


def parse_quad(text: str) -> QuadElement:
    """Parse the textual form "a+b*w", e.g. "1/2-1/2*w", "-w", "3".

    Raises:
        ArithmeticDomainError: If the text is not a valid element.
    """
    source = text.replace(" ", "")
    if not source:
        raise ArithmeticDomainError("empty element text")
    a = Fraction(0)
    b = Fraction(0)
    pos = 0
    while pos < len(source):
        match = _TERM.match(source, pos)
        if match is None or match.end() == pos:
            raise ArithmeticDomainError(f"cannot parse element: {text!r}")
        if match.group("coef") is None and match.group("w") is None:
            raise ArithmeticDomainError(f"cannot parse element: {text!r}")
        if pos > 0 and not match.group("sign"):
            raise ArithmeticDomainError(f"missing operator in element: {text!r}")
        coef = Fraction(match.group("coef")) if match.group("coef") else Fraction(1)
        if match.group("sign") == "-":
            coef = -coef
        if match.group("w"):
            b += coef
        else:
            a += coef
        pos = match.end()
    return QuadElement(a, b)


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_quad(x: QuadElement) -> str:
    """Canonical "a+b*w" text; inverse of parse_quad."""
    if not x.b:
        return _format_rational(x.a)
    coef = abs(x.b)
    w_part = "w" if coef == 1 else f"{_format_rational(coef)}*w"
    if not x.a:
        return f"-{w_part}" if x.b < 0 else w_part
    sign = "-" if x.b < 0 else "+"
    return f"{_format_rational(x.a)}{sign}{w_part}"
