"""Tests for exact arithmetic in Q(sqrt(-2)) and the dyadic valuation."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bianchi_mod2.arithmetic import (
    INFINITY,
    OMEGA,
    ONE,
    ZERO,
    ArithmeticDomainError,
    QuadElement,
    SubringTag,
    audit_fixed_values,
    audit_valuation_axioms,
    dyadic_valuation,
    format_quad,
    in_subring,
    is_uniformizer,
    min_valuation,
    parse_quad,
    two_adic_valuation,
    valuation,
)

dyadic_rationals = st.builds(
    lambda n, e: Fraction(n, 2**e),
    st.integers(min_value=-64, max_value=64),
    st.integers(min_value=0, max_value=8),
)
elements = st.builds(QuadElement, dyadic_rationals, dyadic_rationals)
nonzero_elements = elements.filter(bool)


class TestFieldOperations:
    """Tests for QuadElement arithmetic."""

    def test_omega_squared_is_minus_two(self) -> None:
        """w^2 = -2."""
        assert OMEGA * OMEGA == QuadElement.of(-2)

    def test_norm_and_conjugate(self) -> None:
        x = QuadElement(Fraction(1), Fraction(1))
        assert x.norm() == 3
        assert x * x.conjugate() == QuadElement.of(3)

    def test_division_inverts_multiplication(self) -> None:
        x = parse_quad("1+w")
        y = parse_quad("3-2*w")
        assert (x * y) / y == x

    def test_division_by_zero_raises(self) -> None:
        with pytest.raises(ZeroDivisionError):
            ONE / ZERO

    def test_negative_power(self) -> None:
        assert OMEGA**-2 == QuadElement(Fraction(-1, 2))

    def test_rejects_floats(self) -> None:
        with pytest.raises(TypeError):
            QuadElement(0.5)  # type: ignore[arg-type]

    def test_equals_rationals(self) -> None:
        assert QuadElement.of(1) == 1
        assert 1 == ONE
        assert QuadElement(Fraction(1, 2)) == Fraction(1, 2)
        assert OMEGA != 0
        assert hash(QuadElement.of(3)) == hash(3)
        assert {ONE: "unit"}[1] == "unit"

    def test_foreign_operands_are_not_implemented(self) -> None:
        assert ONE.__add__("1") is NotImplemented
        assert ONE.__mul__(0.5) is NotImplemented
        assert ONE.__eq__(None) is NotImplemented
        assert (ONE == "1") is False
        with pytest.raises(TypeError):
            ONE + 0.5  # type: ignore[operator]
        with pytest.raises(TypeError):
            "w" * OMEGA  # type: ignore[operator]
        with pytest.raises(TypeError):
            OMEGA ** 0.5  # type: ignore[operator]

    def test_mixed_arithmetic(self) -> None:
        assert 1 + OMEGA == QuadElement(Fraction(1), Fraction(1))
        assert 2 - OMEGA == QuadElement(Fraction(2), Fraction(-1))
        assert Fraction(1, 2) * OMEGA == QuadElement(Fraction(0), Fraction(1, 2))
        assert 1 / OMEGA == QuadElement(Fraction(0), Fraction(-1, 2))

    @given(elements, elements)
    def test_norm_is_multiplicative(self, x: QuadElement, y: QuadElement) -> None:
        """N(xy) = N(x) N(y)."""
        assert (x * y).norm() == x.norm() * y.norm()


class TestValuation:
    """Tests for the dyadic norm-valuation."""

    def test_fixed_values(self) -> None:
        """v(w) = 1 and v(2) = 2."""
        assert dyadic_valuation(OMEGA) == 1
        assert dyadic_valuation(QuadElement.of(2)) == 2
        assert dyadic_valuation(parse_quad("1+w")) == 0
        assert dyadic_valuation(QuadElement(Fraction(1, 2))) == -2

    def test_zero_is_infinite(self) -> None:
        assert valuation(ZERO) is INFINITY
        with pytest.raises(ArithmeticDomainError, match="inf"):
            dyadic_valuation(ZERO)

    def test_two_adic_valuation_of_rationals(self) -> None:
        assert two_adic_valuation(12) == 2
        assert two_adic_valuation(Fraction(3, 8)) == -3
        with pytest.raises(ArithmeticDomainError):
            two_adic_valuation(0)

    def test_min_valuation_with_infinity(self) -> None:
        assert min_valuation(INFINITY, 3) == 3
        assert min_valuation(2, INFINITY) == 2
        assert min_valuation(INFINITY, INFINITY) is INFINITY
        assert min_valuation(-1, 4) == -1

    @given(nonzero_elements, nonzero_elements)
    def test_multiplicative(self, x: QuadElement, y: QuadElement) -> None:
        """v(xy) = v(x) + v(y)."""
        assert dyadic_valuation(x * y) == dyadic_valuation(x) + dyadic_valuation(y)

    @given(nonzero_elements, nonzero_elements)
    def test_ultrametric(self, x: QuadElement, y: QuadElement) -> None:
        """v(x + y) >= min(v(x), v(y))."""
        s = valuation(x + y)
        if s is not INFINITY:
            assert s >= min(dyadic_valuation(x), dyadic_valuation(y))


class TestSubringsAndUniformizer:
    """Tests for subring membership and the uniformizer predicate."""

    @pytest.mark.parametrize(
        ("text", "zomega", "half", "local"),
        [
            ("1+w", True, True, True),
            ("1/2+w", False, True, False),
            ("1/3", False, False, True),
            ("3/4*w", False, True, False),
        ],
    )
    def test_membership(self, text: str, zomega: bool, half: bool, local: bool) -> None:
        x = parse_quad(text)
        assert in_subring(x, SubringTag.ZOMEGA) is zomega
        assert in_subring(x, SubringTag.ZOMEGA_HALF) is half
        assert in_subring(x, SubringTag.DYADIC_LOCAL) is local

    def test_omega_is_uniformizer(self) -> None:
        assert is_uniformizer(OMEGA)
        assert is_uniformizer(parse_quad("1/3*w"))
        assert not is_uniformizer(QuadElement.of(2))
        assert not is_uniformizer(ONE)

    def test_uniformizer_rejects_zero_and_nonlocal(self) -> None:
        with pytest.raises(ArithmeticDomainError):
            is_uniformizer(ZERO)
        with pytest.raises(ArithmeticDomainError, match="does not lie"):
            is_uniformizer(QuadElement(Fraction(1, 2)))


class TestTextFormat:
    """Tests for parse_quad / format_quad."""

    @pytest.mark.parametrize("text", ["0", "3", "-w", "w", "1/2-1/2*w", "-3+2*w", "5/7*w"])
    def test_canonical_forms(self, text: str) -> None:
        assert format_quad(parse_quad(text)) == text

    def test_spaces_and_order(self) -> None:
        assert parse_quad(" 2*w + 1 ") == QuadElement(Fraction(1), Fraction(2))

    @pytest.mark.parametrize("text", ["", "x", "1w2", "*w", "w+"])
    def test_rejects_malformed(self, text: str) -> None:
        with pytest.raises(ArithmeticDomainError):
            parse_quad(text)


class TestValuationAudit:
    """Tests for the randomized valuation audit."""

    def test_fixed_values_pass(self) -> None:
        assert all(c.passed for c in audit_fixed_values())

    def test_random_axioms_pass(self) -> None:
        checks = audit_valuation_axioms(samples=500, seed=7, max_height=8)
        assert [c.name for c in checks] == [
            "valuation:zero",
            "valuation:multiplicative",
            "valuation:ultrametric",
        ]
        assert all(c.passed for c in checks)
