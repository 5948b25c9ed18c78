"""Randomized audit of the dyadic valuation on bounded-height elements."""

from __future__ import annotations

import logging
from fractions import Fraction

import numpy as np

from ..utils.checks import Check
from .quadratic import (
    INFINITY,
    OMEGA,
    ArithmeticDomainError,
    QuadElement,
    dyadic_valuation,
    format_quad,
    is_uniformizer,
    min_valuation,
    parse_quad,
    valuation,
)

logger = logging.getLogger(__name__)


def random_element(rng: np.random.Generator, max_height: int) -> QuadElement:
    """a + b*w with |numerators| <= max_height and 2-power denominators up to 2^max_height."""
    nums = rng.integers(-max_height, max_height + 1, size=2)
    exps = rng.integers(0, max_height + 1, size=2)
    return QuadElement(Fraction(int(nums[0]), 2 ** int(exps[0])), Fraction(int(nums[1]), 2 ** int(exps[1])))


def _ge(u: int | object, v: int | object) -> bool:
    if u is INFINITY:
        return True
    if v is INFINITY:
        return False
    return u >= v  # type: ignore[operator]


def _add(u: int | object, v: int | object) -> int | object:
    if u is INFINITY or v is INFINITY:
        return INFINITY
    return u + v  # type: ignore[operator]


def audit_valuation_axioms(samples: int, seed: int, max_height: int) -> list[Check]:
    """Zero detection, multiplicativity and the ultrametric inequality on random pairs."""
    rng = np.random.default_rng(seed)
    zero_ok = mult_ok = ultra_ok = True
    first_failure = ""
    for _ in range(samples):
        x, y = random_element(rng, max_height), random_element(rng, max_height)
        vx, vy = valuation(x), valuation(y)
        if (vx is INFINITY) != (not x):
            zero_ok = False
            first_failure = first_failure or f"zero test at {format_quad(x)}"
        if valuation(x * y) != _add(vx, vy):
            mult_ok = False
            first_failure = first_failure or f"v(xy) at {format_quad(x)}, {format_quad(y)}"
        if not _ge(valuation(x + y), min_valuation(vx, vy)):
            ultra_ok = False
            first_failure = first_failure or f"v(x+y) at {format_quad(x)}, {format_quad(y)}"
    if first_failure:
        logger.error(f"Valuation audit failed: {first_failure}")
    detail = f"{samples} samples, seed {seed}, height {max_height}"
    return [
        Check("valuation:zero", zero_ok, detail),
        Check("valuation:multiplicative", mult_ok, detail),
        Check("valuation:ultrametric", ultra_ok, detail),
    ]


def audit_fixed_values() -> list[Check]:
    """v(w) = 1, v(2) = 2, w is a uniformizer, the text format round-trips."""
    text = "1/2-1/2*w"
    try:
        uniformizer = is_uniformizer(OMEGA) and not is_uniformizer(QuadElement.of(2))
    except ArithmeticDomainError:
        uniformizer = False
    return [
        Check("valuation:omega", dyadic_valuation(OMEGA) == 1, f"v(w) = {dyadic_valuation(OMEGA)}"),
        Check("valuation:two", dyadic_valuation(QuadElement.of(2)) == 2, f"v(2) = {dyadic_valuation(QuadElement.of(2))}"),
        Check("uniformizer:omega", uniformizer, "w generates the maximal ideal of Z_(2)[w]"),
        Check("format:roundtrip", format_quad(parse_quad(text)) == text, text),
    ]
