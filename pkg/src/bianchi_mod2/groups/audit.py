"""Audits of the named generators and the injection j on random Gamma_0 words."""

from __future__ import annotations

import logging

import numpy as np

from ..arithmetic import ONE
from ..utils.checks import Check
from .closure import EXCEEDS_CAP, element_order, generate_subgroup, is_binary_tetrahedral, is_quaternion_pair
from .matrices import (
    GEN_A,
    GEN_B,
    GEN_C,
    GEN_H,
    GEN_SMALL_B,
    GEN_SMALL_C,
    NAMED_GENERATORS,
    Mat2,
    format_mat,
    has_integral_entries,
    in_gamma0,
    inject_second_factor,
    verify_conjugacy,
)
from .words import Word, evaluate_word, format_word

logger = logging.getLogger(__name__)

EXPECTED_ORDERS: dict[str, int] = {"A": 4, "B": 4, "C": 4, "c": 4, "b": 6}
GAMMA0_LETTERS: tuple[str, ...] = ("T", "U", "A", "B", "C")
PARABOLIC_CAP = 64


def audit_generator_orders() -> list[Check]:
    """Torsion generators have their stated orders; T and U have none below the cap."""
    checks = []
    for name, expected in EXPECTED_ORDERS.items():
        found = element_order(NAMED_GENERATORS[name])
        checks.append(Check(f"order:{name}", found == expected, f"expected {expected}, found {found}"))
    for name in ("T", "U"):
        found = element_order(NAMED_GENERATORS[name], cap=PARABOLIC_CAP)
        checks.append(Check(f"order:{name}", found is EXCEEDS_CAP, f"no power up to {PARABOLIC_CAP} is I"))
    return checks


def audit_finite_subgroups() -> list[Check]:
    te24 = generate_subgroup([GEN_A, GEN_SMALL_B], ("A", "b"))
    return [
        Check("subgroup:<C,B>", is_quaternion_pair(GEN_C, GEN_B), "quaternion of order 8"),
        Check(
            "subgroup:<A,b>",
            te24.order == 24 and is_binary_tetrahedral([GEN_A, GEN_SMALL_B]),
            f"order {te24.order}, binary tetrahedral expected",
        ),
        Check("conjugacy:hCh^-1=c", verify_conjugacy(GEN_C, GEN_SMALL_C, GEN_H), "h C h^-1 = c"),
    ]


def random_gamma0_word(rng: np.random.Generator, length: int) -> Word:
    letters = rng.integers(0, len(GAMMA0_LETTERS), size=length)
    signs = rng.choice([-1, 1], size=length)
    return tuple((GAMMA0_LETTERS[int(k)], int(s)) for k, s in zip(letters, signs, strict=True))


def _is_sl2_integral(m: Mat2) -> bool:
    return has_integral_entries(m) and m.det() == ONE


def audit_injection(samples: int, seed: int, word_length: int) -> list[Check]:
    """j lands in SL_2(Z[w]) and is multiplicative on random pairs of Gamma_0 words."""
    rng = np.random.default_rng(seed)
    membership = landing = homomorphism = True
    first_failure = ""
    for _ in range(samples):
        u, v = random_gamma0_word(rng, word_length), random_gamma0_word(rng, word_length)
        x, y = evaluate_word(u, NAMED_GENERATORS), evaluate_word(v, NAMED_GENERATORS)
        if not (in_gamma0(x) and in_gamma0(y)):
            membership = False
            first_failure = first_failure or f"{format_word(u)} left Gamma_0"
            continue
        jx, jy = inject_second_factor(x), inject_second_factor(y)
        if not (_is_sl2_integral(jx) and _is_sl2_integral(jy)):
            landing = False
            first_failure = first_failure or f"j({format_mat(x)}) is not in SL_2(Z[w])"
        if inject_second_factor(x @ y) != jx @ jy:
            homomorphism = False
            first_failure = first_failure or f"j not multiplicative on {format_word(u)}, {format_word(v)}"
    if first_failure:
        logger.error(f"Injection audit failed: {first_failure}")
    detail = f"{samples} word pairs of length {word_length}, seed {seed}"
    return [
        Check("gamma0:closed", membership, detail),
        Check("j:integral", landing, detail),
        Check("j:homomorphism", homomorphism, detail),
    ]
