"""Words in single-letter generator names, e.g. "U^-1 C U B^-1 C^-1"."""

from __future__ import annotations

import re
from collections.abc import Mapping, Sequence

from .matrices import IDENTITY, Mat2, MatrixPreconditionError, multiply, power

Word = tuple[tuple[str, int], ...]

_LETTER = re.compile(r"([A-Za-z])(?:\^(-?\d+))?")


def parse_word(text: str) -> Word:
    """Parse a word; spaces and '*' separate letters and are optional."""
    compact = text.replace(" ", "").replace("*", "")
    letters: list[tuple[str, int]] = []
    pos = 0
    while pos < len(compact):
        match = _LETTER.match(compact, pos)
        if match is None:
            raise MatrixPreconditionError(f"cannot parse word {text!r} at offset {pos}")
        exponent = int(match.group(2)) if match.group(2) is not None else 1
        letters.append((match.group(1), exponent))
        pos = match.end()
    return tuple(letters)


def format_word(word: Word) -> str:
    parts = [name if exp == 1 else f"{name}^{exp}" for name, exp in word]
    return " ".join(parts) if parts else "1"


def evaluate_word(word: Word | str, generators: Mapping[str, Mat2]) -> Mat2:
    """Multiply out a word with the given generator values.

    Raises:
        MatrixPreconditionError: If a letter has no generator value.
    """
    if isinstance(word, str):
        word = parse_word(word)
    factors: list[Mat2] = []
    for name, exp in word:
        if name not in generators:
            raise MatrixPreconditionError(f"unknown generator {name!r} in word")
        factors.append(power(generators[name], exp))
    return multiply(*factors) if factors else IDENTITY


def abelianized_exponents(word: Word, names: Sequence[str]) -> list[int]:
    """Exponent sum of each name in the word, in the order of ``names``."""
    index = {name: k for k, name in enumerate(names)}
    sums = [0] * len(names)
    for name, exp in word:
        if name not in index:
            raise MatrixPreconditionError(f"unknown generator {name!r} in word")
        sums[index[name]] += exp
    return sums
