"""Degree-wise kernel/cokernel of (i*, j*), the long exact sequence and the free-module check."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from ..complexes import PreconditionError
from .spectral import MAX_P, Comparison, RangeError

logger = logging.getLogger(__name__)

PERIOD = 4
PERIODICITY_CLASS = "e4"


@dataclass(frozen=True)
class LESRow:
    """Kernel and cokernel of (i^n, j^n): H^n(SL_2)^2 -> H^n(Gamma_0)."""

    n: int
    kernel: int
    cokernel: int


def degreewise_kernel_cokernel(comparison: Comparison, n_max: int) -> list[LESRow]:
    """Sum the E_2 comparison table along the antidiagonals p + q = n.

    Raises:
        RangeError: If n_max needs rows above the computed q_max.
    """
    table = comparison.table
    q_max = max(q for _, q in table)
    if n_max > q_max:
        raise RangeError(f"degree {n_max} needs comparison rows above q_max = {q_max}")
    rows = []
    for n in range(n_max + 1):
        entries = [table[(p, n - p)] for p in range(min(n, MAX_P) + 1)]
        rows.append(LESRow(n, sum(e.kernel for e in entries), sum(e.cokernel for e in entries)))
    return rows


def solve_les(rows: Sequence[LESRow]) -> list[int]:
    """dim H^n of the amalgam from 0 -> coker(n-1) -> H^n -> ker(n) -> 0.

    Raises:
        PreconditionError: If the rows do not cover 0..N consecutively.
    """
    if [r.n for r in rows] != list(range(len(rows))):
        raise PreconditionError("LES rows must cover degrees 0..N in order")
    dims = []
    for r in rows:
        previous = rows[r.n - 1].cokernel if r.n > 0 else 0
        dims.append(previous + r.kernel)
    return dims


@dataclass(frozen=True)
class PoincareSeries:
    """numerator(t) / (1 - t^period)."""

    numerator: tuple[int, ...]
    period: int = PERIOD

    def coefficients(self, length: int) -> list[int]:
        """Power-series coefficients up to t^(length - 1)."""
        out = [0] * length
        for k, c in enumerate(self.numerator):
            for n in range(k, length, self.period):
                out[n] += c
        return out

    def basis_degrees(self) -> list[int]:
        return [k for k, c in enumerate(self.numerator) for _ in range(c)]

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.numerator):
            if c == 0:
                continue
            power = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            coeff = str(c) if c != 1 or k == 0 else ""
            terms.append(f"{coeff}{power}")
        return f"({' + '.join(terms) or '0'})/(1 - t^{self.period})"


def _numerator(dims: Sequence[int], period: int) -> list[int]:
    return [dims[n] - (dims[n - period] if n >= period else 0) for n in range(len(dims))]


def _trailing_zeros(values: Sequence[int]) -> int:
    count = 0
    for v in reversed(values):
        if v:
            break
        count += 1
    return count


def _check_length(dims: Sequence[int], period: int) -> None:
    if len(dims) < 3 * period:
        raise PreconditionError(f"need at least {3 * period} degrees, got {len(dims)}")


def poincare_series(dims: Sequence[int], period: int = PERIOD) -> PoincareSeries:
    """Rational form of sum dims[n] t^n with denominator 1 - t^period.

    The tail counts as periodic when dims[n] == dims[n - period] for every
    n among the last 2 * period degrees.

    Raises:
        PreconditionError: If fewer than three periods are given or the
            last two periods do not repeat.
    """
    _check_length(dims, period)
    c = _numerator(dims, period)
    window = len(dims) - 2 * period
    if any(c[window:]):
        raise PreconditionError(
            f"degrees {window}..{len(dims) - 1} of {list(dims)} do not repeat with period {period}"
        )
    last = len(c) - _trailing_zeros(c)
    return PoincareSeries(tuple(c[:last]) or (0,), period)


@dataclass(frozen=True)
class FreeModuleVerdict:
    """Outcome of free_module_check.

    Attributes:
        free: True iff (1 - t^period) P(t) is a polynomial with non-negative
            coefficients.
        series: The Poincare series when a periodic tail was found.
        basis_degrees: Degrees read off the numerator.
        contains_claimed: Whether the claimed degrees form a sub-multiset.
        reason: Why the check failed, empty on success.
    """

    free: bool
    series: PoincareSeries | None
    basis_degrees: tuple[int, ...]
    contains_claimed: bool
    reason: str = ""


def _is_submultiset(small: Sequence[int], big: Sequence[int]) -> bool:
    pool = list(big)
    for d in small:
        if d not in pool:
            return False
        pool.remove(d)
    return True


def free_module_check(
    dims: Sequence[int],
    period: int = PERIOD,
    claimed_degrees: Sequence[int] = (),
) -> FreeModuleVerdict:
    """Decide freeness over F_2[e] with deg e = period.

    Raises:
        PreconditionError: If fewer than three periods are given.
    """
    _check_length(dims, period)
    try:
        series = poincare_series(dims, period)
    except PreconditionError as e:
        logger.info(f"Free-module check: {e}")
        return FreeModuleVerdict(False, None, (), False, str(e))
    if any(c < 0 for c in series.numerator):
        return FreeModuleVerdict(False, series, (), False, f"negative coefficient in {series}")
    degrees = tuple(series.basis_degrees())
    return FreeModuleVerdict(True, series, degrees, _is_submultiset(claimed_degrees, degrees))


@dataclass(frozen=True)
class NamedClass:
    name: str
    degree: int


def name_classes(series: PoincareSeries, rows: Sequence[LESRow]) -> list[NamedClass]:
    """Attach names to the free basis, plus the periodicity class.

    In degree n the first min(coker(n-1), c_n) slots come from the
    cokernel of (i*, j*) and are called s_n; the rest are x_n, y_n, z_n.
    """
    cokernels = {r.n: r.cokernel for r in rows}
    named = [NamedClass(PERIODICITY_CLASS, series.period)]
    for n, count in enumerate(series.numerator):
        if n == 0:
            named.extend(NamedClass("1", 0) for _ in range(count))
            continue
        s_count = min(cokernels.get(n - 1, 0), count)
        named.extend(NamedClass(f"s{n}" if k == 0 else f"s{n}_{k}", n) for k in range(s_count))
        for k in range(count - s_count):
            letter = "xyz"[k] if k < 3 else f"u{k - 2}_"
            named.append(NamedClass(f"{letter}{n}", n))
    return named
