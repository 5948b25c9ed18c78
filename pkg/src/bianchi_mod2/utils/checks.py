"""Named pass/fail results collected by the audits."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass


@dataclass(frozen=True)
class Check:
    """One audited assertion.

    Attributes:
        name: Stable identifier, e.g. "stabilizer:gamma0:v2".
        passed: Outcome.
        detail: Human-readable context, empty when there is nothing to add.
    """

    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict[str, str | bool]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def all_passed(checks: Iterable[Check]) -> bool:
    return all(c.passed for c in checks)


def failures(checks: Iterable[Check]) -> list[Check]:
    return [c for c in checks if not c.passed]
