"""Run summary with per-stage status, timings and the first fatal error.

Timings live here and not in the report, so reports stay reproducible.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any, Literal

StageStatus = Literal["pass", "fail", "flagged"]


def normalize_error_message(error: str, max_length: int = 500) -> str:
    """Collapse whitespace and bound an error message.

    Args:
        error: Raw error message.
        max_length: Maximum length for bounded message.

    Returns:
        Normalized error message.
    """
    error = re.sub(r"\s+", " ", error).strip()

    if len(error) > max_length:
        error = error[:max_length] + "...[truncated]"

    return error


@dataclass
class RunSummary:
    """Forensic summary of one verification run."""

    tool_version: str
    q_max: int
    stages: dict[str, StageStatus] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    final_status: Literal["success", "failed"] = "success"
    first_fatal_error: str | None = None

    def __post_init__(self) -> None:
        """Normalize error message on initialization."""
        if self.first_fatal_error:
            self.first_fatal_error = normalize_error_message(self.first_fatal_error)

    def record_stage(self, name: str, status: StageStatus, seconds: float) -> None:
        self.stages[name] = status
        self.timings[name] = round(seconds, 4)
        if status == "fail":
            self.final_status = "failed"

    def fail(self, error: str) -> None:
        self.final_status = "failed"
        if self.first_fatal_error is None:
            self.first_fatal_error = normalize_error_message(error)

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            "tool_version": self.tool_version,
            "q_max": self.q_max,
            "stages": self.stages,
            "timings": {**self.timings, "total_seconds": round(sum(self.timings.values()), 4)},
            "warnings": self.warnings,
            "final_status": self.final_status,
            "first_fatal_error": self.first_fatal_error,
        }

    def write(self, path: Path) -> None:
        """Write summary to JSON file.

        Args:
            path: Path to write summary file.
        """
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2)

    def print_final_line(self) -> None:
        """Print one-liner summary to stdout."""
        # ASCII markers for Windows cp1252 consoles
        status_symbol = "[OK]" if self.final_status == "success" else "[FAIL]"
        passed = sum(1 for s in self.stages.values() if s in ("pass", "flagged"))
        print(
            f"{status_symbol} {self.final_status.upper()}: "
            f"{passed}/{len(self.stages)} stages passed "
            f"({sum(self.timings.values()):.1f}s)"
        )


def get_tool_version() -> str:
    """Installed package version, "unknown" when running from a bare checkout."""
    try:
        return version("bianchi-mod2-verifier")
    except PackageNotFoundError:
        return "unknown"


def create_minimal_summary(error_message: str, q_max: int = 0) -> RunSummary:
    """Create a partial summary for early failures.

    Args:
        error_message: Error message describing the failure.
        q_max: Requested q_max, 0 if the configuration never loaded.

    Returns:
        Minimal RunSummary with failure status.
    """
    return RunSummary(
        tool_version=get_tool_version(),
        q_max=q_max,
        final_status="failed",
        first_fatal_error=normalize_error_message(error_message),
    )
