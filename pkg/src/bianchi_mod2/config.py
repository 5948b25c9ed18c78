"""Configuration loader for bianchi-mod2-verifier.

Loads and validates the run configuration from a YAML file and CLI
arguments.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

logger = logging.getLogger(__name__)

STAGE_NAMES: tuple[str, ...] = (
    "arithmetic",
    "groups",
    "domain",
    "quotient",
    "torsion",
    "abelianization",
    "e2",
    "comparison",
    "les",
    "free_module",
)
OUTPUT_FORMATS: tuple[str, ...] = ("json", "markdown")
MIN_Q_MAX = 5
# One period to reach the periodic tail, two more to see it repeat.
FREE_MODULE_MIN_Q = 11
DEFAULT_Q_MAX = 14


class ConfigurationError(Exception):
    """Configuration validation error."""


@dataclass
class AuditConfig:
    """Randomized audit settings."""

    samples: int = 10_000
    seed: int = 2
    max_height: int = 16  # bound on |numerator| and denominator exponent
    word_length: int = 6

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ConfigurationError(f"audit.samples must be >= 1, got {self.samples}")
        if self.max_height < 1:
            raise ConfigurationError(f"audit.max_height must be >= 1, got {self.max_height}")
        if self.word_length < 1:
            raise ConfigurationError(f"audit.word_length must be >= 1, got {self.word_length}")


@dataclass
class RunConfig:
    """Main configuration for a verification run."""

    q_max: int = DEFAULT_Q_MAX
    stage: str | None = None
    output_format: str = "json"
    output_path: Path | None = None
    restrictions_path: Path | None = None
    golden_path: Path | None = None
    audit: AuditConfig = field(default_factory=AuditConfig)

    def __post_init__(self) -> None:
        """Validate configuration after initialization."""
        if self.q_max < MIN_Q_MAX:
            raise ConfigurationError(f"q_max must be >= {MIN_Q_MAX}, got {self.q_max}")
        if self.q_max < FREE_MODULE_MIN_Q and self.stage in (None, "free_module"):
            raise ConfigurationError(
                f"free_module needs q_max >= {FREE_MODULE_MIN_Q} to see two periods repeat, got {self.q_max}; "
                "run a single earlier stage for a smaller q_max"
            )
        if self.stage is not None and self.stage not in STAGE_NAMES:
            raise ConfigurationError(
                f"Unknown stage {self.stage!r}; expected one of {', '.join(STAGE_NAMES)}"
            )
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigurationError(
                f"Unknown output format {self.output_format!r}; expected json or markdown"
            )

    def log_summary(self) -> None:
        """Log configuration summary."""
        logger.info(f"q_max: {self.q_max}")
        logger.info(f"Stage: {self.stage or 'all'}")
        logger.info(f"Output: {self.output_format} -> {self.output_path or 'stdout'}")
        logger.info(f"Restrictions: {self.restrictions_path or 'packaged default'}")
        logger.info(f"Golden values: {self.golden_path or 'packaged default'}")
        logger.info(f"Audit: {self.audit.samples} samples, seed {self.audit.seed}")


def read_yaml(path: Path) -> dict[str, Any]:
    """Read a YAML mapping.

    Raises:
        ConfigurationError: If the file is missing, malformed or not a mapping.
    """
    if not path.exists():
        raise ConfigurationError(f"File not found: {path}")
    try:
        with path.open(encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Invalid YAML in {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigurationError(f"{path} must contain a mapping at the top level")
    return data


def load_config(
    config_path: Path | None = None,
    q_max: int | None = None,
    stage: str | None = None,
    output_format: str | None = None,
    output_path: Path | None = None,
    restrictions_path: Path | None = None,
    golden_path: Path | None = None,
) -> RunConfig:
    """Load configuration from file and/or CLI arguments.

    CLI arguments override file values.

    Args:
        config_path: Path to a YAML run configuration.
        q_max: Highest cohomological degree q on the E-pages (CLI override).
        stage: Report only this stage (CLI override).
        output_format: json or markdown (CLI override).
        output_path: Report destination; stdout if unset (CLI override).
        restrictions_path: Restriction-map configuration (CLI override).
        golden_path: Golden expected values (CLI override).

    Returns:
        Validated RunConfig instance.

    Raises:
        ConfigurationError: If configuration is invalid.
    """
    config_data: dict[str, Any] = {}

    if config_path:
        logger.info(f"Loading configuration from {config_path}")
        config_data = read_yaml(config_path)

    audit_data = config_data.get("audit", {}) or {}
    try:
        audit = AuditConfig(
            samples=int(audit_data.get("samples", 10_000)),
            seed=int(audit_data.get("seed", 2)),
            max_height=int(audit_data.get("max_height", 16)),
            word_length=int(audit_data.get("word_length", 6)),
        )
        file_q_max = int(config_data.get("q_max", DEFAULT_Q_MAX))
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f"Invalid numeric setting: {e}") from e

    def _path(value: Path | None, key: str) -> Path | None:
        if value is not None:
            return value
        raw = config_data.get(key)
        return Path(raw) if raw else None

    return RunConfig(
        q_max=q_max if q_max is not None else file_q_max,
        stage=stage or config_data.get("stage"),
        output_format=output_format or config_data.get("output_format", "json"),
        output_path=_path(output_path, "output_path"),
        restrictions_path=_path(restrictions_path, "restrictions"),
        golden_path=_path(golden_path, "golden"),
        audit=audit,
    )
