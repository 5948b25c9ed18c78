"""Golden expected values, each annotated with where it comes from."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

from ..config import ConfigurationError, read_yaml
from ..utils.checks import Check

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GoldenValue:
    value: Any
    source: str


def _plain(value: Any) -> Any:
    """Tuples become lists so computed values compare equal to YAML data."""
    if isinstance(value, tuple | list):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


@dataclass(frozen=True)
class GoldenData:
    """Flat "section.key" -> value view of the golden file."""

    values: dict[str, GoldenValue]
    source: str

    def get(self, key: str) -> GoldenValue:
        try:
            return self.values[key]
        except KeyError:
            raise ConfigurationError(f"{self.source}: no golden value {key!r}") from None

    def value(self, key: str) -> Any:
        return self.get(key).value

    def check(self, key: str, actual: Any, prefix: bool = False) -> Check:
        """Compare a computed value with the golden one.

        With ``prefix`` both sides are lists indexed by degree and only
        their common prefix is compared.
        """
        golden = self.get(key)
        expected, computed = _plain(golden.value), _plain(actual)
        if prefix:
            if not isinstance(expected, list) or not isinstance(computed, list):
                raise ConfigurationError(f"golden value {key!r} is not a list")
            length = min(len(expected), len(computed))
            expected, computed = expected[:length], computed[:length]
        passed = expected == computed
        detail = f"expected {expected}, computed {computed} ({golden.source})"
        if not passed:
            logger.warning(f"Golden mismatch for {key}: {detail}")
        return Check(f"golden:{key}", passed, detail)

    def row_for(self, key: str, q: int) -> Any:
        """Entry of a four-row table listed for q = 4k+1, ..., 4k+4; q >= 1."""
        rows = self.value(key)
        if not isinstance(rows, Sequence) or len(rows) != 4:
            raise ConfigurationError(f"golden value {key!r} must list four rows")
        return rows[(q - 1) % 4]


def parse_golden(data: dict[str, Any], source: str = "<memory>") -> GoldenData:
    """Flatten the sections of a golden file.

    Raises:
        ConfigurationError: If an entry lacks ``value`` or ``source``.
    """
    values: dict[str, GoldenValue] = {}
    for section, entries in data.items():
        if section == "version":
            continue
        if not isinstance(entries, dict):
            raise ConfigurationError(f"{source}: section {section!r} must be a mapping")
        for key, entry in entries.items():
            if not isinstance(entry, dict) or "value" not in entry or "source" not in entry:
                raise ConfigurationError(f"{source}: {section}.{key} needs 'value' and 'source'")
            values[f"{section}.{key}"] = GoldenValue(entry["value"], str(entry["source"]))
    return GoldenData(values, source)


def load_golden(path: Path | None = None) -> GoldenData:
    """Read the golden file, or the packaged default."""
    if path is None:
        resource = resources.files("bianchi_mod2") / "data" / "golden.yaml"
        with resources.as_file(resource) as packaged:
            golden = parse_golden(read_yaml(packaged), "packaged default")
    else:
        golden = parse_golden(read_yaml(path), str(path))
    logger.info(f"Loaded {len(golden.values)} golden values from {golden.source}")
    return golden
