"""Logging configuration with bounded matrix dumps.

Provides console and JSONL logging formats. Forensic dumps of large
matrices are truncated so a failing stage cannot flood the console.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

MAX_MESSAGE_CHARS = 4000


def truncate_message(message: str, max_chars: int = MAX_MESSAGE_CHARS) -> str:
    """Cut a message to max_chars, noting how much was dropped."""
    if len(message) <= max_chars:
        return message
    return f"{message[:max_chars]}...[{len(message) - max_chars} chars truncated]"


class TruncatingFormatter(logging.Formatter):
    """Formatter that bounds the rendered message length."""

    def __init__(
        self,
        fmt: str | None = None,
        datefmt: str | None = None,
        max_chars: int = MAX_MESSAGE_CHARS,
    ) -> None:
        super().__init__(fmt, datefmt)
        self.max_chars = max_chars

    def formatMessage(self, record: logging.LogRecord) -> str:  # noqa: N802
        record.message = truncate_message(record.message, self.max_chars)
        return super().formatMessage(record)


class JsonlHandler(logging.Handler):
    """Handler that writes one JSON object per record."""

    def __init__(self, log_file: Path, max_chars: int = MAX_MESSAGE_CHARS) -> None:
        super().__init__()
        self.log_file = log_file
        self.max_chars = max_chars

        # Set a basic formatter for timestamp formatting
        self.setFormatter(logging.Formatter())

        self.log_file.parent.mkdir(parents=True, exist_ok=True)

    def emit(self, record: logging.LogRecord) -> None:
        try:
            log_entry: dict[str, Any] = {
                "timestamp": self.formatter.formatTime(record) if self.formatter else "",
                "level": record.levelname,
                "logger": record.name,
                "message": truncate_message(record.getMessage(), self.max_chars),
            }

            # Structured context passed as extra={"context": {...}}
            context = getattr(record, "context", None)
            if isinstance(context, dict):
                log_entry["context"] = context

            with self.log_file.open("a", encoding="utf-8") as f:
                f.write(json.dumps(log_entry, default=str) + "\n")

        except Exception:
            self.handleError(record)


@dataclass
class LoggingConfig:
    """Configuration for logging setup."""

    format: str = "console"  # "console" or "jsonl"
    artifacts_dir: Path = field(default_factory=lambda: Path("run_artifacts"))
    log_file: Path | None = None
    level: int = logging.INFO


def setup_logging(config: LoggingConfig) -> None:
    """Configure the root logger for the selected format.

    Raises:
        ValueError: If the format is neither console nor jsonl.
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(config.level)
    root_logger.handlers.clear()

    if config.format == "console":
        handler = logging.StreamHandler()
        handler.setFormatter(TruncatingFormatter("%(asctime)s - %(levelname)s - %(message)s"))
        root_logger.addHandler(handler)

    elif config.format == "jsonl":
        if config.log_file is None:
            config.log_file = config.artifacts_dir / f"run_{os.getpid()}.log.jsonl"

        jsonl_handler: logging.Handler = JsonlHandler(config.log_file)
        root_logger.addHandler(jsonl_handler)

    else:
        raise ValueError(f"Invalid log format: {config.format}")
