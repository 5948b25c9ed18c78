"""Verification pipeline, golden values, report rendering and table export."""

from .export import TableExporter, TableExportError
from .golden import GoldenData, GoldenValue, load_golden, parse_golden
from .pipeline import FREE_MODULE_MIN_Q, Flag, StageResult, VerificationPipeline
from .render import render, render_json, render_markdown

__all__ = [
    "FREE_MODULE_MIN_Q",
    "Flag",
    "GoldenData",
    "GoldenValue",
    "StageResult",
    "TableExportError",
    "TableExporter",
    "VerificationPipeline",
    "load_golden",
    "parse_golden",
    "render",
    "render_json",
    "render_markdown",
]
