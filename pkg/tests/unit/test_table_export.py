"""Tests for CSV export of the computed tables.

Exporting twice must give byte-identical files with a fixed column order.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

import pandas as pd
import pytest

from bianchi_mod2.config import RunConfig
from bianchi_mod2.report import TableExporter, TableExportError, VerificationPipeline
from bianchi_mod2.report.export import TABLE_COLUMNS


def hash_file(path: Path) -> str:
    """Calculate SHA-256 hash of a file."""
    return hashlib.sha256(path.read_bytes()).hexdigest()


@pytest.fixture(scope="module")
def pipeline() -> VerificationPipeline:
    return VerificationPipeline(RunConfig(q_max=9, stage="les"))


class TestTableExport:
    """Tests for TableExporter."""

    def test_export_is_deterministic(self, pipeline: VerificationPipeline, tmp_path: Path) -> None:
        first = TableExporter(pipeline, tmp_path / "a").export_all()
        second = TableExporter(VerificationPipeline(RunConfig(q_max=9, stage="les")), tmp_path / "b").export_all()
        assert first == second
        for name in TABLE_COLUMNS:
            assert hash_file(tmp_path / "a" / f"{name}.csv") == hash_file(tmp_path / "b" / f"{name}.csv")

    def test_columns_and_row_counts(self, pipeline: VerificationPipeline, tmp_path: Path) -> None:
        counts = TableExporter(pipeline, tmp_path).export_all()
        assert counts == {"e2_pages": 60, "comparison": 30, "les": 10, "total_dims": 10}
        for name, columns in TABLE_COLUMNS.items():
            df = pd.read_csv(tmp_path / f"{name}.csv")
            assert list(df.columns) == columns

    def test_rows_are_sorted(self, pipeline: VerificationPipeline, tmp_path: Path) -> None:
        TableExporter(pipeline, tmp_path).export_all()
        df = pd.read_csv(tmp_path / "e2_pages.csv")
        assert list(df["group"].unique()) == ["gamma0", "sl2"]
        gamma0 = df[df["group"] == "gamma0"]
        assert list(zip(gamma0["q"], gamma0["p"], strict=True)) == sorted(zip(gamma0["q"], gamma0["p"], strict=True))

    def test_total_dims_content(self, pipeline: VerificationPipeline, tmp_path: Path) -> None:
        TableExporter(pipeline, tmp_path).export_all()
        df = pd.read_csv(tmp_path / "total_dims.csv")
        assert list(df["gamma0"]) == [1, 4, 6, 6, 5, 5, 6, 6, 5, 5]
        assert list(df["amalgam"]) == [1, 0, 1, 4, 3, 1, 2, 4, 3, 1]

    def test_unix_line_endings(self, pipeline: VerificationPipeline, tmp_path: Path) -> None:
        TableExporter(pipeline, tmp_path).export_all()
        assert b"\r\n" not in (tmp_path / "les.csv").read_bytes()

    def test_failure_is_wrapped(self, tmp_path: Path) -> None:
        broken = VerificationPipeline(RunConfig(q_max=9, stage="les", restrictions_path=tmp_path / "absent.yaml"))
        with pytest.raises(TableExportError, match="e2_pages.csv"):
            TableExporter(broken, tmp_path / "out").export_all()
