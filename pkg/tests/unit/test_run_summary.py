"""Tests for run_summary module."""

import json
import tempfile
from pathlib import Path

from bianchi_mod2.utils.run_summary import (
    RunSummary,
    create_minimal_summary,
    get_tool_version,
    normalize_error_message,
)


class TestNormalizeErrorMessage:
    """Tests for error message normalization."""

    def test_collapses_whitespace(self) -> None:
        assert normalize_error_message("d1 o d1 != 0\n  at (0, 3)") == "d1 o d1 != 0 at (0, 3)"

    def test_truncates_long_messages(self) -> None:
        result = normalize_error_message("x" * 600, max_length=500)
        assert len(result) <= 520  # 500 + truncation marker
        assert "...[truncated]" in result

    def test_short_message_unchanged(self) -> None:
        assert normalize_error_message("Simple error") == "Simple error"


class TestRunSummary:
    """Tests for RunSummary dataclass."""

    def test_record_stage(self) -> None:
        summary = RunSummary(tool_version="1.0.0", q_max=9)
        summary.record_stage("e2", "pass", 0.123456)
        summary.record_stage("les", "flagged", 1.0)
        d = summary.to_dict()
        assert d["stages"] == {"e2": "pass", "les": "flagged"}
        assert d["timings"]["e2"] == 0.1235
        assert d["timings"]["total_seconds"] == 1.1235
        assert d["final_status"] == "success"

    def test_failed_stage_fails_run(self) -> None:
        summary = RunSummary(tool_version="1.0.0", q_max=9)
        summary.record_stage("comparison", "fail", 0.5)
        assert summary.final_status == "failed"

    def test_first_fatal_error_is_kept(self) -> None:
        summary = RunSummary(tool_version="1.0.0", q_max=9)
        summary.fail("first")
        summary.fail("second")
        assert summary.first_fatal_error == "first"

    def test_write(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "nested" / "summary.json"
            summary = RunSummary(tool_version="1.0.0", q_max=5, warnings=["e2: differentials"])
            summary.write(path)
            data = json.loads(path.read_text())
            assert data["final_status"] == "success"
            assert data["q_max"] == 5
            assert data["warnings"] == ["e2: differentials"]

    def test_normalizes_error_on_init(self) -> None:
        summary = RunSummary(tool_version="1.0.0", q_max=9, first_fatal_error="bad\n\nconfig")
        assert summary.first_fatal_error == "bad config"


class TestHelperFunctions:
    """Tests for helper functions."""

    def test_get_tool_version_returns_string(self) -> None:
        assert isinstance(get_tool_version(), str)

    def test_create_minimal_summary(self) -> None:
        summary = create_minimal_summary("test error")
        assert summary.final_status == "failed"
        assert summary.q_max == 0
        assert "test error" in (summary.first_fatal_error or "")


class TestRunSummaryOutput:
    """Tests for RunSummary output methods."""

    def test_print_final_line_success(self, capsys) -> None:
        summary = RunSummary(tool_version="1.0.0", q_max=9)
        summary.record_stage("arithmetic", "pass", 1.0)
        summary.record_stage("e2", "flagged", 1.5)
        summary.record_stage("free_module", "pass", 0.0)
        summary.print_final_line()
        captured = capsys.readouterr()
        assert "[OK] SUCCESS" in captured.out
        assert "3/3 stages passed" in captured.out

    def test_print_final_line_failed(self, capsys) -> None:
        summary = RunSummary(tool_version="1.0.0", q_max=9)
        summary.record_stage("les", "fail", 0.1)
        summary.print_final_line()
        assert "[FAIL] FAILED" in capsys.readouterr().out
