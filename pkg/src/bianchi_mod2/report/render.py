"""Report rendering as JSON or Markdown."""

from __future__ import annotations

import json
from typing import Any

STATUS_MARKERS = {"pass": "PASS", "fail": "FAIL", "flagged": "FLAGGED"}


def render_json(report: dict[str, Any]) -> str:
    """Stable JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _table(header: list[str], rows: list[list[Any]]) -> list[str]:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(str(v) for v in row) + " |" for row in rows]
    return lines


def _e2_section(data: dict[str, Any]) -> list[str]:
    lines: list[str] = []
    for group in ("gamma0", "sl2"):
        page = data.get(group)
        if not page:
            continue
        width = len(page["rows"][0]) if page["rows"] else 0
        lines += ["", f"E_2 dimensions, {group}:", ""]
        lines += _table(["q", *[f"p={p}" for p in range(width)]], [[q, *row] for q, row in enumerate(page["rows"])])
        lines += ["", f"Total dimensions: {', '.join(str(d) for d in page['total_dims'])}"]
    return lines


def _les_section(data: dict[str, Any]) -> list[str]:
    rows = [
        [r["n"], r["kernel"], r["cokernel"], dim]
        for r, dim in zip(data["rows"], data["amalgam_dims"], strict=True)
    ]
    return ["", *_table(["n", "ker", "coker", "dim H^n"], rows)]


def _free_module_section(data: dict[str, Any]) -> list[str]:
    lines = [""]
    if "series" in data:
        lines.append(f"Poincare series: {data['series']}")
        lines.append(f"Basis degrees: {data['basis_degrees']}")
        lines.append(f"Classes: {', '.join(c['name'] for c in data['classes'])}")
    if "gamma0_series" in data:
        lines.append(f"Gamma_0 series: {data['gamma0_series']}")
    if data.get("reason"):
        lines.append(f"Reason: {data['reason']}")
    return lines


_SECTIONS = {"e2": _e2_section, "les": _les_section, "free_module": _free_module_section}


def render_markdown(report: dict[str, Any]) -> str:
    lines = [
        "# Mod-2 cohomology verification report",
        "",
        f"- Overall: **{STATUS_MARKERS[report['overall_status']]}**",
        f"- q_max: {report['q_max']}",
        f"- Restrictions: {report['restrictions']}",
        f"- Golden values: {report['golden']}",
    ]
    for stage in report["stages"]:
        lines += ["", f"## {stage['name']}: {STATUS_MARKERS[stage['status']]}"]
        if stage["error"]:
            lines += ["", f"Error: `{stage['error']}`"]
        checks = stage["checks"]
        if checks:
            passed = sum(1 for c in checks if c["passed"])
            lines += ["", f"{passed}/{len(checks)} checks passed."]
            failed = [c for c in checks if not c["passed"]]
            if failed:
                lines += ["", *_table(["check", "detail"], [[c["name"], c["detail"]] for c in failed])]
        if stage["flags"]:
            lines += ["", "Flagged:", ""]
            lines += [f"- `{f['name']}`: {f['detail']}" for f in stage["flags"]]
        render = _SECTIONS.get(stage["name"])
        if render and stage["data"]:
            lines += render(stage["data"])
    return "\n".join(lines) + "\n"


def render(report: dict[str, Any], output_format: str) -> str:
    if output_format == "markdown":
        return render_markdown(report)
    return render_json(report)
