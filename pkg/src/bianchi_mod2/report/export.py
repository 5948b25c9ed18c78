"""CSV export of the computed tables.

Output is deterministic: fixed column order, sorted rows, Unix line endings.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import TYPE_CHECKING

import pandas as pd

if TYPE_CHECKING:
    from .pipeline import VerificationPipeline

logger = logging.getLogger(__name__)

TABLE_COLUMNS: dict[str, list[str]] = {
    "e2_pages": ["group", "p", "q", "dim", "basis"],
    "comparison": ["p", "q", "source_dim", "target_dim", "kernel", "cokernel", "kernel_basis"],
    "les": ["n", "kernel", "cokernel", "amalgam_dim"],
    "total_dims": ["n", "gamma0", "sl2", "amalgam"],
}

SORT_KEYS: dict[str, list[str]] = {
    "e2_pages": ["group", "q", "p"],
    "comparison": ["q", "p"],
    "les": ["n"],
    "total_dims": ["n"],
}


class TableExportError(Exception):
    """Table export failed."""


class TableExporter:
    """Writes the pipeline's tables as CSV files."""

    def __init__(self, pipeline: VerificationPipeline, output_dir: Path) -> None:
        self.pipeline = pipeline
        self.output_dir = output_dir

    def _e2_pages(self) -> list[dict[str, object]]:
        rows: list[dict[str, object]] = []
        for group, page in (("gamma0", self.pipeline.gamma0_e2), ("sl2", self.pipeline.sl2_e2)):
            for (p, q), entry in page.entries.items():
                rows.append({"group": group, "p": p, "q": q, "dim": entry.dim, "basis": "; ".join(entry.names)})
        return rows

    def _comparison(self) -> list[dict[str, object]]:
        return [
            {
                "p": e.p,
                "q": e.q,
                "source_dim": e.source_dim,
                "target_dim": e.target_dim,
                "kernel": e.kernel,
                "cokernel": e.cokernel,
                "kernel_basis": "; ".join(e.kernel_basis),
            }
            for e in self.pipeline.comparison.table.values()
        ]

    def _les(self) -> list[dict[str, object]]:
        dims = self.pipeline.amalgam_dims
        return [
            {"n": r.n, "kernel": r.kernel, "cokernel": r.cokernel, "amalgam_dim": dims[r.n]}
            for r in self.pipeline.les_rows
        ]

    def _total_dims(self) -> list[dict[str, object]]:
        gamma0 = self.pipeline.total_dims(self.pipeline.gamma0_e2)
        sl2 = self.pipeline.total_dims(self.pipeline.sl2_e2)
        dims = self.pipeline.amalgam_dims
        return [{"n": n, "gamma0": gamma0[n], "sl2": sl2[n], "amalgam": dims[n]} for n in range(len(dims))]

    def export_all(self) -> dict[str, int]:
        """Write every table.

        Returns:
            Table name -> row count.

        Raises:
            TableExportError: If a table cannot be computed or written.
        """
        self.output_dir.mkdir(parents=True, exist_ok=True)
        builders = {
            "e2_pages": self._e2_pages,
            "comparison": self._comparison,
            "les": self._les,
            "total_dims": self._total_dims,
        }
        results: dict[str, int] = {}
        for name, build in builders.items():
            try:
                results[name] = self._write(name, build())
            except Exception as e:
                raise TableExportError(f"Failed to export {name}.csv: {e}") from e
            logger.info(f"Exported {name}.csv: {results[name]} rows")
        return results

    def _write(self, name: str, rows: list[dict[str, object]]) -> int:
        columns = TABLE_COLUMNS[name]
        df = pd.DataFrame(rows, columns=columns)
        df = df.sort_values(by=SORT_KEYS[name], ascending=True, kind="mergesort")
        df.to_csv(self.output_dir / f"{name}.csv", index=False, encoding="utf-8", lineterminator="\n")
        return len(df)
