"""CLI entry point for bianchi-mod2-verifier."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import TYPE_CHECKING

import yaml

from .cohomology import load_restrictions
from .config import OUTPUT_FORMATS, STAGE_NAMES, ConfigurationError, load_config
from .report import TableExporter, TableExportError, VerificationPipeline, load_golden, render
from .utils.logging_config import LoggingConfig, setup_logging
from .utils.run_summary import RunSummary, create_minimal_summary, get_tool_version

if TYPE_CHECKING:
    from argparse import Namespace

    from .config import RunConfig

logger = logging.getLogger(__name__)


def create_parser() -> argparse.ArgumentParser:  # pragma: no cover
    """Create the argument parser for the CLI."""
    parser = argparse.ArgumentParser(
        prog="bianchi-mod2",
        description="Verify the mod-2 cohomology of SL_2(Z[sqrt(-2)][1/2]) from its amalgam decomposition.",
    )

    # Global options
    parser.add_argument(
        "--log-format",
        type=str,
        choices=["console", "jsonl"],
        default="console",
        help="Log format: console (human-readable) or jsonl (structured)",
    )
    parser.add_argument(
        "--artifacts-dir",
        type=Path,
        default=Path("run_artifacts"),
        help="Directory for run artifacts (summary, logs)",
    )

    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_common(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--config", type=Path, help="Path to a run configuration YAML file")
        sub.add_argument("--q-max", type=int, help="Highest row q of the E-pages (default 14)")
        sub.add_argument("--restrictions", type=Path, help="Restriction-map configuration YAML")
        sub.add_argument("--golden", type=Path, help="Golden expected values YAML")

    run_parser = subparsers.add_parser("run", help="Run the verification pipeline")
    add_common(run_parser)
    run_parser.add_argument("--stage", type=str, choices=STAGE_NAMES, help="Run a single stage")
    run_parser.add_argument("--format", type=str, choices=OUTPUT_FORMATS, help="Report format (default json)")
    run_parser.add_argument("--out", type=Path, help="Report destination (default stdout)")

    export_parser = subparsers.add_parser("export-tables", help="Write the computed tables as CSV")
    add_common(export_parser)
    export_parser.add_argument(
        "--out-dir",
        type=Path,
        default=Path("tables"),
        help="Output directory for CSV files",
    )

    show_parser = subparsers.add_parser("show-config", help="Print the effective restriction configuration")
    show_parser.add_argument("--restrictions", type=Path, help="Restriction-map configuration YAML")

    return parser


def _load(args: Namespace) -> RunConfig:
    return load_config(
        config_path=args.config,
        q_max=args.q_max,
        stage=getattr(args, "stage", None),
        output_format=getattr(args, "format", None),
        output_path=getattr(args, "out", None),
        restrictions_path=args.restrictions,
        golden_path=args.golden,
    )


def cmd_run(args: Namespace) -> int:
    """Execute the run command."""
    summary_path = args.artifacts_dir / "run_summary.json"
    try:
        config = _load(args)
        config.log_summary()
        pipeline = VerificationPipeline(
            config,
            restrictions=load_restrictions(config.restrictions_path),
            golden=load_golden(config.golden_path),
        )
    except ConfigurationError as e:
        logger.error(f"Configuration error: {e}")
        create_minimal_summary(f"Configuration error: {e}").write(summary_path)
        return 2

    report = pipeline.build()
    text = render(report, config.output_format)
    if config.output_path is None:
        sys.stdout.write(text)
    else:
        config.output_path.parent.mkdir(parents=True, exist_ok=True)
        config.output_path.write_text(text, encoding="utf-8", newline="\n")
        logger.info(f"Report written to {config.output_path}")

    run_summary = RunSummary(tool_version=get_tool_version(), q_max=config.q_max)
    for stage in report["stages"]:
        run_summary.record_stage(stage["name"], stage["status"], pipeline.timings.get(stage["name"], 0.0))
        run_summary.warnings.extend(f"{stage['name']}: {f['name']}" for f in stage["flags"])
        if stage["status"] == "fail":
            run_summary.fail(stage["error"] or f"stage {stage['name']} failed")
    run_summary.write(summary_path)
    if config.output_path is not None:
        run_summary.print_final_line()

    return 0 if report["overall_status"] == "pass" else 1


def cmd_export_tables(args: Namespace) -> int:
    """Execute the export-tables command."""
    try:
        config = _load(args)
        pipeline = VerificationPipeline(config, restrictions=load_restrictions(config.restrictions_path))
        counts = TableExporter(pipeline, args.out_dir).export_all()
    except ConfigurationError as e:
        logger.error(f"Configuration error: {e}")
        return 2
    except TableExportError as e:
        logger.error(f"Table export failed: {e}")
        return 1
    logger.info(f"Exported {len(counts)} tables to {args.out_dir}")
    return 0


def cmd_show_config(args: Namespace) -> int:
    """Execute the show-config command."""
    try:
        config = load_restrictions(args.restrictions)
    except ConfigurationError as e:
        logger.error(f"Configuration error: {e}")
        return 2
    sys.stdout.write(yaml.safe_dump(config.to_dict(), sort_keys=True))
    return 0


def main() -> int:
    """Main entry point for the CLI."""
    parser = create_parser()
    args = parser.parse_args()

    # Setup logging early
    log_config = LoggingConfig(
        format=getattr(args, "log_format", "console"),
        artifacts_dir=getattr(args, "artifacts_dir", Path("run_artifacts")),
    )
    setup_logging(log_config)

    artifacts_dir = getattr(args, "artifacts_dir", Path("run_artifacts"))
    artifacts_dir.mkdir(parents=True, exist_ok=True)
    summary_path = artifacts_dir / "run_summary.json"

    try:
        if args.command == "run":
            return cmd_run(args)
        elif args.command == "export-tables":
            return cmd_export_tables(args)
        elif args.command == "show-config":
            return cmd_show_config(args)
        else:
            parser.print_help()
            return 1
    except KeyboardInterrupt:
        logger.info("Operation cancelled by user")
        if not summary_path.exists():
            create_minimal_summary("Operation cancelled by user").write(summary_path)
        return 130
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        if not summary_path.exists():
            create_minimal_summary(str(e)).write(summary_path)
        return 1


if __name__ == "__main__":
    sys.exit(main())
