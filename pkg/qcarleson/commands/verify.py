"""
Verify command - run the verification suite and write its reports.

Usage:
    qcarleson verify                        : Run every check
    qcarleson verify --only kernels,algebra : Run a selection
    qcarleson verify --seed 7 --out DIR     : Fix the seed and output directory
"""

from typing import Optional

import typer

from ..core.config import ConfigInvalid
from ..core.constants import EXIT_CONFIG_ERROR
from ..core.suite import SuiteConfig, emit, run_suite
from ..utils.formatting import (
    console,
    create_status_table,
    format_verdict,
    print_error,
    print_section_header,
    print_success,
    print_warning,
)


def _split_ids(only: Optional[str]):
    if only is None:
        return None
    return [part.strip() for part in only.split(",") if part.strip()]


def verify_cmd(
    only: Optional[str] = typer.Option(None, "--only", help="Comma-separated check identifiers"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Global seed (default from config)"),
    out: Optional[str] = typer.Option(None, "--out", help="Output directory for report files"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Parallel checks (default from config)"),
):
    """Run the verification suite; exit 1 if any check fails."""
    try:
        config = SuiteConfig.from_manager(only=_split_ids(only), seed=seed, workers=workers, output_dir=out)
    except ConfigInvalid as e:
        print_error(str(e))
        raise typer.Exit(EXIT_CONFIG_ERROR)

    print_section_header(f"qcarleson verify (seed {config.seed})")
    report = run_suite(config)
    written = emit(report, config.output_dir)

    rows = [
        {
            "id": r.check_id,
            "status": format_verdict(r.status),
            "detail": r.error or ", ".join(r.failures + [f["name"] for f in r.findings]),
            "time": f"{report.timings.get(r.check_id, 0.0):.1f}s",
        }
        for r in report.results
    ]
    if rows:
        console.print(create_status_table(rows, [
            {"name": "Check", "key": "id", "style": "cyan"},
            {"name": "Status", "key": "status"},
            {"name": "Failures / findings", "key": "detail", "style": "dim"},
            {"name": "Time", "key": "time", "justify": "right"},
        ]))

    counts = report.to_json()["summary"]
    summary = f"{counts['pass']} pass, {counts['finding']} finding, {counts['fail']} fail"
    if report.failed:
        print_error(summary)
    elif counts["finding"]:
        print_warning(summary)
    else:
        print_success(summary)
    console.print(f"[dim]Reports: {', '.join(str(p) for p in written.values())}[/dim]")
    raise typer.Exit(report.exit_code)
