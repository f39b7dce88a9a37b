"""
Report files.

    report.json     the SuiteReport, canonical form
    timings.json    per-check runtimes in seconds
    checks.csv      id,status,failures,findings,error
    constants.csv   constant,alpha_w,alpha_x,alpha_y,alpha_z,r,value
    scaling.csv     y,d,scale,eta_ball,eta_tube,fitted_exponent
"""

import csv
from pathlib import Path
from typing import Dict, List, Optional

from .envelopes import ConstantsTable
from .runner import SuiteReport, canonical_dumps

EMIT_FORMATS = ("json", "csv")

CHECKS_COLUMNS = ("id", "status", "failures", "findings", "error")
CONSTANTS_COLUMNS = ("constant", "alpha_w", "alpha_x", "alpha_y", "alpha_z", "r", "value")
SCALING_COLUMNS = ("y", "d", "scale", "eta_ball", "eta_tube", "fitted_exponent")


def _write_csv(path: Path, columns, rows) -> Path:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)
    return path


def _number(x) -> str:
    return f"{float(x):.12g}"


def check_rows(report: SuiteReport) -> List[list]:
    return [
        [r.check_id, r.status, ";".join(r.failures), ";".join(f["name"] for f in r.findings), r.error or ""]
        for r in report.results
    ]


def scaling_rows(report: SuiteReport) -> List[list]:
    result = report.result("volume-sandwich")
    if result is None:
        return []
    return [[_number(row[c]) for c in SCALING_COLUMNS] for row in result.measured.get("scaling", [])]


def constant_rows(table: ConstantsTable) -> List[list]:
    return [[row.constant, *(_number(a) for a in row.alpha), _number(row.r), _number(row.value)]
            for row in table.rows]


def emit(
    report: Optional[SuiteReport],
    out_dir,
    formats=EMIT_FORMATS,
    constants: Optional[ConstantsTable] = None,
) -> Dict[str, Path]:
    """
    Write the requested report files under ``out_dir``.

    Args:
        report: Suite report, or None when only constants are written
        out_dir: Output directory, created if missing
        formats: Any of "json" and "csv"
        constants: Optional constants table for constants.csv

    Returns:
        Mapping of file name to written path
    """
    unknown = set(formats) - set(EMIT_FORMATS)
    if unknown:
        raise ValueError(f"unknown format(s): {', '.join(sorted(unknown))}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: Dict[str, Path] = {}

    if report is not None and "json" in formats:
        written["report.json"] = out / "report.json"
        written["report.json"].write_text(report.dumps())
        written["timings.json"] = out / "timings.json"
        written["timings.json"].write_text(canonical_dumps(report.timings))

    if "csv" in formats:
        if report is not None:
            written["checks.csv"] = _write_csv(out / "checks.csv", CHECKS_COLUMNS, check_rows(report))
            scaling = scaling_rows(report)
            if scaling:
                written["scaling.csv"] = _write_csv(out / "scaling.csv", SCALING_COLUMNS, scaling)
        if constants is not None:
            written["constants.csv"] = _write_csv(out / "constants.csv", CONSTANTS_COLUMNS, constant_rows(constants))

    return written
