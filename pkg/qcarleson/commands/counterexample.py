"""
Counterexample command - build the disjoint-tube measure and profile it.

Usage:
    qcarleson counterexample --r 0.3 --eps 0.5 --tubes 8 --out mu.json
"""

from pathlib import Path
from typing import Optional

import typer

from ..core.carleson import profile_counterexample
from ..core.constants import COUNTEREXAMPLE_GRID_STEP, EXIT_CHECK_FAILED, EXIT_CONFIG_ERROR
from ..core.measures import GridExhausted, build_counterexample, measure_to_json
from ..core.quaternion import I_AXIS
from ..core.suite import canonical_dumps
from ..utils.formatting import console, create_status_table, parse_quaternion, print_error, print_json, print_success


def counterexample_cmd(
    r: float = typer.Option(0.3, "--r", help="Tube radius in (0, 1)"),
    eps: float = typer.Option(0.5, "--eps", help="Mass exponent offset in (0, 4)"),
    tubes: int = typer.Option(8, "--tubes", help="Number of tubes"),
    axis: Optional[str] = typer.Option(None, "--axis", help="Imaginary unit of the centres as w,x,y,z"),
    grid_step: float = typer.Option(COUNTEREXAMPLE_GRID_STEP, "--grid-step", help="Search grid for the centres"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the measure JSON here"),
    profile: bool = typer.Option(False, "--profile", help="Also print the per-tube profile"),
):
    """Tubes Delta(I y_k, r) carrying mass delta_k^(4 - eps)."""
    try:
        unit = parse_quaternion(axis)[1:] if axis else I_AXIS
        measure = build_counterexample(r, eps, tubes, unit, grid_step)
    except GridExhausted as e:
        print_error(str(e))
        raise typer.Exit(EXIT_CHECK_FAILED)
    except ValueError as e:
        print_error(str(e))
        raise typer.Exit(EXIT_CONFIG_ERROR)

    data = measure_to_json(measure)
    rows = [{"k": k + 1, "y": y, "scale": s, "mass": m}
            for k, (y, s, m) in enumerate(zip(measure.centers, measure.scales, measure.masses))]

    if profile:
        summary = profile_counterexample(measure)
        data["profile"] = summary.to_json()
        for row, tube, box, ball in zip(rows, summary.tube_ratios, summary.box_ratios, summary.ball_masses):
            row.update({"tube ratio": tube, "box ratio": box, "ball mass": ball})

    columns = [{"name": "k", "key": "k", "style": "cyan"}] + [
        {"name": name, "key": name, "justify": "right"} for name in rows[0] if name != "k"
    ]
    console.print(create_status_table(rows, columns, title=f"r = {r:g}, eps = {eps:g}"))

    if out:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(canonical_dumps(data))
        print_success(f"Wrote {out}")
    else:
        print_json(data)
