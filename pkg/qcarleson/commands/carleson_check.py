"""
Carleson-check command - scan one Carleson condition for a measure.

Usage:
    qcarleson carleson-check --measure mu.json --condition hardy-box
    qcarleson carleson-check --measure mu.json --condition ball --beta 4 --r 0.5
"""

import dataclasses
import json
from pathlib import Path
from typing import Optional

import typer

from ..core.carleson import CarlesonGrid, check_ball, check_bergman_tube, check_hardy_box, check_slice_box
from ..core.config import ConfigInvalid, ConfigManager
from ..core.constants import EXIT_CONFIG_ERROR
from ..core.measures import measure_from_json
from ..utils.formatting import console, create_key_value_table, print_error, print_json

CONDITIONS = {
    "hardy-box": check_hardy_box,
    "slice-box": check_slice_box,
    "tube": check_bergman_tube,
    "ball": check_ball,
}


def carleson_check_cmd(
    measure: Path = typer.Option(..., "--measure", help="Measure JSON file"),
    condition: str = typer.Option(..., "--condition", help="hardy-box, slice-box, tube or ball"),
    beta: Optional[float] = typer.Option(None, "--beta", help="Exponent for the ball condition"),
    r: Optional[float] = typer.Option(None, "--r", help="Tube and ball radius (default from config)"),
    threshold: Optional[float] = typer.Option(None, "--threshold", help="Report bounded iff sup <= threshold"),
):
    """Sup of the Carleson ratio over the scan grid, with its witness region."""
    try:
        if condition not in CONDITIONS:
            raise ValueError(f"condition must be one of {', '.join(CONDITIONS)}")
        if condition == "ball" and beta is None:
            raise ValueError("the ball condition needs --beta")
        data = json.loads(measure.read_text())
        mu = measure_from_json(data)
        grid = CarlesonGrid.from_config(ConfigManager().get_grid_config())
        if r is not None:
            grid = dataclasses.replace(grid, tube_radius=r, ball_radius=r)
    except (OSError, json.JSONDecodeError, KeyError, ValueError, ConfigInvalid) as e:
        print_error(f"cannot run {condition}: {e}")
        raise typer.Exit(EXIT_CONFIG_ERROR)

    if condition == "ball":
        report = check_ball(mu, beta, grid, threshold)
    else:
        report = CONDITIONS[condition](mu, grid, threshold)

    console.print(create_key_value_table({
        "condition": report.condition,
        "sup ratio": report.sup_ratio,
        "witness": report.witness.to_json(),
        "verdict": report.verdict,
    }, title=f"{mu.kind} measure"))
    print_json(report.to_json())
