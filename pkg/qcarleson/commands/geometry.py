"""
Geometry command - slice discs, tubes and pseudohyperbolic balls.

Usage:
    qcarleson geometry --region disc --alpha 0,0.9,0,0 --r 0.5
    qcarleson geometry --region ball --alpha 0,0.5,0,0 --r 0.5 --mc 200000 --seed 3
"""

from typing import Optional

import typer

from ..core.constants import EXIT_CHECK_FAILED, EXIT_CONFIG_ERROR
from ..core.geometry import disc_area_mc, disc_geometry, tube_slice_area
from ..core.volumes import ball_volume, ball_volume_mc, tube_volume, tube_volume_mc
from ..utils.formatting import console, create_key_value_table, parse_quaternion, print_error, print_json

REGIONS = ("ball", "tube", "disc")


def geometry_cmd(
    region: str = typer.Option(..., "--region", help="ball, tube or disc"),
    alpha: str = typer.Option(..., "--alpha", help="Centre as w,x,y,z"),
    r: float = typer.Option(..., "--r", help="Pseudohyperbolic radius in (0, 1)"),
    mc: Optional[int] = typer.Option(None, "--mc", help="Also run a Monte Carlo estimate with N samples"),
    seed: int = typer.Option(0, "--seed", help="Monte Carlo seed"),
):
    """Exact geometry of a region, with an optional Monte Carlo cross-check."""
    try:
        if region not in REGIONS:
            raise ValueError(f"region must be one of {', '.join(REGIONS)}")
        center = parse_quaternion(alpha)
        summary = disc_geometry(center, r)
    except ValueError as e:
        print_error(str(e))
        raise typer.Exit(EXIT_CONFIG_ERROR)

    result = {"region": region, "alpha": center.tolist(), "r": r, "disc": summary.to_json()}
    try:
        if region == "disc":
            result["area"] = summary.area
            if mc:
                value, sigma = disc_area_mc(center, r, mc, seed)
                result["monte_carlo"] = {"value": value, "sigma": sigma, "samples": mc}
        elif region == "tube":
            result["eta_volume"] = tube_volume(center, r)
            result["slice_area"] = tube_slice_area(center, r)
            if mc:
                result["monte_carlo"] = tube_volume_mc(center, r, mc, seed).to_json()
        else:
            result["eta_volume"] = ball_volume(center, r)
            if mc:
                result["monte_carlo"] = ball_volume_mc(center, r, mc, seed).to_json()
    except ValueError as e:
        print_error(str(e))
        raise typer.Exit(EXIT_CHECK_FAILED)

    shown = {k: v for k, v in result.items() if k not in ("disc", "monte_carlo", "alpha")}
    shown["d"] = summary.d
    shown["scale"] = summary.scale
    if "monte_carlo" in result:
        shown["monte carlo"] = f"{result['monte_carlo']['value']:.6g} ± {result['monte_carlo']['sigma']:.2g}"
    console.print(create_key_value_table(shown, title=f"{region} at {center.tolist()}"))
    print_json(result)
