"""
Norm command - Hardy or Bergman norm of a kernel or series.

Usage:
    qcarleson norm --space hardy --p 2 --kernel K --w 0,0.5,0,0
    qcarleson norm --space bergman --p 1 --kernel H --w 0,0,0.9,0 --grid 64,512,96
"""

from pathlib import Path
from typing import Optional

import typer

from ..core.constants import EXIT_CHECK_FAILED, EXIT_CONFIG_ERROR
from ..core.kernels import KernelSpec, kernel_norm_squared
from ..core.norms import Divergent, NormGrid, bergman_norm, hardy_norm
from ..utils.formatting import console, create_key_value_table, print_error, print_json
from .eval import load_function

SPACES = ("hardy", "bergman")


def norm_cmd(
    space: str = typer.Option(..., "--space", help="hardy or bergman"),
    p: float = typer.Option(..., "--p", help="Exponent p > 0"),
    kernel: Optional[str] = typer.Option(None, "--kernel", help="Kernel kind: K, H, k or h"),
    w: Optional[str] = typer.Option(None, "--w", help="Kernel parameter as w,x,y,z"),
    series: Optional[Path] = typer.Option(None, "--series", help="Series JSON instead of a kernel"),
    grid: Optional[str] = typer.Option(None, "--grid", help="nI,nTheta,nR"),
    normalized: bool = typer.Option(False, "--normalized", help="Hardy norm with the 1/(2 pi) factor"),
):
    """Estimate ||f||_p on the Hardy or Bergman space."""
    try:
        if space not in SPACES:
            raise ValueError(f"space must be one of {', '.join(SPACES)}")
        f = load_function(series, kernel, w)
        norm_grid = NormGrid.parse(grid, normalized) if grid else NormGrid(normalized=normalized)
    except ValueError as e:
        print_error(str(e))
        raise typer.Exit(EXIT_CONFIG_ERROR)

    try:
        estimate = hardy_norm(f, p, norm_grid) if space == "hardy" else bergman_norm(f, p, norm_grid)
    except (Divergent, ValueError) as e:
        print_error(str(e))
        raise typer.Exit(EXIT_CHECK_FAILED)

    result = estimate.to_json()
    if isinstance(f, KernelSpec) and f.intrinsic and p == 2.0:
        # Parseval reference for K and H
        result["closed_form"] = kernel_norm_squared(f.kind, f.w, space, normalized) ** 0.5

    console.print(create_key_value_table({
        "space": space,
        "p": p,
        "norm": estimate.value,
        "error": estimate.error,
        "sup witness": estimate.sup_witness.to_json(),
    }))
    print_json(result)
