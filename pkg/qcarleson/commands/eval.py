"""
Eval command - evaluate a slice series or a closed-form kernel at a point.

Usage:
    qcarleson eval --series f.json --q 0,0.3,0,0
    qcarleson eval --kernel K --w 0,0.5,0,0 --q 0.1,0,0.2,0 --p 2
"""

import json
from pathlib import Path
from typing import Optional

import typer

from ..core.constants import EXIT_CHECK_FAILED, EXIT_CONFIG_ERROR
from ..core.kernels import KernelSpec
from ..core.quaternion import qnorm
from ..core.series import OutOfDisk, SliceSeries
from ..utils.formatting import console, create_key_value_table, parse_quaternion, print_error, print_json


def load_function(series: Optional[Path], kernel: Optional[str], w: Optional[str]):
    if (series is None) == (kernel is None):
        raise ValueError("give exactly one of --series and --kernel")
    if series is not None:
        try:
            return SliceSeries.from_json(json.loads(series.read_text()))
        except (OSError, json.JSONDecodeError, KeyError) as e:
            raise ValueError(f"cannot read series from {series}: {e}") from e
    if w is None:
        raise ValueError("--kernel needs --w")
    return KernelSpec(kernel, parse_quaternion(w))


def eval_cmd(
    q: str = typer.Option(..., "--q", help="Point as w,x,y,z"),
    series: Optional[Path] = typer.Option(None, "--series", help="Series JSON {coeffs, radius}"),
    kernel: Optional[str] = typer.Option(None, "--kernel", help="Kernel kind: K, H, k or h"),
    w: Optional[str] = typer.Option(None, "--w", help="Kernel parameter as w,x,y,z"),
    p: float = typer.Option(1.0, "--p", help="Exponent for |f(q)|^p"),
):
    """Evaluate f(q) and |f(q)|^p."""
    try:
        f = load_function(series, kernel, w)
        point = parse_quaternion(q)
    except ValueError as e:
        print_error(str(e))
        raise typer.Exit(EXIT_CONFIG_ERROR)

    try:
        value = f(point)
    except (OutOfDisk, ArithmeticError) as e:
        print_error(str(e))
        raise typer.Exit(EXIT_CHECK_FAILED)

    modulus = float(qnorm(value))
    result = {"q": point.tolist(), "value": value.tolist(), "abs": modulus, "abs_p": modulus ** p, "p": p}
    console.print(create_key_value_table({"f(q)": value.round(12).tolist(), "|f(q)|": modulus}))
    print_json(result)
