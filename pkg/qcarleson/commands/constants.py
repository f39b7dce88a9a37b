"""
Constants command - empirical envelopes of the geometry constants.

Usage:
    qcarleson constants              : Scan at r = 0.5 and print the envelopes
    qcarleson constants --out DIR    : Also write DIR/constants.csv
"""

from typing import Optional

import typer

from ..core.config import ConfigInvalid, ConfigManager
from ..core.constants import DEFAULT_SEED, EXIT_CHECK_FAILED, EXIT_CONFIG_ERROR
from ..core.suite import emit, estimate_constants
from ..utils.formatting import console, create_status_table, print_error, print_json, print_success


def constants_cmd(
    r: float = typer.Option(0.5, "--r", help="Pseudohyperbolic radius in (0, 1)"),
    out: Optional[str] = typer.Option(None, "--out", help="Directory for constants.csv"),
    samples: int = typer.Option(100_000, "--samples", help="Points per centre for C1"),
):
    """Estimate C1, c2/C2, c3/C3, c5/C5 and n0 as min/max envelopes."""
    try:
        seed = int(ConfigManager().get_monte_carlo_config().get("seed", DEFAULT_SEED))
    except ConfigInvalid as e:
        print_error(str(e))
        raise typer.Exit(EXIT_CONFIG_ERROR)

    try:
        table = estimate_constants(r, seed=seed, samples=samples)
    except ValueError as e:
        print_error(str(e))
        raise typer.Exit(EXIT_CHECK_FAILED)

    rows = [{"constant": name, "min": lo, "max": hi} for name, (lo, hi) in table.envelopes.items()]
    console.print(create_status_table(rows, [
        {"name": "Constant", "key": "constant", "style": "cyan"},
        {"name": "Min", "key": "min", "justify": "right"},
        {"name": "Max", "key": "max", "justify": "right"},
    ], title=f"Envelopes at r = {r:g}"))

    if out:
        written = emit(None, out, formats=("csv",), constants=table)
        print_success(f"Wrote {written['constants.csv']}")
    print_json({"r": r, "seed": seed, "envelopes": table.to_json()["envelopes"]})
