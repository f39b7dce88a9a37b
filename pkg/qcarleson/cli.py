from typing import Optional
import sys
import typer
from rich import print as rprint

from qcarleson import __version__
from qcarleson.utils.logging import get_logger, setup_logging
from qcarleson.commands.verify import verify_cmd
from qcarleson.commands.constants import constants_cmd
from qcarleson.commands.eval import eval_cmd
from qcarleson.commands.norm import norm_cmd
from qcarleson.commands.geometry import geometry_cmd
from qcarleson.commands.carleson_check import carleson_check_cmd
from qcarleson.commands.counterexample import counterexample_cmd
from qcarleson.commands.config import config_app


def version_callback(value: bool):
    if value:
        rprint(f"[bold cyan]qcarleson[/bold cyan] version [green]{__version__}[/green]")
        raise typer.Exit()


app = typer.Typer(
    name="qcarleson",
    help="Slice regular function theory on the quaternionic ball and a Carleson-measure verification suite",
    no_args_is_help=True,
    rich_markup_mode="rich"
)


@app.callback()
def main_callback(
    version: Optional[bool] = typer.Option(
        None, "--version",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit"
    ),
    verbose: bool = typer.Option(False, "--verbose", help="Debug logging on the console"),
):
    """qcarleson - quaternionic Hardy and Bergman Carleson measures"""
    if verbose:
        get_logger().set_verbose(True)


app.command("verify")(verify_cmd)
app.command("constants")(constants_cmd)
app.command("eval")(eval_cmd)
app.command("norm")(norm_cmd)
app.command("geometry")(geometry_cmd)
app.command("carleson-check")(carleson_check_cmd)
app.command("counterexample")(counterexample_cmd)
app.add_typer(config_app, name="config")


def _setup_logging():
    """Set up logging based on config."""
    try:
        from qcarleson.core.config import ConfigManager

        logging_config = ConfigManager().get_logging_config()

        if not logging_config.get("enabled", True):
            return

        setup_logging(
            level=logging_config.get("level", "INFO"),
            verbose="--verbose" in sys.argv,
            log_to_file=bool(logging_config.get("file", False))
        )
    except Exception:
        # An unreadable config is reported by the command itself
        pass


def main():
    _setup_logging()
    app()


if __name__ == "__main__":
    main()
