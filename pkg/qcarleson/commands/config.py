"""
Config command - View and modify qcarleson configuration.

Usage:
    qcarleson config                   : Show the effective config
    qcarleson config show grids        : Show one section
    qcarleson config get <path>        : Get a specific value
    qcarleson config set <path> <val>  : Set a specific value
    qcarleson config unset <path>      : Remove a stored value
    qcarleson config path              : Print the config file location
"""

import typer
import yaml
from rich.tree import Tree

from ..core.config import CONFIG_PATH, ConfigInvalid, ConfigManager
from ..core.constants import EXIT_CHECK_FAILED, EXIT_CONFIG_ERROR
from ..utils.formatting import console, print_error, print_success, print_warning

config_app = typer.Typer(help="View and modify configuration")


def _render_value(value) -> str:
    """Render a value for display."""
    if isinstance(value, (dict, list)):
        return yaml.dump(value, default_flow_style=True, allow_unicode=True).strip()
    elif isinstance(value, bool):
        return "[green]true[/green]" if value else "[red]false[/red]"
    elif value is None:
        return "[dim]null[/dim]"
    else:
        return str(value)


def _build_tree(data: dict, tree: Tree):
    """Recursively build a rich tree from dict."""
    for key, value in data.items():
        if isinstance(value, dict):
            _build_tree(value, tree.add(f"[cyan]{key}[/cyan]"))
        else:
            tree.add(f"[cyan]{key}[/cyan]: {_render_value(value)}")


def _manager() -> ConfigManager:
    manager = ConfigManager()
    try:
        manager.load()
    except ConfigInvalid as e:
        print_error(str(e))
        raise typer.Exit(EXIT_CONFIG_ERROR)
    return manager


@config_app.callback(invoke_without_command=True)
def config_cmd(ctx: typer.Context):
    """View configuration. Use subcommands for specific operations."""
    if ctx.invoked_subcommand is not None:
        return

    manager = _manager()
    console.print("\n[bold cyan]qcarleson configuration[/bold cyan]")
    console.print(f"[dim]File: {manager.path}[/dim]\n")

    tree = Tree("[bold]config[/bold]")
    _build_tree(manager.effective(), tree)
    console.print(tree)

    console.print("\n[dim]Use 'qcarleson config show <section>' to view a specific section[/dim]")
    console.print("[dim]Use 'qcarleson config set <path> <value>' to modify[/dim]")


@config_app.command("show")
def show_cmd(
    section: str = typer.Argument(..., help="Config section (grids, tolerances, monte_carlo, suite, logging)")
):
    """Show a specific config section."""
    manager = _manager()
    data = manager.get_section(section)
    if not data:
        print_warning(f"Section '{section}' not found or empty.")
        console.print(f"\n[dim]Available sections: {', '.join(manager.list_keys())}[/dim]")
        raise typer.Exit(EXIT_CHECK_FAILED)

    tree = Tree(f"[bold]{section}[/bold]")
    _build_tree(data, tree)
    console.print(tree)


@config_app.command("get")
def get_cmd(
    path: str = typer.Argument(..., help="Dot-notation path (e.g., monte_carlo.seed)")
):
    """Get a specific config value."""
    value = _manager().get_value(path)
    if value is None:
        print_warning(f"'{path}' not found")
        raise typer.Exit(EXIT_CHECK_FAILED)
    console.print(f"[cyan]{path}[/cyan] = {_render_value(value)}")


@config_app.command("set")
def set_cmd(
    path: str = typer.Argument(..., help="Dot-notation path (e.g., grids.n_i)"),
    value: str = typer.Argument(..., help="Value to set (supports: true/false, numbers, lists a,b,c, strings)")
):
    """Set a specific config value."""
    manager = _manager()
    old_value = manager.get_value(path)
    manager.set_value(path, value)
    new_value = manager.get_value(path)

    if old_value is not None:
        console.print(f"[cyan]{path}[/cyan]: {_render_value(old_value)} → {_render_value(new_value)}")
    else:
        console.print(f"[cyan]{path}[/cyan] = {_render_value(new_value)} [dim](created)[/dim]")


@config_app.command("unset")
def unset_cmd(
    path: str = typer.Argument(..., help="Dot-notation path to remove")
):
    """Remove a stored config value; the default applies again."""
    if _manager().unset_value(path):
        print_success(f"Removed '{path}'")
    else:
        print_warning(f"'{path}' not found")
        raise typer.Exit(EXIT_CHECK_FAILED)


@config_app.command("path")
def path_cmd():
    """Print the config file location."""
    print(CONFIG_PATH.resolve())
