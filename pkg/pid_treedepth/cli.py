import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Sequence

import click
from rich import box
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from pid_treedepth import __version__
from pid_treedepth.core import IndexRegistry, RunOptions, SolveResult
from pid_treedepth.graph import Graph, GraphFormatError, parse_gr
from pid_treedepth.oracle import validate_decomposition
from pid_treedepth.pace import parse_tree_output, write_tree_output
from pid_treedepth.solver import solve_treedepth

# stdout carries only the decomposition; everything human-facing goes here.
console = Console(stderr=True)

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]
EXIT_INVALID = 2


def _configure_logging(level: str) -> None:
    root = logging.getLogger()
    for handler in list(root.handlers):
        if isinstance(handler, RichHandler):
            root.removeHandler(handler)
    root.addHandler(RichHandler(console=console, show_path=False, show_time=False))
    root.setLevel(level)


def _read_text(path: Optional[Path]) -> str:
    try:
        return sys.stdin.read() if path is None else path.read_text(encoding="utf-8")
    except (UnicodeDecodeError, OSError) as e:
        raise click.ClickException(f"{path or '<stdin>'}: cannot read input ({e})") from e


def _read_graph(input_path: Optional[Path]) -> Graph:
    text = _read_text(input_path)
    try:
        return parse_gr(text)
    except GraphFormatError as e:
        raise click.ClickException(f"{input_path or '<stdin>'}: {e}") from e


class DefaultGroup(click.Group):
    """Group that falls back to ``default_command`` when no known subcommand is named.

    ``pid-treedepth g.gr``, ``pid-treedepth --no-trie < g.gr`` and a bare
    ``pid-treedepth`` all run ``solve``.
    """

    default_command = "solve"

    def parse_args(self, ctx, args):
        if not args:
            args = [self.default_command]
        return super().parse_args(ctx, args)

    def resolve_command(self, ctx, args):
        if args and args[0] not in self.commands:
            args = [self.default_command, *args]
        return super().resolve_command(ctx, args)


@click.group(cls=DefaultGroup, context_settings={"ignore_unknown_options": True})
@click.option("--log-level", default="WARNING", envvar="PID_TREEDEPTH_LOG_LEVEL",
              type=click.Choice(LOG_LEVELS, case_sensitive=False), help="Diagnostic log level (stderr)")
@click.version_option(__version__, prog_name="pid-treedepth")
def cli(log_level):
    """Exact treedepth solver using positive-instance driven dynamic programming"""
    _configure_logging(log_level.upper())


@cli.command("solve")
@click.argument("input_path", required=False, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--no-domination", is_flag=True, help="Disable the domination filter")
@click.option("--no-trie", is_flag=True, help="Combine candidates by linear scan instead of the trie")
@click.option("--start-depth", default=1, envvar="PID_TREEDEPTH_START_DEPTH", type=click.IntRange(min=1),
              help="First depth to try (default: 1)")
@click.option("--validate", "validate_output", is_flag=True, help="Self-check the decomposition before exiting")
@click.option("--stats", is_flag=True, help="Print per-level statistics to stderr")
@click.option("--presolve", default="none", type=click.Choice(["none"]), help="Heuristic presolve (none only)")
@click.option("--workers", default=1, envvar="PID_TREEDEPTH_WORKERS", type=click.IntRange(min=1),
              help="Threads for solving separate components")
@click.option("--export", "export_path", default=None, type=click.Path(dir_okay=False, path_type=Path),
              help="Export a JSON run report")
@click.pass_context
def solve(ctx, input_path, no_domination, no_trie, start_depth, validate_output, stats, presolve, workers, export_path):
    """Solve a PACE .gr graph (file or stdin) and print depth + parent list"""
    options = RunOptions(
        domination_enabled=not no_domination, use_trie=not no_trie, start_depth=start_depth,
        validate_output=validate_output, stats=stats, input_path=input_path,
        workers=workers, presolve=presolve, export_path=export_path,
    )
    graph = _read_graph(options.input_path)
    if graph.n == 0:
        raise click.ClickException("graph has no vertices")
    result = solve_treedepth(graph, options)

    write_tree_output(result.depth, result.forest, sys.stdout)
    sys.stdout.flush()

    if options.stats:
        _print_stats(graph, result, options)
    if options.export_path:
        _export(graph, result, options)
    if options.validate_output and not validate_decomposition(graph, result.forest):
        console.print("[red]✗ Self-check failed: output is not a valid treedepth decomposition[/red]")
        ctx.exit(EXIT_INVALID)


@cli.command("verify")
@click.argument("graph_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("tree_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.pass_context
def verify(ctx, graph_path, tree_path):
    """Check a decomposition file against a PACE .gr graph"""
    graph = _read_graph(graph_path)
    try:
        forest = parse_tree_output(_read_text(tree_path), graph.n)
    except GraphFormatError as e:
        raise click.ClickException(f"{tree_path}: {e}") from e

    if validate_decomposition(graph, forest):
        console.print(f"[green]✓ Valid treedepth decomposition of depth {forest.depth}[/green]")
        return
    console.print("[red]✗ Invalid treedepth decomposition[/red]")
    ctx.exit(EXIT_INVALID)


@cli.command("indexes")
def list_indexes():
    """List available combination indexes"""
    table = Table(title="Combination Indexes", box=box.ROUNDED)
    table.add_column("Name", style="cyan")
    table.add_column("Class")
    table.add_column("Description")
    for kind, index_cls in IndexRegistry.all().items():
        doc = (index_cls.__doc__ or "").strip().splitlines()
        table.add_row(kind.value, index_cls.__name__, doc[0] if doc else "")
    console.print(table)


def _print_stats(graph: Graph, result: SolveResult, options: RunOptions):
    table = Table(box=box.ROUNDED, show_lines=False, padding=(0, 1))
    table.add_column("Comp", justify="right")
    table.add_column("k", justify="right", style="cyan")
    table.add_column("Level", justify="right")
    table.add_column("Candidates", justify="right")
    table.add_column("Queries", justify="right")
    table.add_column("Visited", justify="right")
    table.add_column("States", justify="right")
    table.add_column("Time", justify="right")

    for s in result.levels:
        table.add_row(str(s.component), str(s.budget), str(s.level), f"{s.candidates:,}",
                      f"{s.queries:,}", f"{s.visited:,}", f"{s.states:,}", f"{s.duration_seconds:.2f}s")

    table.add_row("", "", "", "", "", "", "", "")
    table.add_row("[bold]TOTAL[/bold]", "", "", f"[bold]{result.total_candidates:,}[/bold]",
                  f"[bold]{result.total_queries:,}[/bold]", f"[bold]{result.total_visited:,}[/bold]", "",
                  f"[bold]{result.duration_seconds:.2f}s[/bold]")

    console.print(Panel(
        table,
        title=f"[bold cyan]Treedepth {result.depth}[/bold cyan]",
        subtitle=(f"[dim]n={graph.n} m={graph.edge_count} | components={result.components} | "
                  f"index={options.index_kind.value} | domination={'on' if options.domination_enabled else 'off'}[/dim]"),
        box=box.DOUBLE,
    ))


def _export(graph: Graph, result: SolveResult, options: RunOptions):
    report = {
        "tool": "pid-treedepth",
        "version": __version__,
        "run_time": datetime.now(timezone.utc).isoformat(),
        "graph": {"n": graph.n, "m": graph.edge_count},
        "options": options.to_dict(),
        "result": result.to_dict(),
    }
    with open(options.export_path, "w") as f:
        json.dump(report, f, indent=2, default=str)
    console.print(f"[green]Report exported to {options.export_path}[/green]")


def run_cli(args: Optional[Sequence[str]] = None) -> int:
    """Run the command line and return its exit code (1 on input or usage errors)."""
    try:
        rv = cli.main(args=list(args) if args is not None else None,
                      prog_name="pid-treedepth", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return 1
    except click.Abort:
        return 1
    return rv if isinstance(rv, int) else 0


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
