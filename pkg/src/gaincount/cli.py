import json
import os
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any

import typer
import yaml
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.tree import Tree

from .activities import activities, default_order, forest_expansion, spanning_forests
from .coloring import ColorFilter, chi_from_q, count_proper_bruteforce, count_proper_mobius
from .dichromatic import q_total_delcon, q_total_subset, weight_monomial
from .gain_graph import lat_b
from .lattice import format_vector
from .main import (
    DuplicateKeyError,
    FormatError,
    load_arrangement,
    load_filter,
    load_graph,
    load_weighted_graph,
    parse_matrix_option,
    parse_ordering,
    parse_vector_option,
)
from .orthotope import (
    chi_common_bound,
    chi_graph_no_gains,
    chi_piecewise,
    count_lists,
    count_lists_bounded,
    count_lists_bounded_bruteforce,
    count_lists_bruteforce,
    count_matrix,
    count_matrix_bruteforce,
    count_orthotope,
    count_orthotope_bruteforce,
    count_orthotope_intervals,
    list_count_under,
)
from .switching import contract
from .utils import VerificationError
from .verify import SUITES, run_suites

app = typer.Typer()
console = Console()
error_console = Console(stderr=True)


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Maps library errors to exit codes: 1 for input files, 2 for semantic errors, 3 for failed checks."""
    try:
        yield
    except FileNotFoundError as e:
        error_console.print(f"[bold red]Error:[/] File not found: {e}")
        raise typer.Exit(code=1) from e
    except (FormatError, DuplicateKeyError, yaml.YAMLError) as e:
        error_console.print(f"[bold red]Error parsing input:[/] {e}")
        raise typer.Exit(code=1) from e
    except VerificationError as e:
        error_console.print(f"[bold red]Verification failed:[/] {e}")
        raise typer.Exit(code=3) from e
    except ValueError as e:
        error_console.print(f"[bold red]Error:[/] {e}")
        raise typer.Exit(code=2) from e


def _input_path(ctx: typer.Context) -> str:
    if ctx.obj is None:
        error_console.print("[bold red]Error:[/] This command needs an input file. Use --input.")
        raise typer.Exit(code=1)
    return ctx.obj


def _debug(ctx: typer.Context, message: str):
    if ctx.meta.get("verbose", False):
        console.print(f"[dim]DEBUG: {message}[/dim]")


def _machine(ctx: typer.Context) -> bool:
    return ctx.meta.get("format") == "machine"


def _print_json(data: Any):
    print(json.dumps(data, indent=2, sort_keys=True))


def _agree(name: str, value: int, oracle: int):
    if value != oracle:
        raise VerificationError(f"{name} gives {value} but brute force counts {oracle}")


@app.callback(invoke_without_command=True)
def main(
    ctx: typer.Context,
    input_path: str | None = typer.Option(
        None, "--input", "-i", help="Graph or arrangement file (YAML or JSON), or fixture:<name>."
    ),
    format: str = typer.Option("human", "--format", help="Output format (human, machine)."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose output."),
):
    if ctx.invoked_subcommand is None:
        welcome_message = (
            "[bold green]Gaincount[/bold green]\n"
            "Exact counting with weighted gain graphs.\n\n"
            "[bold]Discover commands:[/bold] `gaincount --help`\n"
            "[bold]Try a bundled input:[/bold] `gaincount -i fixture:phi-star qpoly`"
        )
        panel = Panel(
            welcome_message,
            title="[bold cyan]Gaincount[/bold cyan]",
            subtitle="[italic]Dichromatic polynomials and lattice-point counts[/italic]",
            border_style="blue",
            expand=False,
        )
        console.print(panel)
        return

    if format not in ("human", "machine"):
        error_console.print(f"[bold red]Error:[/] Invalid output format: {format}")
        raise typer.Exit(code=1)
    ctx.meta["verbose"] = verbose
    ctx.meta["format"] = format
    if verbose:
        os.environ["GAINCOUNT_DEBUG"] = "1"
    ctx.obj = input_path


@app.command(name="qpoly")
def qpoly_command(
    ctx: typer.Context,
    semigroup: str | None = typer.Option(None, "--semigroup", "-s", help="Override the weight semigroup."),
):
    """Prints the total dichromatic polynomial, computed by subsets and by deletion-contraction."""
    path = _input_path(ctx)
    with _exit_codes():
        wg = load_weighted_graph(path, semigroup)
        _debug(ctx, f"Loaded {wg.graph!r} weighted by '{wg.semigroup.tag}'")
        by_subsets = q_total_subset(wg)
        by_delcon = q_total_delcon(wg)
        if by_subsets != by_delcon:
            raise VerificationError(f"Subset expansion {by_subsets} differs from deletion-contraction {by_delcon}")
        _debug(ctx, "Subset expansion and deletion-contraction agree")
    if _machine(ctx):
        _print_json({"polynomial": by_subsets.to_dict()})
    else:
        print(by_subsets)


@app.command(name="forest")
def forest_command(
    ctx: typer.Context,
    order: str | None = typer.Option(None, "--order", "-o", help="Edge ordering as 1-based positions, e.g. 3,1,2."),
    tree: bool = typer.Option(False, "--tree", "-t", help="Show each spanning forest and its activity."),
):
    """Prints the forest expansion for an edge ordering."""
    path = _input_path(ctx)
    with _exit_codes():
        wg = load_weighted_graph(path)
        g = wg.graph
        edge_order = default_order(g) if order is None else parse_ordering(order, g.num_edges)
        _debug(ctx, f"Edge order: {', '.join(g.edges[e].label for e in edge_order)}")  # type: ignore[misc]
        expansion = forest_expansion(wg, edge_order)
        forests = []
        for f in spanning_forests(g):
            report = activities(g, f, edge_order)
            forests.append((f, report, weight_monomial(contract(wg, f))))

    if _machine(ctx):
        _print_json(
            {
                "order": [g.edges[e].label for e in edge_order],
                "polynomial": expansion.to_dict(),
                "forests": [
                    {"edges": g.labels_of(f), "activities": report.to_dict(g), "weights": str(mono)}
                    for f, report, mono in forests
                ],
            }
        )
        return
    if tree:
        view = Tree(f"[bold green]Spanning forests[/] ({len(forests)})")
        for f, report, mono in forests:
            branch = view.add(f"[bold]{{{', '.join(g.labels_of(f))}}}[/]")
            branch.add(f"[cyan]epsilon:[/] {report.epsilon}  [cyan]EA:[/] {', '.join(g.labels_of(report.ea))}")
            branch.add(f"[cyan]weights:[/] {mono}")
        console.print(view)
    print(expansion)


@app.command(name="mobius")
def mobius_command(ctx: typer.Context):
    """Prints the closed balanced edge sets with their Möbius values."""
    path = _input_path(ctx)
    with _exit_codes():
        g = load_graph(path)
        lat = lat_b(g)
    if _machine(ctx):
        _print_json(lat.to_dict())
        return
    table = Table(title="Closed balanced sets")
    table.add_column("B")
    table.add_column("mu", justify="right")
    for b in lat:
        table.add_row("{" + ", ".join(g.labels_of(b)) + "}", str(lat.mu(b)))
    console.print(table)


@app.command(name="chi")
def chi_command(
    ctx: typer.Context,
    m: str | None = typer.Option(None, "--m", help="Upper bounds, rows separated by ';' (overrides the file filter)."),
    check: bool = typer.Option(False, "--check", help="Also enumerate colorations by brute force."),
):
    """Counts proper list colorations by Möbius inversion and from the dichromatic polynomial."""
    path = _input_path(ctx)
    with _exit_codes():
        wg = load_weighted_graph(path)
        filt = ColorFilter.ideals(parse_matrix_option(m, wg.n, wg.d)) if m else load_filter(path, wg)
        _debug(ctx, f"Filter: {filt!r}")
        value = count_proper_mobius(wg, filt)
        from_q = chi_from_q(wg, filt)
        if value != from_q:
            raise VerificationError(f"Möbius count {value} differs from the dichromatic evaluation {from_q}")
        brute = count_proper_bruteforce(wg, filt) if check else None
        if brute is not None:
            _agree("Möbius inversion", value, brute)
    if _machine(ctx):
        _print_json({"count": value, "bruteforce": brute})
    else:
        print(value)


@app.command(name="count-orthotope")
def count_orthotope_command(
    ctx: typer.Context,
    m: str = typer.Option(..., "--m", help="Comma-separated bounds m_1,...,m_n."),
    h: str | None = typer.Option(None, "--h", help="Comma-separated lower bounds (default 0)."),
    check: bool = typer.Option(False, "--check", help="Also count by enumeration."),
):
    """Counts integer points of a box that lie on no hyperplane."""
    path = _input_path(ctx)
    with _exit_codes():
        arr = load_arrangement(path).arrangement
        upper = [x[0] for x in parse_matrix_option(m, arr.n, 1)]
        lower = [x[0] for x in parse_matrix_option(h, arr.n, 1, "--h")] if h else None
        value = count_orthotope(arr, upper) if lower is None else count_orthotope_intervals(arr, lower, upper)
        brute = count_orthotope_bruteforce(arr, upper, lower) if check else None
        if brute is not None:
            _agree("The orthotope count", value, brute)
    if _machine(ctx):
        _print_json({"count": value, "bruteforce": brute})
    else:
        print(value)


@app.command(name="count-lists")
def count_lists_command(
    ctx: typer.Context,
    bounded: bool = typer.Option(False, "--bounded", help="Cut finite or cofinite lists at --m."),
    m: str | None = typer.Option(None, "--m", help="Comma-separated bounds, needed with --bounded."),
    check: bool = typer.Option(False, "--check", help="Also count by enumeration."),
):
    """Counts points of the product of the stored lists that lie on no hyperplane."""
    path = _input_path(ctx)
    with _exit_codes():
        stored = load_arrangement(path)
        arr = stored.arrangement
        lists = stored.lists(bounded)
        if bounded:
            if m is None:
                raise FormatError("--bounded needs --m")
            upper = [x[0] for x in parse_matrix_option(m, arr.n, 1)]
            value = count_lists_bounded(arr, lists, upper)
            brute = count_lists_bounded_bruteforce(arr, lists, upper) if check else None
        else:
            value = count_lists(arr, lists)
            brute = count_lists_bruteforce(arr, lists) if check else None
        if brute is not None:
            _agree("The list count", value, brute)
    if _machine(ctx):
        _print_json({"count": value, "bruteforce": brute})
    else:
        print(value)


@app.command(name="count-matrix")
def count_matrix_command(
    ctx: typer.Context,
    h: str | None = typer.Option(None, "--h", help="Lower-bound matrix, rows separated by ';'."),
    m: str | None = typer.Option(None, "--m", help="Upper-bound matrix, rows separated by ';'."),
    check: bool = typer.Option(False, "--check", help="Also count by enumeration."),
):
    """Counts integer matrices H <= X <= M whose rows avoid every stored subspace."""
    path = _input_path(ctx)
    with _exit_codes():
        stored = load_arrangement(path)
        arr = stored.arrangement
        lower = parse_matrix_option(h, arr.n, arr.d, "--h") if h else stored.h
        upper = parse_matrix_option(m, arr.n, arr.d) if m else stored.m
        if lower is None or upper is None:
            raise FormatError("count-matrix needs H and M, from the file or from --h and --m")
        value = count_matrix(arr, lower, upper)
        brute = count_matrix_bruteforce(arr, lower, upper) if check else None
        if brute is not None:
            _agree("The matrix count", value, brute)
    if _machine(ctx):
        _print_json({"count": value, "bruteforce": brute})
    else:
        print(value)


@app.command(name="piecewise")
def piecewise_command(
    ctx: typer.Context,
    m: str = typer.Option(..., "--m", help="Bounds, rows separated by ';' (a single row with --common-bound)."),
    common_bound: bool = typer.Option(False, "--common-bound", help="Use the same bound for every vertex."),
    no_gains: bool = typer.Option(False, "--no-gains", help="Simple graph with zero gains."),
    check: bool = typer.Option(False, "--check", help="Also count colorations below m exactly."),
):
    """Evaluates the piecewise counting polynomial with its threshold and chamber polynomial."""
    path = _input_path(ctx)
    with _exit_codes():
        wg = load_weighted_graph(path)
        if common_bound:
            bound = parse_vector_option(m, wg.d, "--m")
            result = chi_common_bound(wg, bound)
            rows = tuple(bound for _ in range(wg.n))
            polynomial = result.polynomial
            shown_threshold = format_vector(result.threshold)
        else:
            rows = parse_matrix_option(m, wg.n, wg.d)
            result = chi_graph_no_gains(wg, rows) if no_gains else chi_piecewise(wg, rows)
            polynomial = result.chamber_polynomial()
            shown_threshold = ", ".join(format_vector(t) for t in result.threshold)
        _debug(ctx, f"Bounds: {', '.join(format_vector(r) for r in rows)}")
        exact = list_count_under(wg, rows) if check else None
        if exact is not None and result.above_threshold and exact != result.value:
            raise VerificationError(f"p(m) = {result.value} but {exact} colorations lie below m")

    if _machine(ctx):
        data = result.to_dict()
        data["polynomial"] = polynomial.to_dict()
        data["exact"] = exact
        _print_json(data)
        return
    lines = [
        f"[bold]p(m):[/] {result.value}",
        f"[bold]Threshold:[/] {shown_threshold}",
        f"[bold]Above threshold:[/] {'yes' if result.above_threshold else 'no'}",
    ]
    if exact is not None:
        lines.append(f"[bold]Exact count:[/] {exact}")
    lines.append(f"[bold]Polynomial:[/] {polynomial}")
    console.print(Panel("\n".join(lines), title="[bold cyan]Piecewise count[/bold cyan]", expand=False))


@app.command(name="verify")
def verify_command(
    ctx: typer.Context,
    seed: int = typer.Option(0, "--seed", help="Seed for the random instances."),
    count: int | None = typer.Option(None, "--count", "-n", help="Instances per suite (default per suite)."),
    suite: list[str] | None = typer.Option(None, "--suite", help=f"Suite to run; repeatable. One of {list(SUITES)}."),
    max_n: int | None = typer.Option(None, "--max-n", help="Largest number of vertices."),
    max_e: int | None = typer.Option(None, "--max-e", help="Largest number of edges or hyperplanes."),
    max_d: int | None = typer.Option(None, "--max-d", help="Largest gain dimension."),
    dump_failures: Path | None = typer.Option(None, "--dump-failures", help="Directory for failing instances."),
):
    """Runs the randomized oracle-equivalence suites."""
    with _exit_codes():
        results = run_suites(
            suite or None,
            seed,
            count=count,
            max_n=max_n,
            max_e=max_e,
            max_d=max_d,
            dump_dir=dump_failures,
        )
    failed = [r for r in results if not r.ok]

    if _machine(ctx):
        _print_json({"seed": seed, "suites": [r.to_dict() for r in results]})
    else:
        table = Table(title=f"Verification (seed {seed})")
        table.add_column("Suite")
        table.add_column("Passed", justify="right")
        table.add_column("Failed", justify="right")
        for r in results:
            table.add_row(r.name, str(r.passed), f"[red]{r.failed}[/]" if r.failed else "0")
        console.print(table)
        for r in failed:
            error_console.print(f"[bold red]{r.name} failed:[/]")
            for message in r.failures[:10]:
                error_console.print(f"- {message}")

    if failed:
        raise typer.Exit(code=3)
    if not _machine(ctx):
        console.print("[bold green]All suites passed![/]")
