"""Command-line interface that runs a problem file and prints the report."""

import logging
import pathlib
import sys

import click
import rich
from rich.logging import RichHandler

from . import driver, syntax
from .exceptions import Error
from .saturation import write_jsonl

# helper functions =====================================================================


def print_error(message):
    rich.print(f"[red]{message}[/red]", file=sys.stderr)
    sys.exit(3)


def setup_logging(verbose):
    """Routes the package's log records through rich."""
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logger = logging.getLogger("fixdom")
    logger.setLevel(level)
    logger.handlers = [RichHandler(show_path=False, rich_tracebacks=False)]


def read_problem(problem, tptp):
    """Parses a problem file, or a bundled problem if no such file exists."""
    path = pathlib.Path(problem)
    if not path.exists():
        if problem in syntax.corpus():
            return syntax.load_problem(problem)
        print_error(f"No such problem file: {problem}")
    text = path.read_text(encoding="utf-8")
    if tptp or path.suffix in {".p", ".tptp"}:
        return syntax.parse_tptp(text)
    return syntax.parse_problem(text)


def parse_names(value):
    if value is None:
        return None
    return tuple(name.strip() for name in value.split(",") if name.strip())


def parse_weights(value):
    if value is None:
        return None
    weights = {}
    for item in parse_names(value):
        name, _, weight = item.partition("=")
        if not weight.strip().isdigit():
            print_error(f"Invalid weight '{item}', expected symbol=number")
        weights[name.strip()] = int(weight)
    return weights


def parse_tiebreak(value):
    if value is None or value == "declaration":
        return value
    return parse_names(value)


# main function =====================================================================


@click.command()
@click.argument("problem")
@click.option(
    "--mode",
    type=click.Choice(["first-order", "fixed-domain", "inductive"]),
    default=None,
    help="Semantics the conjecture is checked under. Default: fixed-domain.",
)
@click.option("--calculus", type=click.Choice(["sfd", "sfd-general"]), default=None)
@click.option("--induction", type=click.Choice(["off", "heuristic", "manual"]), default=None)
@click.option("--max-iterations", type=int, default=None)
@click.option("--max-clauses", type=int, default=None)
@click.option("--timeout", type=int, default=None, help="Time limit in seconds.")
@click.option("--ordering", type=click.Choice(["kbo", "lpo"]), default=None)
@click.option("--precedence", default=None, help="Symbols in increasing precedence, e.g. 'a,b,s'.")
@click.option("--kbo-weights", default=None, help="Symbol weights, e.g. 's=2,$var=1'.")
@click.option("--model-bound", type=int, default=None)
@click.option("--trace/--no-trace", default=None, help="Include the derivation trace.")
@click.option(
    "--alpha-tiebreak",
    default=None,
    help="'declaration' or existential variables in priority order, e.g. 'v,u'.",
)
@click.option(
    "--trace-jsonl",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="Write one JSON record per clause to this file.",
)
@click.option("--assume-free-constructors", is_flag=True, default=None)
@click.option("--tptp", is_flag=True, help="Read the problem as TPTP cnf clauses.")
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for every inference.")
def main(
    problem,
    mode,
    calculus,
    induction,
    max_iterations,
    max_clauses,
    timeout,
    ordering,
    precedence,
    kbo_weights,
    model_bound,
    trace,
    alpha_tiebreak,
    trace_jsonl,
    assume_free_constructors,
    tptp,
    verbose,
):
    """Decides whether the conjecture of PROBLEM follows from its axioms.

    PROBLEM is a problem file or the name of a bundled problem. The exit
    code is 0 for THEOREM, 1 for NON_THEOREM, 2 for GAVE_UP and 3 for
    input errors.
    """
    setup_logging(verbose)
    try:
        parsed = read_problem(problem, tptp)
        config = driver.configure(
            parsed,
            mode=mode,
            calculus=calculus,
            induction=induction,
            max_iterations=max_iterations,
            max_clauses=max_clauses,
            timeout=timeout,
            ordering=ordering,
            precedence=parse_names(precedence),
            weights=parse_weights(kbo_weights),
            model_bound=model_bound,
            trace=trace,
            alpha_tiebreak=parse_tiebreak(alpha_tiebreak),
            assume_free_constructors=assume_free_constructors,
        )
        report = driver.run(config, parsed)
    except Error as exc:
        print_error(f"Error: {exc}")

    if trace_jsonl is not None and report.state is not None:
        with open(trace_jsonl, "w", encoding="utf-8") as fileobj:
            write_jsonl(report.state, fileobj)

    click.echo(driver.format_report(report), nl=False)
    sys.exit(report.exit_code)


if __name__ == "__main__":
    main()
