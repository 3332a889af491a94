"""Command line front end: solve, report, similarity, heatmap.

Exit codes: 0 success, 1 usage error (bad flags or inputs), 2 runtime error.
"""

from __future__ import annotations

import os
import sys

import click

from . import harness
from .heatmap import render_transfer_svg
from .instances import instance_dir, load_instance, load_optima
from .analysis import parse_solution
from .testcases import TEST_CASES, INSTANCE_ORDER, testcase_instances

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


def _parse_grid(value):
    if value is None:
        return None
    try:
        rows, cols = value.lower().split("x")
        return int(rows), int(cols)
    except ValueError:
        raise click.UsageError(f"--grid expects RxC (e.g. 10x20), got {value!r}")


@click.group()
def cli():
    """Multitask CVRP experiment harness."""


@cli.command()
@click.option("--testcase", required=True, help="Test case id, e.g. TC_12.")
@click.option("--algo", type=click.Choice(["mfea", "mfcga", "both"]), default="both",
              show_default=True)
@click.option("--runs", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True,
              help="Base seed; run r uses seed + r.")
@click.option("--instances", "instances_dir", type=click.Path(), default=None,
              help="Directory of .vrp files (default: bundled data, or "
                   "$MFVRP_INSTANCES).")
@click.option("--out", "out_dir", type=click.Path(), required=True)
@click.option("--pop", type=int, default=200, show_default=True)
@click.option("--budget", type=int, default=50000, show_default=True)
@click.option("--grid", default=None, help="MFCGA grid as RxC (default: most square).")
@click.option("--rmp", type=float, default=0.3, show_default=True)
def solve(testcase, algo, runs, seed, instances_dir, out_dir, pop, budget, grid, rmp):
    """Run seeded batches of MFEA and/or MFCGA on a test case."""
    if testcase not in TEST_CASES:
        raise click.UsageError(
            f"unknown test case {testcase!r}; known: {', '.join(sorted(TEST_CASES))}")
    config = harness.ExperimentConfig(
        testcase=testcase, algorithm=algo, runs=runs, base_seed=seed,
        instances_dir=instances_dir, out_dir=out_dir, population_size=pop,
        evaluation_budget=budget, grid_shape=_parse_grid(grid), rmp=rmp)
    try:
        result = harness.run_experiment(config)
    except FileNotFoundError as exc:
        raise click.UsageError(str(exc))
    click.echo(f"wrote {len(result.records)} result rows to "
               f"{os.path.join(out_dir, 'results.csv')}")


@cli.command()
@click.option("--results", "results_dir", type=click.Path(), required=True,
              help="Directory holding results.csv and ledger CSVs from solve.")
@click.option("--out", "out_dir", type=click.Path(), default=None,
              help="Output directory (default: the results directory).")
@click.option("--optima", "optima_path", type=click.Path(), default=None,
              help="CSV of known optima (default: bundled file).")
def report(results_dir, out_dir, optima_path):
    """Summaries, sign table and rank-sum significance from solver results."""
    results_path = os.path.join(results_dir, "results.csv")
    if not os.path.exists(results_path):
        raise click.UsageError(f"no results.csv in {results_dir}")
    records = harness.read_results_csv(results_path)
    if not records:
        raise click.UsageError(f"results.csv in {results_dir} is empty")
    optima = load_optima(optima_path)
    task_names = list(testcase_instances(records[0].testcase))
    ledgers = []
    for r in sorted({rec.run for rec in records if rec.algo == "mfcga"}):
        path = os.path.join(results_dir, f"ledger_mfcga_run{r}.csv")
        if os.path.exists(path):
            ledgers.append(harness.read_ledger_csv(path, task_names))
    out_dir = out_dir or results_dir
    harness.build_report(records, out_dir, optima=optima, ledgers=ledgers,
                         task_names=task_names)
    click.echo(f"report written to {out_dir}")


@cli.command()
@click.option("--instances", "instances_dir", type=click.Path(), default=None)
@click.option("--out", "out_dir", type=click.Path(), required=True)
@click.option("--solutions", "solutions_dir", type=click.Path(), default=None,
              help="Directory of .sol files; enables the solution overlap table.")
def similarity(instances_dir, out_dir, solutions_dir):
    """Client-overlap table for all instance pairs, plus arc overlap of solutions."""
    directory = instance_dir(instances_dir)
    instances = []
    for name in INSTANCE_ORDER:
        path = os.path.join(directory, name + ".vrp")
        if not os.path.exists(path):
            raise click.UsageError(f"instance file not found: {path}")
        instances.append(load_instance(path))
    os.makedirs(out_dir, exist_ok=True)
    harness.write_client_overlap_csv(
        os.path.join(out_dir, "client_overlap.csv"), instances)
    outputs = ["client_overlap.csv"]
    if solutions_dir:
        routes_by_name = {}
        for inst in instances:
            sol_path = os.path.join(solutions_dir, inst.name + ".sol")
            if not os.path.exists(sol_path):
                raise click.UsageError(f"solution file not found: {sol_path}")
            with open(sol_path) as fh:
                routes_by_name[inst.name] = parse_solution(fh.read())
        harness.write_solution_overlap_csv(
            os.path.join(out_dir, "solution_overlap.csv"), instances, routes_by_name)
        outputs.append("solution_overlap.csv")
    click.echo(f"wrote {', '.join(outputs)} to {out_dir}")


@cli.command()
@click.option("--input", "input_path", type=click.Path(), required=True,
              help="Aggregated transfer CSV (transfer_mean.csv from report).")
@click.option("--out", "out_path", type=click.Path(), required=True)
def heatmap(input_path, out_path):
    """Render the transfer-intensity circle matrix as an SVG."""
    if not os.path.exists(input_path):
        raise click.UsageError(f"no such file: {input_path}")
    names, crossover, _mutation = harness.read_transfer_mean_csv(input_path)
    svg = render_transfer_svg(crossover, names)
    with open(out_path, "w") as fh:
        fh.write(svg)
    click.echo(f"wrote {out_path}")


def main(argv=None):
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:  # --help and friends
        return exc.exit_code
    except (click.UsageError, click.BadParameter) as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except (ValueError, KeyError, OSError) as exc:
        click.echo(f"runtime error: {exc}", err=True)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
