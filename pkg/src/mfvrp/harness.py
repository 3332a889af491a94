"""Experiment orchestration: seeded batch runs, CSV persistence, reports."""

from __future__ import annotations

import csv
import math
import os
import time
from dataclasses import dataclass, field

import numpy as np

from . import analysis
from .instances import instance_dir, load_instance, load_optima
from .mfcga import MfcgaSolver, TransferLedger
from .mfea import MfeaSolver
from .multitask import TaskSet
from .testcases import testcase_instances

__all__ = [
    "ExperimentConfig",
    "RunRecord",
    "run_experiment",
    "write_results_csv",
    "read_results_csv",
    "write_ledger_csv",
    "read_ledger_csv",
    "build_report",
    "write_transfer_mean_csv",
    "read_transfer_mean_csv",
    "write_client_overlap_csv",
    "write_solution_overlap_csv",
]

RESULTS_HEADER = ["testcase", "algo", "run", "seed", "instance", "best_cost", "evals", "wall_ms"]
LEDGER_HEADER = ["run", "target_task", "source_task", "count", "kind"]


@dataclass
class ExperimentConfig:
    """One batch of seeded runs for a test case."""

    testcase: str
    algorithm: str = "both"  # mfea | mfcga | both
    runs: int = 20
    base_seed: int = 0
    instances_dir: str | None = None
    out_dir: str | None = None
    population_size: int = 200
    evaluation_budget: int = 50000
    grid_shape: tuple | None = None
    rmp: float = 0.3

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.algorithm not in ("mfea", "mfcga", "both"):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")

    @property
    def algorithms(self):
        return ("mfea", "mfcga") if self.algorithm == "both" else (self.algorithm,)


@dataclass
class RunRecord:
    testcase: str
    algo: str
    run: int
    seed: int
    instance: str
    best_cost: int
    evals: int
    wall_ms: int


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    instances: list
    records: list = field(default_factory=list)
    ledgers: dict = field(default_factory=dict)  # run index -> TransferLedger
    best_genomes: dict = field(default_factory=dict)  # (algo, run) -> per-task genomes


def load_taskset(testcase: str, instances_override=None) -> tuple:
    """Resolve a test case to (instance names, parsed instances, TaskSet)."""
    names = testcase_instances(testcase)
    directory = instance_dir(instances_override)
    instances = []
    for name in names:
        path = os.path.join(directory, name + ".vrp")
        if not os.path.exists(path):
            raise FileNotFoundError(f"instance file not found: {path}")
        instances.append(load_instance(path))
    return names, instances, TaskSet.from_instances(instances)


def _make_solver(algo: str, config: ExperimentConfig, seed: int):
    if algo == "mfea":
        return MfeaSolver(population_size=config.population_size,
                          evaluation_budget=config.evaluation_budget,
                          rmp=config.rmp, random_state=seed)
    return MfcgaSolver(population_size=config.population_size,
                       grid_shape=config.grid_shape,
                       evaluation_budget=config.evaluation_budget,
                       random_state=seed)


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Run the configured (algorithm, seed) grid; write CSVs when out_dir is set.

    Run r of every algorithm uses seed base_seed + r, so the two solvers are
    compared on paired seeds.
    """
    names, instances, taskset = load_taskset(config.testcase, config.instances_dir)
    result = ExperimentResult(config=config, instances=instances)

    for algo in config.algorithms:
        for r in range(config.runs):
            seed = config.base_seed + r
            solver = _make_solver(algo, config, seed)
            started = time.perf_counter()
            solver.fit(taskset)
            wall_ms = int((time.perf_counter() - started) * 1000)
            for k, name in enumerate(names):
                result.records.append(RunRecord(
                    testcase=config.testcase, algo=algo, run=r, seed=seed,
                    instance=name, best_cost=int(solver.best_costs_[k]),
                    evals=int(solver.evaluations_), wall_ms=wall_ms))
            result.best_genomes[(algo, r)] = solver.best_genomes_
            if algo == "mfcga":
                result.ledgers[r] = solver.transfer_ledger_

    if config.out_dir:
        os.makedirs(config.out_dir, exist_ok=True)
        write_results_csv(os.path.join(config.out_dir, "results.csv"), result.records)
        for r, ledger in sorted(result.ledgers.items()):
            path = os.path.join(config.out_dir, f"ledger_mfcga_run{r}.csv")
            write_ledger_csv(path, ledger, r, names)
    return result


def write_results_csv(path, records) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RESULTS_HEADER)
        for rec in records:
            writer.writerow([rec.testcase, rec.algo, rec.run, rec.seed,
                             rec.instance, rec.best_cost, rec.evals, rec.wall_ms])


def read_results_csv(path):
    records = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            records.append(RunRecord(
                testcase=row["testcase"], algo=row["algo"], run=int(row["run"]),
                seed=int(row["seed"]), instance=row["instance"],
                best_cost=int(row["best_cost"]), evals=int(row["evals"]),
                wall_ms=int(row["wall_ms"])))
    return records


def write_ledger_csv(path, ledger: TransferLedger, run: int, task_names) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(LEDGER_HEADER)
        k = ledger.n_tasks
        for t in range(k):
            for s in range(k):
                writer.writerow([run, task_names[t], task_names[s],
                                 int(ledger.crossover_events[t, s]), "crossover"])
        for t in range(k):
            writer.writerow([run, task_names[t], task_names[t],
                             int(ledger.mutation_improvements[t]), "mutation"])


def read_ledger_csv(path, task_names) -> TransferLedger:
    index = {name: i for i, name in enumerate(task_names)}
    ledger = TransferLedger(len(task_names))
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            t = index[row["target_task"]]
            s = index[row["source_task"]]
            count = int(row["count"])
            if row["kind"] == "crossover":
                ledger.crossover_events[t, s] = count
            elif row["kind"] == "mutation":
                ledger.mutation_improvements[t] = count
            else:
                raise ValueError(f"unknown ledger kind {row['kind']!r}")
    return ledger


@dataclass
class InstanceSummary:
    instance: str
    algo: str
    mean: float
    best: int
    std: float
    optimum: int | None = None
    deviation: float | None = None


def summarize(records, optima=None):
    """Per (instance, algo) mean/best/std of best costs, in first-seen order."""
    groups = {}
    order = []
    for rec in records:
        key = (rec.instance, rec.algo)
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(rec.best_cost)
    summaries = []
    for instance, algo in order:
        costs = np.asarray(groups[(instance, algo)], dtype=float)
        mean = float(costs.mean())
        best = int(costs.min())
        std = float(costs.std(ddof=0))
        optimum = optima.get(instance) if optima else None
        deviation = (mean - optimum) / optimum if optimum else None
        summaries.append(InstanceSummary(instance, algo, mean, best, std,
                                         optimum, deviation))
    return summaries


def paired_samples(records):
    """(instance -> algo -> run-ordered best costs), validating run counts."""
    samples = {}
    for rec in records:
        samples.setdefault(rec.instance, {}).setdefault(rec.algo, {})[rec.run] = rec.best_cost
    out = {}
    counts = set()
    for instance, by_algo in samples.items():
        out[instance] = {}
        for algo, by_run in by_algo.items():
            runs = sorted(by_run)
            counts.add((algo, len(runs)))
            out[instance][algo] = [by_run[r] for r in runs]
    lengths = {c for _, c in counts}
    if len(lengths) > 1:
        raise ValueError(f"mismatched run counts between algorithms: {sorted(counts)}")
    return out


def build_report(records, out_dir, optima=None, alpha=analysis.ALPHA, ledgers=None,
                 task_names=None):
    """Emit summary/signs/significance tables (and transfer means) as CSVs."""
    os.makedirs(out_dir, exist_ok=True)
    if optima is None:
        try:
            optima = load_optima()
        except OSError:
            optima = {}

    summaries = summarize(records, optima)
    with open(os.path.join(out_dir, "summary.csv"), "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["instance", "algo", "mean", "best", "std", "optimum", "deviation"])
        for s in summaries:
            writer.writerow([
                s.instance, s.algo, f"{s.mean:.4f}", s.best, f"{s.std:.4f}",
                s.optimum if s.optimum is not None else "",
                f"{s.deviation:.6f}" if s.deviation is not None else ""])

    algos = sorted({rec.algo for rec in records})
    verdicts = {}
    signs = {}
    if set(algos) >= {"mfea", "mfcga"}:
        samples = paired_samples(records)
        instance_order = []
        for rec in records:
            if rec.instance not in instance_order:
                instance_order.append(rec.instance)
        with open(os.path.join(out_dir, "signs.csv"), "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["instance", "mfcga_mean", "mfea_mean", "sign"])
            for name in instance_order:
                mfcga_mean = float(np.mean(samples[name]["mfcga"]))
                mfea_mean = float(np.mean(samples[name]["mfea"]))
                sign = analysis.sign_from_means(mfcga_mean, mfea_mean)
                signs[name] = sign
                writer.writerow([name, f"{mfcga_mean:.4f}", f"{mfea_mean:.4f}", sign])
        with open(os.path.join(out_dir, "wilcoxon.csv"), "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["instance", "statistic", "p_value", "significant", "direction"])
            for name in instance_order:
                verdict = analysis.rank_sum_test(
                    samples[name]["mfcga"], samples[name]["mfea"], alpha=alpha)
                verdicts[name] = verdict
                direction = {0: "mfcga", 1: "mfea", None: ""}[verdict.direction]
                writer.writerow([name, f"{verdict.statistic:.1f}",
                                 f"{verdict.p_value:.6f}",
                                 str(verdict.significant).lower(), direction])

    if ledgers:
        crossover, mutation = analysis.aggregate_transfer(ledgers)
        write_transfer_mean_csv(os.path.join(out_dir, "transfer_mean.csv"),
                                crossover, mutation, task_names)
    return summaries, signs, verdicts


def write_transfer_mean_csv(path, crossover, mutation, task_names) -> None:
    n_tasks = len(task_names)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["target_task", "source_task", "mean_count", "kind"])
        for t in range(n_tasks):
            for s in range(n_tasks):
                writer.writerow([task_names[t], task_names[s],
                                 f"{float(crossover[t, s]):.4f}", "crossover"])
        for t in range(n_tasks):
            writer.writerow([task_names[t], task_names[t],
                             f"{float(mutation[t]):.4f}", "mutation"])


def read_transfer_mean_csv(path):
    """Returns (task_names, crossover matrix, mutation vector)."""
    rows = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            rows.append(row)
    names = []
    for row in rows:
        if row["target_task"] not in names:
            names.append(row["target_task"])
    index = {name: i for i, name in enumerate(names)}
    crossover = np.zeros((len(names), len(names)))
    mutation = np.zeros(len(names))
    seen_sources = set()
    for row in rows:
        t = index[row["target_task"]]
        if row["source_task"] not in index:
            raise ValueError(
                f"transfer matrix is not square: unknown source {row['source_task']!r}")
        s = index[row["source_task"]]
        seen_sources.add(row["source_task"])
        if row["kind"] == "crossover":
            crossover[t, s] = float(row["mean_count"])
        else:
            mutation[t] = float(row["mean_count"])
    if seen_sources != set(names):
        raise ValueError("transfer matrix is not square")
    return names, crossover, mutation


def write_client_overlap_csv(path, instances) -> None:
    """All-ordered-pairs client overlap table (row vs column instances)."""
    names = [inst.name for inst in instances]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["instance"] + names)
        for a in instances:
            row = [a.name]
            for b in instances:
                row.append(f"{analysis.client_overlap(a, b):.2f}")
            writer.writerow(row)


def write_solution_overlap_csv(path, instances, routes_by_name) -> None:
    names = [inst.name for inst in instances]
    by_name = {inst.name: inst for inst in instances}
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["instance"] + names)
        for a_name in names:
            row = [a_name]
            for b_name in names:
                value = analysis.solution_overlap(
                    routes_by_name[a_name], by_name[a_name],
                    routes_by_name[b_name], by_name[b_name])
                row.append(str(value))
            writer.writerow(row)
