"""Shared pieces for the two multitask solvers."""

from __future__ import annotations

from dataclasses import dataclass

from .instances import CvrpInstance
from .multitask import Task, TaskSet

__all__ = ["SolverResult", "as_taskset"]


@dataclass
class SolverResult:
    """Outcome of one solver run.

    best_costs/best_genomes hold the best solution found per task over the
    whole run; history[k] is the per-task best cost sampled once per
    generation (MFEA) or per grid sweep (MFCGA), always non-increasing.
    """

    best_costs: list
    best_genomes: list
    evaluations: int
    history: list


def as_taskset(tasks) -> TaskSet:
    """Coerce a TaskSet, an iterable of instances, or of tasks."""
    if isinstance(tasks, TaskSet):
        return tasks
    tasks = list(tasks)
    if not tasks:
        raise ValueError("need at least one task")
    if isinstance(tasks[0], CvrpInstance):
        return TaskSet.from_instances(tasks)
    if isinstance(tasks[0], Task):
        return TaskSet(tasks)
    raise TypeError(f"cannot build a task set from {type(tasks[0]).__name__}")


def check_probability(value, name):
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must be in [0, 1], got {value}")


def check_budget(budget, population_size, n_tasks):
    if budget <= population_size * n_tasks:
        raise ValueError(
            f"evaluation_budget ({budget}) must exceed the initial full "
            f"evaluation cost ({population_size} x {n_tasks})")
