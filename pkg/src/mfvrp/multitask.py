"""Shared multitasking bookkeeping: tasks, per-individual metrics, skills.

Every individual carries one cost per task (infinity where never evaluated),
1-based per-task ranks, a scalar fitness of 1/best-rank, and a skill factor
naming the task it ranks best on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .encoding import EvalCounter
from .instances import CvrpInstance, build_distance_matrix

__all__ = [
    "Task",
    "TaskSet",
    "PopulationMember",
    "full_evaluate",
    "rank_members",
    "update_fitness_and_skill",
    "balanced_skill_assignment",
]


@dataclass(frozen=True)
class Task:
    """One CVRP instance plus its precomputed arc matrix and fast lookups."""

    instance: CvrpInstance
    distances: np.ndarray
    _dist_rows: list = field(init=False, repr=False, compare=False)
    _demands: list = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        # Plain nested lists beat ndarray indexing for the short routes
        # decoded in the evaluation inner loop.
        object.__setattr__(self, "_dist_rows", self.distances.tolist())
        object.__setattr__(self, "_demands", list(self.instance.demands))

    @property
    def size(self) -> int:
        return self.instance.n_clients

    def cost(self, genome) -> int:
        """Greedy-split route cost of a unified genome on this task.

        Equivalent to encoding.unified_evaluate but fused for the solver
        inner loop.
        """
        size = self.size
        dem = self._demands
        cap = self.instance.capacity
        dm = self._dist_rows
        total = 0
        prev = 0
        load = 0
        for v in genome:
            if v <= size:
                d = dem[v]
                if load + d > cap:
                    total += dm[prev][0]
                    prev = 0
                    load = 0
                total += dm[prev][v]
                prev = v
                load += d
        return total + dm[prev][0]


class TaskSet:
    """Ordered collection of tasks optimized simultaneously."""

    def __init__(self, tasks):
        tasks = tuple(tasks)
        if not tasks:
            raise ValueError("a task set needs at least one task")
        self.tasks = tasks

    @classmethod
    def from_instances(cls, instances) -> "TaskSet":
        return cls(Task(inst, build_distance_matrix(inst)) for inst in instances)

    @property
    def n_tasks(self) -> int:
        return len(self.tasks)

    @property
    def d_max(self) -> int:
        return max(task.size for task in self.tasks)

    def __iter__(self):
        return iter(self.tasks)

    def __len__(self):
        return len(self.tasks)

    def __getitem__(self, k):
        return self.tasks[k]


@dataclass
class PopulationMember:
    """A unified genome with its per-task metrics."""

    genome: list
    factorial_costs: list  # cost per task, math.inf where never evaluated
    factorial_ranks: list | None = None
    scalar_fitness: float = 0.0
    skill: int = -1

    @classmethod
    def fresh(cls, genome, n_tasks) -> "PopulationMember":
        return cls(genome=genome, factorial_costs=[math.inf] * n_tasks)


def full_evaluate(population, taskset: TaskSet, counter: EvalCounter) -> None:
    """Evaluate every member on every task (N x K evaluations)."""
    for member in population:
        member.factorial_costs = [task.cost(member.genome) for task in taskset]
        counter.count += len(taskset)


def factorial_ranks_for_task(costs) -> list:
    """1-based ranks by ascending cost; ties and infinities break by index."""
    order = sorted(range(len(costs)), key=lambda i: (costs[i], i))
    ranks = [0] * len(costs)
    for position, i in enumerate(order, start=1):
        ranks[i] = position
    return ranks


def rank_members(population, n_tasks: int) -> None:
    """Populate factorial_ranks for each member across all tasks."""
    for member in population:
        member.factorial_ranks = [0] * n_tasks
    for k in range(n_tasks):
        ranks = factorial_ranks_for_task([m.factorial_costs[k] for m in population])
        for member, rank in zip(population, ranks):
            member.factorial_ranks[k] = rank


def fitness_and_skill(ranks) -> tuple:
    """Scalar fitness 1/min-rank and the lowest task index attaining it."""
    best = min(ranks)
    return 1.0 / best, ranks.index(best)


def update_fitness_and_skill(population) -> None:
    for member in population:
        member.scalar_fitness, member.skill = fitness_and_skill(member.factorial_ranks)


def balanced_skill_assignment(population, n_tasks: int) -> None:
    """Commit members to tasks so per-task counts differ by at most one.

    Tasks claim members round-robin in index order; each claim takes the
    best-ranked member, on that task, not yet assigned. Requires ranks.
    """
    n = len(population)
    by_task = [
        sorted(range(n), key=lambda i, k=k: (population[i].factorial_ranks[k], i))
        for k in range(n_tasks)
    ]
    cursors = [0] * n_tasks
    assigned = [False] * n
    remaining = n
    task = 0
    while remaining:
        order = by_task[task]
        cursor = cursors[task]
        while assigned[order[cursor]]:
            cursor += 1
        cursors[task] = cursor + 1
        chosen = order[cursor]
        assigned[chosen] = True
        population[chosen].skill = task
        remaining -= 1
        task = (task + 1) % n_tasks
