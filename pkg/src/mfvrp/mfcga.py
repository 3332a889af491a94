"""Multifactorial cellular GA on a toroidal Moore grid, with transfer ledger."""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator

from .base import SolverResult, as_taskset, check_budget
from .encoding import EvalCounter
from .multitask import (
    PopulationMember,
    balanced_skill_assignment,
    full_evaluate,
    rank_members,
    update_fitness_and_skill,
)
from .operators import order_crossover, random_genome, rng_stream, two_opt_mutation

__all__ = ["MooreGrid", "TransferLedger", "MfcgaSolver", "auto_grid_shape"]

# Fixed neighbor offset order (radius-1 Moore neighborhood, row-major).
_OFFSETS = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))


class MooreGrid:
    """Toroidal grid over population indices, row-major, radius-1 neighbors."""

    def __init__(self, rows: int, cols: int):
        if rows < 1 or cols < 1:
            raise ValueError("grid dimensions must be positive")
        self.rows = rows
        self.cols = cols

    @property
    def size(self) -> int:
        return self.rows * self.cols

    def cell(self, index: int) -> tuple:
        return divmod(index, self.cols)

    def index(self, row: int, col: int) -> int:
        return (row % self.rows) * self.cols + (col % self.cols)

    def neighbors(self, index: int) -> list:
        """The 8 Moore neighbors of a cell, in fixed offset order."""
        r, c = self.cell(index)
        return [self.index(r + dr, c + dc) for dr, dc in _OFFSETS]

    def sweep_order(self) -> list:
        """Row-major visiting order used by the asynchronous update loop."""
        return list(range(self.size))


class TransferLedger:
    """Counts of positive replacements, keyed by (target skill, source skill).

    crossover_events[t, s] counts crossover children that replaced an
    incumbent committed to task t using a neighbor committed to task s;
    mutation_improvements[t] counts mutant replacements on task t.
    """

    def __init__(self, n_tasks: int):
        self.n_tasks = n_tasks
        self.crossover_events = np.zeros((n_tasks, n_tasks), dtype=np.int64)
        self.mutation_improvements = np.zeros(n_tasks, dtype=np.int64)

    def record_crossover(self, target: int, source: int) -> None:
        self.crossover_events[target, source] += 1

    def record_mutation(self, target: int) -> None:
        self.mutation_improvements[target] += 1

    @property
    def total_crossover(self) -> int:
        return int(self.crossover_events.sum())

    @property
    def total_mutation(self) -> int:
        return int(self.mutation_improvements.sum())


def auto_grid_shape(population_size: int) -> tuple:
    """Most-square factorization rows x cols with rows <= cols."""
    rows = int(math.isqrt(population_size))
    while rows > 1 and population_size % rows:
        rows -= 1
    return rows, population_size // rows


class MfcgaSolver(BaseEstimator):
    """Multifactorial cellular GA with mandatory crossover and mutation.

    The population lives on a toroidal Moore grid. Skill factors are fixed
    by a balanced assignment right after the initial full evaluation, so
    every task keeps the same share of the population for the whole run.
    Cells are swept asynchronously in row-major order: each cell mates with
    a uniform random neighbor (order crossover), mutates itself (one 2-opt
    move), evaluates both children on its own task only, and keeps the
    strictly best of the three. Crossover wins ties against the mutant;
    the incumbent wins all other ties. Each replacement is recorded in the
    transfer ledger.

    Parameters
    ----------
    population_size : int, default 200
    grid_shape : (rows, cols) or None
        Must tile population_size with rows, cols >= 3. None picks the
        most-square factorization (10 x 20 at the default size).
    evaluation_budget : int, default 50000
        Total evaluations including the initial full evaluation; the sweep
        stops before any update that would exceed it.
    random_state : int, RandomState or None

    Attributes
    ----------
    best_costs_, best_genomes_, evaluations_, history_, result_ : as in MfeaSolver.
    transfer_ledger_ : TransferLedger for this run.
    grid_ : MooreGrid used by the run.
    skill_census_ : members committed to each task (constant over the run).
    """

    def __init__(self, population_size=200, grid_shape=None,
                 evaluation_budget=50000, random_state=None):
        self.population_size = population_size
        self.grid_shape = grid_shape
        self.evaluation_budget = evaluation_budget
        self.random_state = random_state

    def fit(self, tasks):
        taskset = as_taskset(tasks)
        n = self.population_size
        n_tasks = taskset.n_tasks
        shape = self.grid_shape if self.grid_shape is not None else auto_grid_shape(n)
        rows, cols = int(shape[0]), int(shape[1])
        if rows * cols != n:
            raise ValueError(f"grid {rows}x{cols} does not tile population of {n}")
        if rows < 3 or cols < 3:
            raise ValueError("grid needs rows >= 3 and cols >= 3 for distinct Moore neighbors")
        check_budget(self.evaluation_budget, n, n_tasks)

        rng = rng_stream(self.random_state)
        grid = MooreGrid(rows, cols)
        neighborhoods = [grid.neighbors(i) for i in range(n)]
        counter = EvalCounter()

        population = [
            PopulationMember.fresh(random_genome(rng, taskset.d_max), n_tasks)
            for _ in range(n)
        ]
        full_evaluate(population, taskset, counter)
        rank_members(population, n_tasks)
        update_fitness_and_skill(population)
        balanced_skill_assignment(population, n_tasks)

        best_costs = [min(m.factorial_costs[k] for m in population) for k in range(n_tasks)]
        best_genomes = [None] * n_tasks
        for k in range(n_tasks):
            for m in population:
                if m.factorial_costs[k] == best_costs[k]:
                    best_genomes[k] = list(m.genome)
                    break
        history = [[c] for c in best_costs]
        ledger = TransferLedger(n_tasks)

        budget = self.evaluation_budget
        sweeps = 0
        exhausted = False
        while not exhausted:
            for i in grid.sweep_order():
                if counter.count + 2 > budget:
                    exhausted = True
                    break
                incumbent = population[i]
                neighbor = population[neighborhoods[i][int(rng.randint(0, 8))]]
                crossed = order_crossover(incumbent.genome, neighbor.genome, rng)
                mutated = two_opt_mutation(incumbent.genome, rng)
                t = incumbent.skill
                task = taskset[t]
                cost_x = task.cost(crossed)
                cost_m = task.cost(mutated)
                counter.count += 2

                here = incumbent.factorial_costs[t]
                if cost_x < here and cost_x <= cost_m:
                    self._replace(incumbent, crossed, cost_x, t, n_tasks)
                    ledger.record_crossover(t, neighbor.skill)
                elif cost_m < here:
                    self._replace(incumbent, mutated, cost_m, t, n_tasks)
                    ledger.record_mutation(t)
                new_cost = incumbent.factorial_costs[t]
                if new_cost < best_costs[t]:
                    best_costs[t] = new_cost
                    best_genomes[t] = list(incumbent.genome)
            sweeps += 1
            for k in range(n_tasks):
                history[k].append(best_costs[k])

        census = [0] * n_tasks
        for m in population:
            census[m.skill] += 1

        self.taskset_ = taskset
        self.best_costs_ = best_costs
        self.best_genomes_ = best_genomes
        self.evaluations_ = counter.count
        self.history_ = history
        self.transfer_ledger_ = ledger
        self.grid_ = grid
        self.skill_census_ = census
        self.n_sweeps_ = sweeps
        self.result_ = SolverResult(best_costs=best_costs, best_genomes=best_genomes,
                                    evaluations=counter.count, history=history)
        return self

    @staticmethod
    def _replace(member, genome, cost, task_index, n_tasks):
        member.genome = genome
        member.factorial_costs = [math.inf] * n_tasks
        member.factorial_costs[task_index] = cost
