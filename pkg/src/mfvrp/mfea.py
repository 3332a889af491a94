"""Multifactorial evolutionary algorithm over the unified permutation space."""

from __future__ import annotations

import math

from sklearn.base import BaseEstimator

from .base import SolverResult, as_taskset, check_budget, check_probability
from .encoding import EvalCounter
from .multitask import (
    PopulationMember,
    full_evaluate,
    rank_members,
    update_fitness_and_skill,
)
from .operators import order_crossover, random_genome, rng_stream, two_opt_mutation

__all__ = ["MfeaSolver"]


class MfeaSolver(BaseEstimator):
    """Canonical MFEA: assortative mating, selective evaluation, elitism.

    Each generation the population is shuffled into pairs. A pair mates
    through order crossover when the crossover gate fires and the parents
    either share a skill factor or the random-mating gate fires; otherwise
    each parent yields one 2-opt mutant. Offspring are evaluated only on
    their inherited task, and the next population is the best half of
    parents plus offspring by scalar fitness.

    Parameters
    ----------
    population_size : int, default 200
        Number of individuals (must be even).
    crossover_prob : float, default 0.9
        Probability that a pair attempts crossover at all.
    mutation_prob : float, default 0.1
        Probability that a crossover child is additionally mutated.
    rmp : float, default 0.3
        Random mating probability: chance that parents with different
        skill factors still cross.
    evaluation_budget : int, default 50000
        Total objective function evaluations, including the initial full
        evaluation of the population on every task.
    random_state : int, RandomState or None
        Seed for the run's private random stream.

    Attributes
    ----------
    best_costs_ : list of int, best cost found per task.
    best_genomes_ : list of genomes achieving those costs.
    evaluations_ : int, evaluations actually consumed.
    history_ : per-task list of best cost after each generation.
    n_generations_ : number of offspring generations performed.
    result_ : SolverResult bundling the above.
    """

    def __init__(self, population_size=200, crossover_prob=0.9, mutation_prob=0.1,
                 rmp=0.3, evaluation_budget=50000, random_state=None):
        self.population_size = population_size
        self.crossover_prob = crossover_prob
        self.mutation_prob = mutation_prob
        self.rmp = rmp
        self.evaluation_budget = evaluation_budget
        self.random_state = random_state

    def fit(self, tasks):
        taskset = as_taskset(tasks)
        n = self.population_size
        n_tasks = taskset.n_tasks
        if n < 2 or n % 2:
            raise ValueError(f"population_size must be even and >= 2, got {n}")
        check_probability(self.crossover_prob, "crossover_prob")
        check_probability(self.mutation_prob, "mutation_prob")
        check_probability(self.rmp, "rmp")
        check_budget(self.evaluation_budget, n, n_tasks)

        rng = rng_stream(self.random_state)
        d_max = taskset.d_max
        counter = EvalCounter()

        population = [
            PopulationMember.fresh(random_genome(rng, d_max), n_tasks)
            for _ in range(n)
        ]
        full_evaluate(population, taskset, counter)
        rank_members(population, n_tasks)
        update_fitness_and_skill(population)

        best_costs = [min(m.factorial_costs[k] for m in population) for k in range(n_tasks)]
        best_genomes = [None] * n_tasks
        for k in range(n_tasks):
            for m in population:
                if m.factorial_costs[k] == best_costs[k]:
                    best_genomes[k] = list(m.genome)
                    break
        history = [[c] for c in best_costs]

        generations = 0
        while counter.count < self.evaluation_budget:
            order = rng.permutation(n)
            offspring = []
            for p in range(0, n, 2):
                pa = population[order[p]]
                pb = population[order[p + 1]]
                crossed = rng.rand() < self.crossover_prob and (
                    pa.skill == pb.skill or rng.rand() < self.rmp)
                if crossed:
                    for first, second in ((pa, pb), (pb, pa)):
                        genome = order_crossover(first.genome, second.genome, rng)
                        if rng.rand() < self.mutation_prob:
                            genome = two_opt_mutation(genome, rng)
                        skill = pa.skill if rng.rand() < 0.5 else pb.skill
                        offspring.append((genome, skill))
                else:
                    offspring.append((two_opt_mutation(pa.genome, rng), pa.skill))
                    offspring.append((two_opt_mutation(pb.genome, rng), pb.skill))

            children = []
            for genome, skill in offspring:
                cost = taskset[skill].cost(genome)
                counter.count += 1
                costs = [math.inf] * n_tasks
                costs[skill] = cost
                child = PopulationMember(genome=genome, factorial_costs=costs)
                children.append(child)
                if cost < best_costs[skill]:
                    best_costs[skill] = cost
                    best_genomes[skill] = list(genome)

            merged = population + children
            rank_members(merged, n_tasks)
            update_fitness_and_skill(merged)
            keep = sorted(
                range(len(merged)),
                key=lambda i: (min(merged[i].factorial_ranks),
                               merged[i].factorial_costs[merged[i].skill],
                               i),
            )[:n]
            population = [merged[i] for i in keep]

            generations += 1
            for k in range(n_tasks):
                history[k].append(best_costs[k])

        self.taskset_ = taskset
        self.best_costs_ = best_costs
        self.best_genomes_ = best_genomes
        self.evaluations_ = counter.count
        self.history_ = history
        self.n_generations_ = generations
        self.result_ = SolverResult(best_costs=best_costs, best_genomes=best_genomes,
                                    evaluations=counter.count, history=history)
        return self
