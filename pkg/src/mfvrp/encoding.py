"""Unified permutation encoding shared by all tasks, and its CVRP decoding.

A genome is a permutation of {1..D_max}. Projecting onto a task keeps the
values {1..D_k} in order; decoding splits the projected permutation into
capacity-feasible routes greedily, left to right.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "RoutePlan",
    "EvalCounter",
    "project",
    "split_decode",
    "evaluate_plan",
    "unified_evaluate",
]


class EvalCounter:
    """Mutable evaluation counter owned by a single solver run."""

    __slots__ = ("count",)

    def __init__(self):
        self.count = 0


@dataclass(frozen=True)
class RoutePlan:
    """Capacity-feasible routes over a task's clients, in visit order."""

    routes: tuple  # of tuples of client ids
    loads: tuple  # per-route total demand

    def flatten(self):
        return [c for route in self.routes for c in route]


def project(genome, task_size: int):
    """Order-preserving projection of a unified genome onto a task.

    Keeps exactly the values {1..task_size}, so the result is a permutation
    of that task's client ids.
    """
    perm = np.asarray(genome)
    return perm[perm <= task_size]


def split_decode(task_perm, instance) -> RoutePlan:
    """Greedy left-to-right split of a client permutation into routes.

    Clients are appended to the current route in permutation order; the
    route is closed as soon as the next client would overflow the vehicle
    capacity. Flattening the result reproduces the input permutation.
    """
    demands = instance.demands
    capacity = instance.capacity
    routes = []
    loads = []
    current = []
    load = 0
    for c in task_perm:
        c = int(c)
        d = demands[c]
        if d > capacity:
            raise ValueError(f"client {c} demand {d} exceeds vehicle capacity {capacity}")
        if load + d > capacity:
            routes.append(tuple(current))
            loads.append(load)
            current = [c]
            load = d
        else:
            current.append(c)
            load += d
    if current:
        routes.append(tuple(current))
        loads.append(load)
    return RoutePlan(routes=tuple(routes), loads=tuple(loads))


def evaluate_plan(plan: RoutePlan, distances) -> int:
    """Total rounded-Euclidean tour cost of a route plan (depot arcs included)."""
    n = distances.shape[0]
    total = 0
    for route in plan.routes:
        prev = 0
        for c in route:
            if not 0 < c < n:
                raise ValueError(f"client id {c} outside 1..{n - 1}")
            total += int(distances[prev, c])
            prev = c
        total += int(distances[prev, 0])
    return total


def unified_evaluate(genome, task, counter: EvalCounter | None = None) -> int:
    """Cost of a unified genome on one task: project, split, evaluate.

    Counts as exactly one objective function evaluation against the run's
    budget when a counter is supplied.
    """
    if counter is not None:
        counter.count += 1
    task_perm = project(genome, task.instance.n_clients)
    plan = split_decode(task_perm, task.instance)
    return evaluate_plan(plan, task.distances)
