"""Comparative analytics: rank-sum significance, signs, similarity measures."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RankSumResult",
    "rank_sum_test",
    "sign_from_means",
    "client_overlap",
    "solution_overlap",
    "aggregate_transfer",
    "parse_solution",
]

ALPHA = 0.05


@dataclass(frozen=True)
class RankSumResult:
    """Two-sided Wilcoxon rank-sum verdict.

    statistic is the rank sum of the first sample; direction is 0 or 1 for
    the sample with the lower mean rank (the better one under
    minimization), or None when mean ranks coincide.
    """

    statistic: float
    p_value: float
    significant: bool
    direction: int | None


def _midranks(values) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    order = np.argsort(values, kind="mergesort")
    ranks = np.empty(len(values), dtype=float)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def _exact_u_cdf(n1: int, n2: int, u: int) -> float:
    """P(U <= u) under the null, by counting rank arrangements.

    f(m, n, v) counts arrangements of m first-sample and n second-sample
    items with U = v: the top-ranked item is either a first-sample item
    (beating all n others) or a second-sample item (beating none).
    """
    max_u = n1 * n2
    u = min(u, max_u)
    if u < 0:
        return 0.0

    from functools import lru_cache

    @lru_cache(maxsize=None)
    def f(m, n, v):
        if v < 0:
            return 0
        if m == 0 or n == 0:
            return 1 if v == 0 else 0
        return f(m - 1, n, v - n) + f(m, n - 1, v)

    total = math.comb(n1 + n2, n1)
    acc = sum(f(n1, n2, v) for v in range(u + 1))
    f.cache_clear()
    return acc / total


def rank_sum_test(xs, ys, alpha: float = ALPHA) -> RankSumResult:
    """Two-sided Mann-Whitney/Wilcoxon rank-sum test.

    Uses the exact null distribution when the smaller sample has at most
    10 observations and there are no ties; otherwise a normal
    approximation with midranks, tie-corrected variance and continuity
    correction.
    """
    xs = list(map(float, xs))
    ys = list(map(float, ys))
    n1, n2 = len(xs), len(ys)
    if n1 < 3 or n2 < 3:
        raise ValueError("each sample needs at least 3 observations")

    pooled = xs + ys
    ranks = _midranks(pooled)
    r1 = float(ranks[:n1].sum())
    u1 = r1 - n1 * (n1 + 1) / 2.0
    u2 = n1 * n2 - u1

    mean_rank_x = r1 / n1
    mean_rank_y = (ranks[n1:].sum()) / n2
    if mean_rank_x < mean_rank_y:
        direction = 0
    elif mean_rank_y < mean_rank_x:
        direction = 1
    else:
        direction = None

    has_ties = len(set(pooled)) < n1 + n2
    if not has_ties and min(n1, n2) <= 10:
        u_small = int(round(min(u1, u2)))
        p = min(1.0, 2.0 * _exact_u_cdf(n1, n2, u_small))
    else:
        tie_counts = {}
        for v in pooled:
            tie_counts[v] = tie_counts.get(v, 0) + 1
        n = n1 + n2
        tie_term = sum(t ** 3 - t for t in tie_counts.values())
        variance = n1 * n2 / 12.0 * ((n + 1) - tie_term / (n * (n - 1)))
        if variance <= 0:
            return RankSumResult(statistic=r1, p_value=1.0, significant=False,
                                 direction=None)
        big_u = max(u1, u2)
        z = (big_u - n1 * n2 / 2.0 - 0.5) / math.sqrt(variance)
        p = min(1.0, max(0.0, math.erfc(z / math.sqrt(2.0))))

    return RankSumResult(statistic=r1, p_value=p, significant=p < alpha,
                         direction=direction)


def sign_from_means(mean_a: float, mean_b: float) -> str:
    """'better' when the first mean is lower (minimization), 'similar' on a tie."""
    if mean_a < mean_b:
        return "better"
    if mean_a > mean_b:
        return "worse"
    return "similar"


def client_overlap(a, b) -> float:
    """Percentage of b's clients whose coordinates occur among a's clients."""
    a_coords = set(a.coords[1:])
    shared = sum(1 for coord in b.coords[1:] if coord in a_coords)
    return 100.0 * shared / b.n_clients


def _arcs(routes):
    arcs = []
    for route in routes:
        prev = 0
        for c in route:
            arcs.append((prev, c) if prev <= c else (c, prev))
            prev = c
        arcs.append((0, prev))
    return arcs


def solution_overlap(routes_a, instance_a, routes_b, instance_b) -> int:
    """Percentage of b's undirected arcs also present in a, floor-rounded.

    Clients are matched across instances by coordinate pair; the depots
    correspond to each other. Arcs with an unmatched endpoint never count
    as shared.
    """
    ids_in_a = {coord: i for i, coord in enumerate(instance_a.coords)}
    ids_in_a[instance_a.coords[0]] = 0
    arcs_a = set(_arcs(routes_a))

    arcs_b = _arcs(routes_b)
    if not arcs_b:
        return 0
    shared = 0
    for u, v in arcs_b:
        mu = 0 if u == 0 else ids_in_a.get(instance_b.coords[u])
        mv = 0 if v == 0 else ids_in_a.get(instance_b.coords[v])
        if mu is None or mv is None:
            continue
        arc = (mu, mv) if mu <= mv else (mv, mu)
        if arc in arcs_a:
            shared += 1
    return (100 * shared) // len(arcs_b)


def aggregate_transfer(ledgers):
    """Element-wise mean of transfer ledgers: (K x K crossover, K mutation)."""
    ledgers = list(ledgers)
    if not ledgers:
        raise ValueError("need at least one ledger")
    crossover = np.mean([led.crossover_events for led in ledgers], axis=0)
    mutation = np.mean([led.mutation_improvements for led in ledgers], axis=0)
    return crossover, mutation


def parse_solution(text: str):
    """Routes from a benchmark solution file ('Route #k: c1 c2 ...' lines)."""
    routes = []
    for line in text.splitlines():
        line = line.strip()
        if not line.lower().startswith("route"):
            continue
        _, _, tail = line.partition(":")
        clients = tuple(int(tok) for tok in tail.split())
        if clients:
            routes.append(clients)
    return tuple(routes)
