"""Evolutionary multitasking solvers for the capacitated vehicle routing problem.

Two solvers over one unified permutation space: the multifactorial
evolutionary algorithm (MfeaSolver) and the multifactorial cellular GA
(MfcgaSolver), plus instance parsing, a benchmark harness and
transfer-analysis tools.
"""

from .analysis import RankSumResult, client_overlap, rank_sum_test, solution_overlap
from .base import SolverResult
from .encoding import RoutePlan, project, split_decode, evaluate_plan, unified_evaluate
from .instances import CvrpInstance, ParseError, build_distance_matrix, load_instance, parse_instance
from .mfcga import MfcgaSolver, MooreGrid, TransferLedger
from .mfea import MfeaSolver
from .multitask import Task, TaskSet
from .operators import order_crossover, random_genome, rng_stream, two_opt_mutation

__version__ = "0.1.0"

__all__ = [
    "CvrpInstance", "ParseError", "parse_instance", "load_instance",
    "build_distance_matrix",
    "RoutePlan", "project", "split_decode", "evaluate_plan", "unified_evaluate",
    "Task", "TaskSet",
    "rng_stream", "random_genome", "order_crossover", "two_opt_mutation",
    "MfeaSolver", "MfcgaSolver", "MooreGrid", "TransferLedger", "SolverResult",
    "RankSumResult", "rank_sum_test", "client_overlap", "solution_overlap",
]
