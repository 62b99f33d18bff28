"""One-sided crossing minimization for two-layer drawings."""

from .core import (
    CyclicWitness,
    Instance,
    InstanceError,
    Ordering,
    SizeGuardError,
    build_instance,
    common_neighbors,
    from_named,
    is_tree,
)
from .crossings import CrossingMatrix, count_crossings, crossing_matrix, pairwise_crossings
from .penalty import PenaltyGraph, build_penalty_graph, harrigan_healy_order, is_acyclic
from .solvers import (
    SolveResult,
    barycenter,
    brute_force_opt,
    fas_accounting,
    greedy_switch,
    median,
    solve,
    solve_exact,
)

__version__ = "0.1.0"
