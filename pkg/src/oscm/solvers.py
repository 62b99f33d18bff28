"""Exact and heuristic solvers for one-sided crossing minimization."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import CyclicWitness, Instance, Ordering, SizeGuardError, check_ordering
from .crossings import CrossingMatrix, count_crossings, count_crossings_reference, crossing_matrix
from .penalty import PenaltyGraph, build_penalty_graph, harrigan_healy_order

BRUTE_FORCE_LIMIT = 10
DP_LIMIT = 24
FAS_EXHAUSTIVE_LIMIT = 10

METHODS = ("exact-dp", "brute-force", "barycenter", "median", "greedy-switch", "harrigan-healy")


class CertificationError(AssertionError):
    """A solver's claimed value disagrees with an independent recount."""


class CyclicPenaltyError(RuntimeError):
    def __init__(self, witness: CyclicWitness):
        super().__init__(f"penalty digraph has a cycle {list(witness.cycle)}")
        self.witness = witness


@dataclass(frozen=True)
class SolveResult:
    ordering: Ordering
    crossings: int
    method: str
    optimal: bool = False


def certify(inst: Instance, ordering, method: str, optimal: bool, claimed: int | None = None) -> SolveResult:
    ordering = check_ordering(inst, ordering)
    value = count_crossings_reference(inst, ordering)
    if claimed is not None and claimed != value:
        raise CertificationError(f"{method}: claimed {claimed} crossings, recount gives {value}")
    return SolveResult(ordering, value, method, optimal)


def lower_bound(m: CrossingMatrix) -> int:
    """Sum over unordered pairs of ``min(cr(u, v), cr(v, u))``."""
    cr = m.cr
    return int(np.triu(np.minimum(cr, cr.T), 1).sum())


def _best_permutation(cost: np.ndarray, chunk: int = 200_000) -> tuple[int, tuple[int, ...]]:
    """Minimum of ``sum cost[p_i, p_j] (i < j)`` over all permutations.

    Permutations are scanned in lexicographic order, so the first minimum
    is the lexicographically smallest optimal one.
    """
    n = cost.shape[0]
    pairs = list(itertools.combinations(range(n), 2))
    perms = itertools.permutations(range(n))
    best_val, best_perm = None, ()
    while True:
        block = list(itertools.islice(perms, chunk))
        if not block:
            break
        P = np.array(block, dtype=np.int64).reshape(len(block), n)
        tot = np.zeros(len(block), dtype=np.int64)
        for i, j in pairs:
            tot += cost[P[:, i], P[:, j]]
        k = int(np.argmin(tot))
        if best_val is None or tot[k] < best_val:
            best_val, best_perm = int(tot[k]), block[k]
    return best_val, tuple(best_perm)


def brute_force_opt(inst: Instance) -> SolveResult:
    if inst.n_free > BRUTE_FORCE_LIMIT:
        raise SizeGuardError(
            f"brute force is limited to {BRUTE_FORCE_LIMIT} free vertices, got {inst.n_free}"
        )
    val, perm = _best_permutation(crossing_matrix(inst).cr)
    return certify(inst, perm, "brute-force", True, val)


def _subset_sums(weights: np.ndarray) -> np.ndarray:
    table = np.zeros(1 << len(weights), dtype=np.int64)
    for j, w in enumerate(weights):
        table[1 << j: 1 << (j + 1)] = table[: 1 << j] + w
    return table


def solve_exact(inst: Instance, limit: int = DP_LIMIT) -> SolveResult:
    """Subset DP over the crossing matrix, O(2^n n) vectorised steps.

    ``best[R]`` is the cheapest arrangement of the set R, where placing v
    first among R costs ``sum(cr[v, w] for w in R - {v})``; pairs between R
    and the vertices above it are order-independent. Reconstruction picks
    the smallest feasible id at each step, which yields the
    lexicographically smallest optimal ordering.
    """
    n = inst.n_free
    if n > limit:
        raise SizeGuardError(f"exact solver is limited to {limit} free vertices, got {n}")
    if n == 0:
        return certify(inst, (), "exact-dp", True, 0)
    cr = crossing_matrix(inst).cr
    half = n // 2
    lo_mask = (1 << half) - 1
    lo = [_subset_sums(cr[v, :half]) for v in range(n)]
    hi = [_subset_sums(cr[v, half:]) for v in range(n)]

    def cost(v, rest):
        return lo[v][rest & lo_mask] + hi[v][rest >> half]

    full = 1 << n
    subsets = np.arange(full, dtype=np.int64)
    pc = np.bitwise_count(subsets)
    by_size = np.argsort(pc, kind="stable")
    bounds = np.concatenate(([0], np.cumsum(np.bincount(pc, minlength=n + 1))))
    best = np.zeros(full, dtype=np.int64)
    inf = np.iinfo(np.int64).max
    for k in range(1, n + 1):
        layer = by_size[bounds[k]: bounds[k + 1]]
        acc = np.full(len(layer), inf, dtype=np.int64)
        for v in range(n):
            has = ((layer >> v) & 1).astype(bool)
            sel = layer[has]
            rest = sel ^ (1 << v)
            acc[has] = np.minimum(acc[has], best[rest] + cost(v, rest))
        best[layer] = acc
    del subsets, pc, by_size

    order = []
    R = full - 1
    while R:
        for v in range(n):
            if R >> v & 1:
                rest = R ^ (1 << v)
                if best[rest] + cost(v, rest) == best[R]:
                    order.append(v)
                    R = rest
                    break
    return certify(inst, order, "exact-dp", True, int(best[full - 1]))


@dataclass(frozen=True)
class FasReport:
    crossings: int
    lower_bound: int
    penalty_weight: int
    min_fas: int | None

    @property
    def ok(self) -> bool:
        return self.crossings == self.lower_bound + self.penalty_weight and (
            self.min_fas is None or self.min_fas == self.penalty_weight
        )

    def __str__(self):
        fas = "unchecked" if self.min_fas is None else str(self.min_fas)
        return (
            f"crossings {self.crossings} = {self.lower_bound} (sum of pair minima) "
            f"+ {self.penalty_weight} (penalty arcs kept forward); min FAS {fas}"
        )


class AccountingError(AssertionError):
    pass


def _strong_components(pg: PenaltyGraph) -> list[list[int]]:
    succ = pg.successors()
    reach = []
    for s in range(pg.n_free):
        seen = {s}
        stack = [s]
        while stack:
            for y in succ[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        reach.append(seen)
    comps, assigned = [], set()
    for u in range(pg.n_free):
        if u not in assigned:
            comp = [v for v in range(pg.n_free) if v in reach[u] and u in reach[v]]
            assigned.update(comp)
            comps.append(comp)
    return comps


def min_feedback_arc_set(pg: PenaltyGraph, limit: int = FAS_EXHAUSTIVE_LIMIT) -> int:
    """Minimum total weight of arcs whose removal leaves ``pg`` acyclic.

    Exhaustive over vertex orders inside each strongly connected component:
    a minimum FAS is exactly the set of arcs pointing forward in some order.
    """
    total = 0
    for comp in _strong_components(pg):
        if len(comp) < 2:
            continue
        if len(comp) > limit:
            raise SizeGuardError(f"component of size {len(comp)} exceeds the exhaustive FAS limit")
        idx = {u: i for i, u in enumerate(comp)}
        W = np.zeros((len(comp), len(comp)), dtype=np.int64)
        for u, v, w in pg.arcs:
            if u in idx and v in idx:
                W[idx[u], idx[v]] = w
        total += _best_permutation(W)[0]
    return total


def fas_accounting(inst: Instance, res: SolveResult) -> FasReport:
    if not res.optimal:
        raise ValueError("fas_accounting needs an optimal solve result")
    m = crossing_matrix(inst)
    pg = build_penalty_graph(m)
    pos = res.ordering.positions()
    kept = sum(w for u, v, w in pg.arcs if pos[u] < pos[v])
    min_fas = min_feedback_arc_set(pg) if inst.n_free <= FAS_EXHAUSTIVE_LIMIT else None
    report = FasReport(res.crossings, lower_bound(m), kept, min_fas)
    if not report.ok:
        raise AccountingError(str(report))
    return report


def _sorted_by_key(inst: Instance, key, method: str) -> SolveResult:
    isolated = [u for u in range(inst.n_free) if not inst.neighbors[u]]
    rest = sorted((u for u in range(inst.n_free) if inst.neighbors[u]), key=lambda u: (key(inst.neighbors[u]), u))
    order = isolated + rest
    return SolveResult(Ordering(tuple(order)), count_crossings(inst, order), method, False)


def barycenter(inst: Instance) -> SolveResult:
    return _sorted_by_key(inst, lambda nb: Fraction(sum(nb), len(nb)), "barycenter")


def median(inst: Instance) -> SolveResult:
    return _sorted_by_key(inst, lambda nb: nb[(len(nb) - 1) // 2], "median")


def greedy_switch(inst: Instance, start) -> SolveResult:
    order = list(check_ordering(inst, start).order)
    cr = crossing_matrix(inst).cr
    changed = True
    while changed:
        changed = False
        for i in range(len(order) - 1):
            u, v = order[i], order[i + 1]
            if cr[v, u] < cr[u, v]:
                order[i], order[i + 1] = v, u
                changed = True
    return SolveResult(Ordering(tuple(order)), count_crossings(inst, order), "greedy-switch", False)


def solve_harrigan_healy(inst: Instance) -> SolveResult:
    out = harrigan_healy_order(inst)
    if isinstance(out, CyclicWitness):
        raise CyclicPenaltyError(out)
    return certify(inst, out, "harrigan-healy", False, lower_bound(crossing_matrix(inst)))


def solve(inst: Instance, method: str = "exact-dp", limit: int = DP_LIMIT) -> SolveResult:
    if method == "exact-dp":
        return solve_exact(inst, limit)
    if method == "brute-force":
        return brute_force_opt(inst)
    if method == "barycenter":
        return barycenter(inst)
    if method == "median":
        return median(inst)
    if method == "greedy-switch":
        return greedy_switch(inst, barycenter(inst).ordering)
    if method == "harrigan-healy":
        return solve_harrigan_healy(inst)
    raise ValueError(f"unknown method {method!r}")
