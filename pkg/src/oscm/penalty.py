"""The penalty digraph on the free layer and the topological-order heuristic.

An arc ``u -> v`` of weight ``cr(u, v) - cr(v, u)`` records that placing u
above v costs that many extra crossings. Parallel arcs of the underlying
multigraph are collapsed into the integer weight.

The topological-order algorithm claims this digraph is acyclic whenever
the input graph is a tree; :func:`harrigan_healy_order` returns a
:class:`~oscm.core.CyclicWitness` when that claim fails.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter

import numpy as np

from .core import CyclicWitness, Instance, Ordering
from .crossings import CrossingMatrix, crossing_matrix


@dataclass(frozen=True)
class PenaltyGraph:
    n_free: int
    arcs: tuple[tuple[int, int, int], ...]

    def weight(self, u: int, v: int) -> int:
        for a, b, w in self.arcs:
            if a == u and b == v:
                return w
        return 0

    def successors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n_free)]
        for u, v, _ in self.arcs:
            out[u].append(v)
        return out


def as_crossing_matrix(m) -> CrossingMatrix:
    if isinstance(m, CrossingMatrix):
        return m
    cr = np.asarray(m, dtype=np.int64)
    if cr.ndim != 2 or cr.shape[0] != cr.shape[1]:
        raise ValueError("crossing matrix must be square")
    if (np.diag(cr) != 0).any() or (cr < 0).any():
        raise ValueError("crossing matrix needs a zero diagonal and nonnegative entries")
    cr = cr.copy()
    cr.setflags(write=False)
    return CrossingMatrix(cr.shape[0], cr)


def build_penalty_graph(m) -> PenaltyGraph:
    m = as_crossing_matrix(m)
    cr = m.cr
    arcs = []
    for u in range(m.n_free):
        for v in range(m.n_free):
            if cr[u, v] > cr[v, u]:
                arcs.append((u, v, int(cr[u, v] - cr[v, u])))
    return PenaltyGraph(m.n_free, tuple(arcs))


def _sorter(pg: PenaltyGraph, reverse: bool = False) -> TopologicalSorter:
    # graphlib wants node -> predecessors
    preds: dict[int, set[int]] = {u: set() for u in range(pg.n_free)}
    for u, v, _ in pg.arcs:
        if reverse:
            preds[u].add(v)
        else:
            preds[v].add(u)
    return TopologicalSorter(preds)


def find_cycle(pg: PenaltyGraph) -> tuple[int, ...] | None:
    """One directed cycle found by depth-first search, or None."""
    try:
        _sorter(pg).prepare()
    except CycleError as exc:
        cyc = exc.args[1]
        return tuple(cyc[:-1])
    return None


def is_acyclic(pg: PenaltyGraph) -> bool:
    return find_cycle(pg) is None


def penalty_order(pg: PenaltyGraph) -> Ordering:
    """Order in which every arc ``u -> v`` has v placed above u.

    Among vertices that may come next, the smallest id is taken. The graph
    must be acyclic.
    """
    ts = _sorter(pg, reverse=True)
    ts.prepare()
    ready = list(ts.get_ready())
    heapq.heapify(ready)
    out = []
    while ready:
        u = heapq.heappop(ready)
        out.append(u)
        ts.done(u)
        for v in ts.get_ready():
            heapq.heappush(ready, v)
    return Ordering(tuple(out))


def harrigan_healy_order(inst: Instance) -> Ordering | CyclicWitness:
    pg = build_penalty_graph(crossing_matrix(inst))
    cyc = find_cycle(pg)
    if cyc is not None:
        return CyclicWitness(cyc)
    return penalty_order(pg)
