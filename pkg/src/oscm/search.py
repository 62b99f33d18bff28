"""Exhaustive search for trees whose penalty digraph has a directed cycle.

A tree drawn with a fixed-layer order is the same thing as a labeled
bipartite tree whose fixed labels are fixed-layer positions, so enumerating
labeled spanning trees of K_{a,b} covers every (tree, fixed order) pair.
Trees are produced by a two-sequence Prüfer code: the standard code split
into its fixed-side and free-side entries, which determines the tree
because the side of each removed leaf says which sequence to read next.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .core import Instance, SizeGuardError, build_instance, is_tree
from .crossings import CrossingMatrix, crossing_matrix
from .penalty import build_penalty_graph, find_cycle

MAX_SEARCH_VERTICES = 10

PAPER_FIXED_ORDER = ("d", "f", "b", "a", "c", "e")
PAPER_FREE = ("g", "h", "i")
# cr(g,h), cr(h,g), cr(g,i), cr(i,g), cr(h,i), cr(i,h)
PAPER_PROFILE = (2, 3, 3, 2, 4, 5)

Edges = tuple[tuple[int, int], ...]


def _decode(a: int, b: int, fixed_seq, free_seq) -> Edges | None:
    # global labels: fixed 0..a-1, free a..a+b-1
    n = a + b
    count = [0] * n
    for x in fixed_seq:
        count[x] += 1
    for y in free_seq:
        count[a + y] += 1
    removed = [False] * n
    i = j = 0
    edges = []
    for _ in range(n - 2):
        leaf = next(v for v in range(n) if not removed[v] and count[v] == 0)
        if leaf < a:
            if j == len(free_seq):
                return None
            nb = a + free_seq[j]
            j += 1
            edges.append((leaf, nb - a))
        else:
            if i == len(fixed_seq):
                return None
            nb = fixed_seq[i]
            i += 1
            edges.append((nb, leaf - a))
        removed[leaf] = True
        count[nb] -= 1
    x, y = (v for v in range(n) if not removed[v])
    if (x < a) == (y < a):
        return None
    edges.append((x, y - a))
    return tuple(sorted(edges))


def enumerate_bipartite_trees(n_fixed: int, n_free: int, first: int | None = None) -> Iterator[Edges]:
    """Every spanning tree of K_{n_fixed, n_free}, as sorted (fixed, free) edge tuples.

    ``first`` restricts to codes whose first fixed-side entry is ``first``;
    it is used to split the work between processes.
    """
    if n_fixed + n_free < 1:
        raise ValueError("need at least one vertex")
    if n_fixed + n_free == 1:
        yield ()
        return
    if n_fixed == 0 or n_free == 0:
        return
    fixed_choices = [range(n_fixed)] * (n_free - 1)
    if first is not None:
        if n_free < 2:
            return
        fixed_choices = [[first]] + fixed_choices[1:]
    for fs in itertools.product(*fixed_choices):
        for ys in itertools.product(range(n_free), repeat=n_fixed - 1):
            edges = _decode(n_fixed, n_free, fs, ys)
            if edges is not None:
                yield edges


def enumerate_bipartite_trees_prufer_filter(n_fixed: int, n_free: int) -> Iterator[Edges]:
    """Slow reference: decode every standard Prüfer sequence, keep layer-respecting trees."""
    n = n_fixed + n_free
    if n == 1:
        yield ()
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = next(v for v in range(n) if degree[v] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = (w for w in range(n) if degree[w] == 1)
        edges.append((u, v))
        ok = all((p < n_fixed) != (q < n_fixed) for p, q in edges)
        if ok:
            yield tuple(sorted((min(p, q), max(p, q) - n_fixed) for p, q in edges))


def bipartite_tree_count(n_fixed: int, n_free: int) -> int:
    if n_fixed + n_free == 1:
        return 1
    if n_fixed == 0 or n_free == 0:
        return 0
    return n_fixed ** (n_free - 1) * n_free ** (n_fixed - 1)


@dataclass(frozen=True)
class CounterexampleWitness:
    instance: Instance
    n_total: int
    cycle: tuple[int, ...]
    cr_profile: tuple[int, ...] | None

    @property
    def sort_key(self):
        return (self.n_total, self.instance.n_fixed, self.instance.edges)


def cr_profile(m: CrossingMatrix) -> tuple[int, ...] | None:
    if m.n_free != 3:
        return None
    return (m[0, 1], m[1, 0], m[0, 2], m[2, 0], m[1, 2], m[2, 1])


def canonical_free_labels(inst: Instance) -> Instance:
    """Relabel free vertices in order of their sorted neighbor tuples.

    Two free vertices with equal neighborhoods are interchangeable, so this
    is a canonical form under free-layer relabeling.
    """
    order = sorted(range(inst.n_free), key=lambda u: inst.neighbors[u])
    new_id = {u: k for k, u in enumerate(order)}
    return build_instance(inst.n_fixed, inst.n_free, [(a, new_id[b]) for a, b in inst.edges])


def make_witness(inst: Instance) -> CounterexampleWitness | None:
    """The witness for ``inst`` if it is a tree with a cyclic penalty digraph."""
    if not is_tree(inst):
        return None
    m = crossing_matrix(inst)
    cyc = find_cycle(build_penalty_graph(m))
    if cyc is None:
        return None
    return CounterexampleWitness(inst, inst.n_vertices, cyc, cr_profile(m))


def _search_cell(task) -> list[CounterexampleWitness]:
    a, b, first = task
    found = {}
    for edges in enumerate_bipartite_trees(a, b, first):
        inst = build_instance(a, b, edges)
        cyc = find_cycle(build_penalty_graph(crossing_matrix(inst)))
        if cyc is None:
            continue
        canon = canonical_free_labels(inst)
        if canon.edges not in found:
            found[canon.edges] = make_witness(canon)
    return list(found.values())


def _tasks(max_total_vertices: int):
    for total in range(1, max_total_vertices + 1):
        # a cycle needs at least three free vertices
        for b in range(3, total):
            for first in range(total - b):
                yield (total - b, b, first)


def find_cyclic_counterexamples(max_total_vertices: int, jobs: int = 1) -> list[CounterexampleWitness]:
    """All trees with at most ``max_total_vertices`` vertices and a cyclic penalty digraph.

    Witnesses are deduplicated up to free-layer relabeling and returned in
    canonical order (vertex count, fixed-layer size, edge list). Reversing
    the fixed order reverses every penalty arc; mirror images are kept
    whenever they are not already equal up to relabeling.
    """
    if max_total_vertices > MAX_SEARCH_VERTICES:
        raise SizeGuardError(
            f"search is limited to {MAX_SEARCH_VERTICES} vertices, got {max_total_vertices}"
        )
    tasks = list(_tasks(max_total_vertices))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            parts = list(ex.map(_search_cell, tasks))
    else:
        parts = [_search_cell(t) for t in tasks]
    merged = {}
    for part in parts:
        for w in part:
            merged[(w.instance.n_fixed, w.instance.edges)] = w
    return sorted(merged.values(), key=lambda w: w.sort_key)


def bipartition_minima(witnesses) -> dict[tuple[int, int], int]:
    """Number of witnesses per (fixed, free) layer sizes."""
    out: dict[tuple[int, int], int] = {}
    for w in witnesses:
        key = (w.instance.n_fixed, w.instance.n_free)
        out[key] = out.get(key, 0) + 1
    return dict(sorted(out.items()))


def matching_labelings(w: CounterexampleWitness, profile=PAPER_PROFILE) -> list[tuple[int, int, int]]:
    """Assignments (g, h, i) of free ids reproducing ``profile`` exactly."""
    if w.instance.n_free != 3:
        raise ValueError("profile matching needs exactly three free vertices")
    m = crossing_matrix(w.instance)
    return [p for p in itertools.permutations(range(3)) if cr_profile_under(m, p) == tuple(profile)]


def cr_profile_under(m: CrossingMatrix, labels) -> tuple[int, ...]:
    g, h, i = labels
    return (m[g, h], m[h, g], m[g, i], m[i, g], m[h, i], m[i, h])


def match_paper_profile(w: CounterexampleWitness) -> bool:
    return bool(matching_labelings(w))


def reconstruct_paper_trees() -> list[Instance]:
    """Trees on fixed order (d,f,b,a,c,e) and free (g,h,i) with the published cr values.

    Free labels are assigned so that free id 0, 1, 2 are g, h, i.
    """
    out = []
    for edges in enumerate_bipartite_trees(6, 3):
        inst = build_instance(6, 3, edges, PAPER_FIXED_ORDER, PAPER_FREE)
        if cr_profile(crossing_matrix(inst)) == PAPER_PROFILE:
            out.append(inst)
    return out
