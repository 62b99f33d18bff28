"""Pairwise crossing numbers and total crossings of two-layer drawings."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .core import Instance, InstanceError, Ordering, build_instance, check_ordering


@dataclass(frozen=True, eq=False)
class CrossingMatrix:
    """``cr[u, v]`` is the number of crossings charged to placing u above v."""

    n_free: int
    cr: np.ndarray

    def __getitem__(self, key):
        return int(self.cr[key])

    def __eq__(self, other):
        return (
            isinstance(other, CrossingMatrix)
            and self.n_free == other.n_free
            and np.array_equal(self.cr, other.cr)
        )

    def tolist(self) -> list[list[int]]:
        return self.cr.tolist()


def _pair_count(nu: tuple[int, ...], nv: tuple[int, ...]) -> int:
    # number of (a, b) in nu x nv with a > b; nv is sorted
    return sum(bisect_left(nv, a) for a in nu)


def pairwise_crossings(inst: Instance, u: int, v: int) -> int:
    for x in (u, v):
        if not 0 <= x < inst.n_free:
            raise InstanceError(f"invalid free id {x}")
    if u == v:
        raise InstanceError("pairwise_crossings needs two distinct free vertices")
    return _pair_count(inst.neighbors[u], inst.neighbors[v])


def crossing_matrix(inst: Instance) -> CrossingMatrix:
    n = inst.n_free
    nb = inst.neighbors
    cr = np.zeros((n, n), dtype=np.int64)
    for u in range(n):
        if not nb[u]:
            continue
        for v in range(n):
            if u != v and nb[v]:
                cr[u, v] = _pair_count(nb[u], nb[v])
    cr.setflags(write=False)
    return CrossingMatrix(n, cr)


def count_inversions(seq) -> int:
    """Strict inversions (i < j with seq[i] > seq[j]) by merge sort."""
    seq = list(seq)
    buf = [0] * len(seq)

    def sort(lo, hi):
        if hi - lo < 2:
            return 0
        mid = (lo + hi) // 2
        inv = sort(lo, mid) + sort(mid, hi)
        i, j, k = lo, mid, lo
        while i < mid and j < hi:
            if seq[j] < seq[i]:
                inv += mid - i
                buf[k] = seq[j]
                j += 1
            else:
                buf[k] = seq[i]
                i += 1
            k += 1
        buf[k:hi] = seq[i:mid] + seq[j:hi]
        seq[lo:hi] = buf[lo:hi]
        return inv

    return sort(0, len(seq))


def count_crossings(inst: Instance, ordering: Ordering | list[int] | tuple[int, ...]) -> int:
    """Total crossings in O(m log m).

    Edges are sorted by (free position, fixed position); two edges cross
    exactly when their fixed positions form a strict inversion. Edges at the
    same free vertex are sorted ascending and so never contribute.
    """
    ordering = check_ordering(inst, ordering)
    pos = ordering.positions()
    fixed_seq = [a for _, a in sorted((pos[b], a) for a, b in inst.edges)]
    return count_inversions(fixed_seq)


def count_crossings_reference(inst: Instance, ordering) -> int:
    """Quadratic count over all edge pairs; the straight-line definition."""
    ordering = check_ordering(inst, ordering)
    pos = ordering.positions()
    edges = inst.edges
    total = 0
    for i in range(len(edges)):
        a1, b1 = edges[i]
        for j in range(i + 1, len(edges)):
            a2, b2 = edges[j]
            if (a1 - a2) * (pos[b1] - pos[b2]) < 0:
                total += 1
    return total


def pair_sum_crossings(m: CrossingMatrix, ordering) -> int:
    """Sum of ``cr(u, v)`` over pairs with u placed before v."""
    order = list(ordering)
    total = 0
    for i, u in enumerate(order):
        for v in order[i + 1:]:
            total += int(m.cr[u, v])
    return total


def reverse_fixed(inst: Instance) -> Instance:
    """The same graph with the fixed-layer order reversed."""
    last = inst.n_fixed - 1
    names = inst.fixed_names[::-1] if inst.fixed_names is not None else None
    return build_instance(
        inst.n_fixed,
        inst.n_free,
        [(last - a, b) for a, b in inst.edges],
        names,
        inst.free_names,
    )


def relabel_free(inst: Instance, perm) -> Instance:
    """Rename free vertex ``u`` to ``perm[u]``."""
    names = None
    if inst.free_names is not None:
        names = [""] * inst.n_free
        for u, nu in enumerate(perm):
            names[nu] = inst.free_names[u]
    return build_instance(
        inst.n_fixed, inst.n_free, [(a, perm[b]) for a, b in inst.edges], inst.fixed_names, names
    )
