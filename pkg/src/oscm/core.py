"""Two-layer instances: validation and elementary graph queries.

Fixed-layer vertices are identified by their position in the fixed order
(position 0 is the top of the left column), free-layer vertices by ids
``0..n_free-1``. Any original names live in optional display tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class InstanceError(ValueError):
    """Raised for malformed instances or orderings."""


class SizeGuardError(RuntimeError):
    """Raised when an input exceeds a solver's configured size limit."""


@dataclass(frozen=True)
class Instance:
    n_fixed: int
    n_free: int
    edges: tuple[tuple[int, int], ...]
    fixed_names: tuple[str, ...] | None = field(default=None, compare=False, repr=False)
    free_names: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        """Sorted fixed positions adjacent to each free vertex."""
        adj: list[list[int]] = [[] for _ in range(self.n_free)]
        for a, b in self.edges:
            adj[b].append(a)
        return tuple(tuple(sorted(x)) for x in adj)

    def degree(self, u: int) -> int:
        return len(self.neighbors[u])

    @property
    def n_vertices(self) -> int:
        return self.n_fixed + self.n_free

    def free_label(self, u: int) -> str:
        if self.free_names is not None:
            return self.free_names[u]
        return str(self.n_fixed + u + 1)

    def fixed_label(self, a: int) -> str:
        if self.fixed_names is not None:
            return self.fixed_names[a]
        return str(a + 1)


@dataclass(frozen=True)
class Ordering:
    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(int(x) for x in self.order))

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def positions(self) -> list[int]:
        pos = [0] * len(self.order)
        for i, u in enumerate(self.order):
            pos[u] = i
        return pos


@dataclass(frozen=True)
class CyclicWitness:
    """A directed cycle in the penalty digraph, as free ids in discovery order."""

    cycle: tuple[int, ...]


def build_instance(
    n_fixed: int,
    n_free: int,
    edges: Iterable[Sequence[int]],
    fixed_names: Sequence[str] | None = None,
    free_names: Sequence[str] | None = None,
) -> Instance:
    if n_fixed < 0 or n_free < 0:
        raise InstanceError(f"vertex counts must be nonnegative, got ({n_fixed}, {n_free})")
    seen: set[tuple[int, int]] = set()
    for e in edges:
        a, b = int(e[0]), int(e[1])
        if not (0 <= a < n_fixed and 0 <= b < n_free):
            raise InstanceError(f"edge {(a, b)} out of range for ({n_fixed}, {n_free})")
        if (a, b) in seen:
            raise InstanceError(f"duplicate edge {(a, b)}")
        seen.add((a, b))
    if fixed_names is not None and len(fixed_names) != n_fixed:
        raise InstanceError("fixed name table has wrong length")
    if free_names is not None and len(free_names) != n_free:
        raise InstanceError("free name table has wrong length")
    return Instance(
        n_fixed,
        n_free,
        tuple(sorted(seen)),
        tuple(fixed_names) if fixed_names is not None else None,
        tuple(free_names) if free_names is not None else None,
    )


def from_named(
    fixed_order: Sequence[str],
    free_names: Sequence[str],
    edges: Iterable[tuple[str, str]],
) -> Instance:
    """Build an instance from vertex names; ``fixed_order`` is the fixed permutation."""
    fpos = {name: i for i, name in enumerate(fixed_order)}
    fid = {name: i for i, name in enumerate(free_names)}
    if len(fpos) != len(fixed_order) or len(fid) != len(free_names):
        raise InstanceError("vertex names must be unique")
    pairs = []
    for x, y in edges:
        if x in fpos and y in fid:
            pairs.append((fpos[x], fid[y]))
        elif y in fpos and x in fid:
            pairs.append((fpos[y], fid[x]))
        else:
            raise InstanceError(f"edge {(x, y)} does not join the two layers")
    return build_instance(len(fixed_order), len(free_names), pairs, fixed_order, free_names)


def check_ordering(inst: Instance, order: Ordering | Sequence[int]) -> Ordering:
    """Validate ``order`` as a permutation of the free layer."""
    if not isinstance(order, Ordering):
        order = Ordering(tuple(order))
    if sorted(order.order) != list(range(inst.n_free)):
        raise InstanceError(f"{list(order.order)} is not a permutation of 0..{inst.n_free - 1}")
    return order


def is_tree(inst: Instance) -> bool:
    n = inst.n_vertices
    if n == 0 or len(inst.edges) != n - 1:
        return False
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in inst.edges:
        ra, rb = find(a), find(inst.n_fixed + b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def common_neighbors(inst: Instance, u: int, v: int) -> int:
    for x in (u, v):
        if not 0 <= x < inst.n_free:
            raise InstanceError(f"invalid free id {x}")
    if u == v:
        raise InstanceError("common_neighbors needs two distinct free vertices")
    return len(set(inst.neighbors[u]) & set(inst.neighbors[v]))
