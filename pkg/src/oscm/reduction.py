"""Disjoint 4-star instances and the apex augmentation that turns them into trees.

Appending one fixed vertex adjacent to every star centre connects the
forest into a tree. Every apex edge crosses each star edge of every centre
placed below its own centre, so the drawing of the tree has a fixed number
of extra crossings for every free-layer order. :func:`measure_offset`
determines that constant by exact solving and exhaustive recounting and
reports which closed form it follows.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .core import Instance, InstanceError, SizeGuardError, build_instance
from .crossings import count_crossings
from .solvers import DP_LIMIT, solve_exact

LEAVES = 4
PER_ORDERING_EXHAUSTIVE = 8
SAMPLED_ORDERINGS = 200
OPT_GP = "opt(G')"


@dataclass(frozen=True)
class StarInstanceSpec:
    star_count: int
    # fixed position k holds leaf (star, leaf_index)
    leaf_permutation: tuple[tuple[int, int], ...]

    def __post_init__(self):
        perm = tuple((int(s), int(l)) for s, l in self.leaf_permutation)
        object.__setattr__(self, "leaf_permutation", perm)
        want = {(s, l) for s in range(self.star_count) for l in range(LEAVES)}
        if self.star_count < 0 or len(perm) != len(want) or set(perm) != want:
            raise InstanceError(
                f"leaf permutation must list each of the {LEAVES} leaves of "
                f"{self.star_count} stars exactly once"
            )

    @classmethod
    def from_star_sequence(cls, stars: Sequence[int]) -> StarInstanceSpec:
        """Spec from the star index at each fixed position (leaf indices in order of appearance)."""
        seen: dict[int, int] = {}
        perm = []
        for s in stars:
            perm.append((s, seen.get(s, 0)))
            seen[s] = seen.get(s, 0) + 1
        return cls(len(seen), tuple(perm))


def blocked_spec(n: int) -> StarInstanceSpec:
    return StarInstanceSpec.from_star_sequence([s for s in range(n) for _ in range(LEAVES)])


def reversed_spec(n: int) -> StarInstanceSpec:
    return StarInstanceSpec.from_star_sequence([s for s in reversed(range(n)) for _ in range(LEAVES)])


def interleaved_spec(n: int) -> StarInstanceSpec:
    return StarInstanceSpec.from_star_sequence([s for _ in range(LEAVES) for s in range(n)])


def random_spec(n: int, rng: random.Random) -> StarInstanceSpec:
    stars = [s for s in range(n) for _ in range(LEAVES)]
    rng.shuffle(stars)
    return StarInstanceSpec.from_star_sequence(stars)


def build_star_instance(spec: StarInstanceSpec) -> Instance:
    edges = [(pos, s) for pos, (s, _) in enumerate(spec.leaf_permutation)]
    return build_instance(len(spec.leaf_permutation), spec.star_count, edges)


def apex_augment(inst: Instance) -> Instance:
    apex = inst.n_fixed
    names = inst.fixed_names + ("apex",) if inst.fixed_names is not None else None
    edges = list(inst.edges) + [(apex, u) for u in range(inst.n_free)]
    return build_instance(inst.n_fixed + 1, inst.n_free, edges, names, inst.free_names)


def proof_offset(n: int) -> int:
    return 2 * n * (n - 1)


def lemma_offset(n: int) -> int:
    return n * (n - 1)


@dataclass(frozen=True)
class OffsetRow:
    trial: str
    opt_g: int
    opt_gp: int
    # None when crossings(G', p) - crossings(G, p) varies with p
    per_ordering: int | None
    orderings_checked: int

    @property
    def diff(self) -> int:
        return self.opt_gp - self.opt_g


@dataclass(frozen=True)
class OffsetReport:
    n: int
    seed: int
    rows: tuple[OffsetRow, ...] = field(default=())

    @property
    def diffs(self) -> list[int]:
        return sorted(r.diff for r in self.rows)

    @property
    def constant(self) -> int | None:
        vals = {r.diff for r in self.rows} | {r.per_ordering for r in self.rows}
        return vals.pop() if len(vals) == 1 and None not in vals else None

    @property
    def per_ordering_constant(self) -> bool:
        return all(r.per_ordering is not None and r.per_ordering == r.diff for r in self.rows)

    @property
    def matches_proof(self) -> bool:
        return self.constant == proof_offset(self.n)

    @property
    def matches_lemma(self) -> bool:
        return self.constant == lemma_offset(self.n)

    @property
    def matched(self) -> str:
        if self.matches_proof and self.matches_lemma:
            return "both 2n(n-1) and n(n-1)"
        if self.matches_proof:
            return "2n(n-1)"
        if self.matches_lemma:
            return "n(n-1)"
        return "neither"

    def to_text(self) -> str:
        w = max([5] + [len(r.trial) for r in self.rows])
        lines = [f"# stars={self.n} seed={self.seed}", f"{'trial':<{w}}  {'opt(G)':>8}  {OPT_GP:>8}  {'diff':>6}"]
        for r in self.rows:
            lines.append(f"{r.trial:<{w}}  {r.opt_g:>8}  {r.opt_gp:>8}  {r.diff:>6}")
        checked = sum(r.orderings_checked for r in self.rows)
        verdict = "constant" if self.per_ordering_constant else "NOT constant"
        lines.append(f"# per-ordering offset: {verdict} over {checked} orderings checked")
        lines.append(f"# observed constant: {self.constant}")
        lines.append(f"# 2n(n-1) = {proof_offset(self.n)}: {'match' if self.matches_proof else 'mismatch'}")
        lines.append(f"# n(n-1) = {lemma_offset(self.n)}: {'match' if self.matches_lemma else 'mismatch'}")
        lines.append(f"# matched formula: {self.matched}")
        return "\n".join(lines) + "\n"


def _orderings(n: int, rng: random.Random):
    if n <= PER_ORDERING_EXHAUSTIVE:
        yield from itertools.permutations(range(n))
        return
    base = list(range(n))
    for _ in range(SAMPLED_ORDERINGS):
        rng.shuffle(base)
        yield tuple(base)


def _run_trial(args) -> OffsetRow:
    label, spec, seed = args
    g = build_star_instance(spec)
    gp = apex_augment(g)
    offsets = set()
    checked = 0
    for p in _orderings(spec.star_count, random.Random(f"{seed}:{label}:orders")):
        offsets.add(count_crossings(gp, p) - count_crossings(g, p))
        checked += 1
    per = offsets.pop() if len(offsets) == 1 else None
    return OffsetRow(label, solve_exact(g).crossings, solve_exact(gp).crossings, per, checked)


def measure_offset(n: int, trials: int, seed: int = 0, jobs: int = 1, limit: int = DP_LIMIT) -> OffsetReport:
    """Compare exact optima of star forests and their apex-augmented trees.

    Runs ``trials`` seeded random leaf orders plus the blocked, reversed and
    interleaved orders. Orderings are checked exhaustively up to
    ``PER_ORDERING_EXHAUSTIVE`` stars and by seeded sampling beyond.
    """
    if n < 1 or trials < 1:
        raise ValueError("need at least one star and one trial")
    if n > limit:
        raise SizeGuardError(f"{n} stars exceed the exact solver limit of {limit}")
    work = [(f"rand{t}", random_spec(n, random.Random(f"{seed}:{n}:{t}")), seed) for t in range(trials)]
    work += [("blocked", blocked_spec(n), seed), ("reversed", reversed_spec(n), seed), ("interleaved", interleaved_spec(n), seed)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            rows = list(ex.map(_run_trial, work))
    else:
        rows = [_run_trial(w) for w in work]
    return OffsetReport(n, seed, tuple(rows))
