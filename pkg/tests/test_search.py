import itertools

import pytest

from oscm.core import SizeGuardError, build_instance, common_neighbors, is_tree
from oscm.crossings import crossing_matrix
from oscm.penalty import build_penalty_graph, is_acyclic
from oscm.search import (
    PAPER_PROFILE,
    CounterexampleWitness,
    bipartite_tree_count,
    bipartition_minima,
    canonical_free_labels,
    enumerate_bipartite_trees,
    enumerate_bipartite_trees_prufer_filter,
    find_cyclic_counterexamples,
    make_witness,
    match_paper_profile,
    matching_labelings,
    reconstruct_paper_trees,
)
from oscm.solvers import brute_force_opt, fas_accounting


@pytest.fixture(scope="module")
def witnesses9():
    return find_cyclic_counterexamples(9)


def test_tree_counts_small():
    assert list(enumerate_bipartite_trees(1, 1)) == [((0, 0),)]
    assert list(enumerate_bipartite_trees(2, 1)) == [((0, 0), (1, 0))]
    assert len(list(enumerate_bipartite_trees(2, 2))) == 4
    assert list(enumerate_bipartite_trees(1, 0)) == [()]
    assert list(enumerate_bipartite_trees(3, 0)) == []


@pytest.mark.parametrize("a,b", [(a, b) for a in range(1, 5) for b in range(1, 5) if a + b <= 7])
def test_enumeration_matches_prufer_filter(a, b):
    fast = list(enumerate_bipartite_trees(a, b))
    slow = set(enumerate_bipartite_trees_prufer_filter(a, b))
    assert len(fast) == len(set(fast)) == bipartite_tree_count(a, b)
    assert set(fast) == slow
    assert all(is_tree(build_instance(a, b, e)) for e in fast)


@pytest.mark.parametrize("a,b", [(6, 3), (5, 4), (3, 5)])
def test_enumeration_counts_larger(a, b):
    trees = set(enumerate_bipartite_trees(a, b))
    assert len(trees) == bipartite_tree_count(a, b)


def test_no_counterexample_up_to_eight():
    assert find_cyclic_counterexamples(8) == []


def test_nine_vertex_witnesses(witnesses9):
    assert witnesses9
    assert any(w.instance.n_fixed == 6 and w.instance.n_free == 3 for w in witnesses9)
    assert any(match_paper_profile(w) for w in witnesses9 if w.instance.n_free == 3)
    assert bipartition_minima(witnesses9) == {(6, 3): len(witnesses9)}


def test_witness_invariants(witnesses9):
    for w in witnesses9:
        inst = w.instance
        assert is_tree(inst) and w.n_total == inst.n_vertices
        pg = build_penalty_graph(crossing_matrix(inst))
        assert not is_acyclic(pg)
        arcs = {(u, v) for u, v, _ in pg.arcs}
        assert all((w.cycle[k], w.cycle[(k + 1) % len(w.cycle)]) in arcs for k in range(len(w.cycle)))
        for u, v in itertools.combinations(range(inst.n_free), 2):
            assert common_neighbors(inst, u, v) <= 1
        assert fas_accounting(inst, brute_force_opt(inst)).ok


def test_search_deterministic_across_jobs(witnesses9):
    assert find_cyclic_counterexamples(9, jobs=2) == witnesses9
    assert [w.sort_key for w in witnesses9] == sorted(w.sort_key for w in witnesses9)


def test_search_budget_guard():
    with pytest.raises(SizeGuardError):
        find_cyclic_counterexamples(11)


def test_paper_profile_matching(paper_tree):
    w = make_witness(paper_tree)
    assert w.cr_profile == PAPER_PROFILE
    assert matching_labelings(w) == [(0, 1, 2)]
    assert match_paper_profile(w)


def test_profile_mismatch_on_other_sums():
    # pair sums are (1, 1, 1), not (5, 5, 9)
    inst = build_instance(3, 3, [(0, 0), (1, 1), (2, 2)])
    w = CounterexampleWitness(inst, 6, (), (0, 0, 0, 1, 0, 1))
    assert not match_paper_profile(w)


def test_profile_needs_three_free():
    w = CounterexampleWitness(build_instance(1, 1, [(0, 0)]), 2, (), None)
    with pytest.raises(ValueError):
        match_paper_profile(w)


def test_acyclic_instance_is_no_witness(matching):
    assert make_witness(matching) is None


def test_reconstructed_paper_tree(paper_tree):
    trees = reconstruct_paper_trees()
    assert trees == [paper_tree]
    assert [paper_tree.fixed_label(a) for a in range(6)] == list("dfbace")


def test_canonical_free_labels_is_relabel_invariant(paper_tree):
    canon = canonical_free_labels(paper_tree)
    for perm in itertools.permutations(range(3)):
        moved = build_instance(6, 3, [(a, perm[b]) for a, b in paper_tree.edges])
        assert canonical_free_labels(moved) == canon
