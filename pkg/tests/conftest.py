import random

import pytest
from hypothesis import strategies as st

from oscm.core import build_instance, from_named

ACCEPTANCE_LINES = []


def random_instance(rng: random.Random, max_fixed=8, max_free=7, min_free=0):
    n_fixed = rng.randint(0, max_fixed)
    n_free = rng.randint(min_free, max_free)
    density = rng.random()
    edges = [(a, b) for a in range(n_fixed) for b in range(n_free) if rng.random() < density]
    return build_instance(n_fixed, n_free, edges)


def random_ordering(rng: random.Random, n):
    order = list(range(n))
    rng.shuffle(order)
    return tuple(order)


def fuzz_corpus(count, seed, **kw):
    rng = random.Random(seed)
    return [random_instance(rng, **kw) for _ in range(count)]


@st.composite
def instances(draw, max_fixed=7, max_free=6):
    n_fixed = draw(st.integers(0, max_fixed))
    n_free = draw(st.integers(0, max_free))
    pairs = [(a, b) for a in range(n_fixed) for b in range(n_free)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return build_instance(n_fixed, n_free, chosen)


@st.composite
def instance_and_ordering(draw, **kw):
    inst = draw(instances(**kw))
    order = draw(st.permutations(range(inst.n_free)))
    return inst, tuple(order)


# the tree reconstructed from the published cr profile, fixed order (d,f,b,a,c,e)
PAPER_TREE_EDGES = [
    ("d", "h"), ("f", "i"), ("b", "g"), ("b", "i"),
    ("a", "g"), ("a", "h"), ("c", "h"), ("e", "i"),
]


@pytest.fixture
def paper_tree():
    return from_named(("d", "f", "b", "a", "c", "e"), ("g", "h", "i"), PAPER_TREE_EDGES)


@pytest.fixture
def matching():
    return build_instance(2, 2, [(0, 0), (1, 1)])


@pytest.fixture
def k22():
    return build_instance(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
