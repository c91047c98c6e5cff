import random

import pytest

from tokenslide.errors import InfeasibleSpec
from tokenslide.generators import (
    GRAPH_CLASSES,
    MAX_IS_CLASSES,
    GenSpec,
    generate_graph,
    generate_instance,
    generate_with_partition,
    random_independent_set,
    with_tokens,
)
from tokenslide.graph import (
    OrientedGraph,
    bipartition,
    is_cograph,
    is_independent,
    is_oriented_cycle,
    is_path_forest,
    is_split_partition,
    max_degree,
    max_independent_set,
)

CHECKS = {
    "cycle": is_oriented_cycle,
    "path_forest": is_path_forest,
    "cograph": is_cograph,
    "bipartite": lambda g: bipartition(g) is not None,
    "bipartite_subcubic_max_is": lambda g: bipartition(g) is not None and max_degree(g) <= 3,
    "subcubic_max_is": lambda g: max_degree(g) <= 3,
    "arbitrary": lambda g: True,
}


@pytest.mark.parametrize("cls", GRAPH_CLASSES)
def test_same_spec_same_instance(cls):
    k = None if cls in MAX_IS_CLASSES else 2
    spec = GenSpec(cls, 7, k, seed=42)
    assert generate_instance(spec) == generate_instance(spec)


def test_different_seeds_usually_differ():
    drawn = {generate_instance(GenSpec("arbitrary", 8, 2, seed=s)) for s in range(20)}
    assert len(drawn) > 10


@pytest.mark.parametrize("cls", [c for c in GRAPH_CLASSES if c != "split"])
def test_class_membership_and_sizes(cls):
    for seed in range(30):
        n = 3 + seed % 6
        k = None if cls in MAX_IS_CLASSES else 1
        inst = generate_instance(GenSpec(cls, n, k, seed))
        g = inst.graph
        assert g.n == n and CHECKS[cls](g)
        assert is_independent(g, inst.source) and is_independent(g, inst.target)
        if cls in MAX_IS_CLASSES:
            assert len(inst.source) == len(inst.target) == max_independent_set(g).alpha
        else:
            assert len(inst.source) == len(inst.target) == 1


def test_split_draws_come_with_a_valid_partition():
    for seed in range(30):
        inst, part = generate_with_partition(GenSpec("split", 6, 1, seed))
        assert part is not None and is_split_partition(inst.graph, *part)


def test_max_is_classes_accept_an_explicit_alpha():
    inst = generate_instance(GenSpec("subcubic_max_is", 6, None, seed=3))
    alpha = len(inst.source)
    again = generate_instance(GenSpec("subcubic_max_is", 6, alpha, seed=3))
    assert len(again.source) == alpha


def test_token_count_required_outside_max_is_classes():
    with pytest.raises(ValueError):
        GenSpec("cycle", 5, None, 0)


@pytest.mark.parametrize("kwargs", [{"graph_class": "torus"}, {"vertex_count": 0}, {"token_count": -1}])
def test_bad_specs(kwargs):
    base = dict(graph_class="cycle", vertex_count=5, token_count=1, seed=0)
    base.update(kwargs)
    with pytest.raises(ValueError):
        GenSpec(**base)


def test_infeasible_specs_raise():
    with pytest.raises(InfeasibleSpec):
        generate_instance(GenSpec("cycle", 2, 1, 0))
    with pytest.raises(InfeasibleSpec):
        generate_instance(GenSpec("cycle", 6, 4, 0, retries=20))
    with pytest.raises(InfeasibleSpec):
        generate_graph("cycle", 2, random.Random(0))


def test_with_tokens_only_changes_the_count():
    spec = GenSpec("cycle", 6, 1, 9)
    assert with_tokens(spec, 3) == GenSpec("cycle", 6, 3, 9)


def test_random_independent_set():
    g = OrientedGraph(5, [(i, i % 5 + 1) for i in range(1, 6)])
    rng = random.Random(1)
    for _ in range(20):
        s = random_independent_set(g, 2, rng)
        assert len(s) == 2 and is_independent(g, s)
    assert random_independent_set(g, 3, rng) is None
    assert random_independent_set(g, 0, rng) == ()
