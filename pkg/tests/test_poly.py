import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import instances_on, naive_solve
from tokenslide.errors import NotACograph, NotACycle, NotAPathForest, TokenSetNotIndependent
from tokenslide.exact import is_witness, reachable_configurations, solve_exact
from tokenslide.generators import generate_graph, random_independent_set
from tokenslide.graph import OrientedGraph, max_independent_set
from tokenslide.instance import Instance, load_fixture, make_instance
from tokenslide.poly import (
    analyze_cycle,
    is_locked,
    route,
    solve_auto,
    solve_cograph,
    solve_cycle,
    solve_path_forest,
    solve_with,
    total_distance,
)


@st.composite
def cycles(draw, min_n=3, max_n=9):
    n = draw(st.integers(min_n, max_n))
    flips = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    return n, [(i % n + 1, i) if f else (i, i % n + 1) for i, f in zip(range(1, n + 1), flips)]


@st.composite
def path_forests(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    cuts = draw(st.lists(st.booleans(), min_size=max(n - 1, 0), max_size=max(n - 1, 0)))
    perm = draw(st.permutations(range(1, n + 1)))
    arcs = []
    for i, cut in enumerate(cuts, start=1):
        if not cut:
            a, b = perm[i - 1], perm[i]
            arcs.append((a, b) if draw(st.booleans()) else (b, a))
    return n, arcs


@pytest.mark.parametrize("name, expected", [("fig4a", False), ("fig4b", False), ("fig4c", True)])
def test_fixtures(name, expected):
    inst = load_fixture(name)
    assert solve_cycle(inst).answer is expected
    assert solve_auto(inst).answer is expected


def test_fig4a_is_locked():
    inst = load_fixture("fig4a")
    info = analyze_cycle(inst)
    assert info.uniform and info.locked and is_locked(inst)


def test_fig4b_and_fig4c_are_non_uniform():
    for name in ("fig4b", "fig4c"):
        info = analyze_cycle(load_fixture(name))
        assert not info.uniform and not info.locked
        assert info.source_vertex is not None


def test_fig4b_source_vertex():
    # out-degree 2 only at vertex 3
    assert analyze_cycle(load_fixture("fig4b")).source_vertex == 3


def test_pairing_on_uniform_cycle():
    inst = make_instance(6, [(i, i % 6 + 1) for i in range(1, 7)], [1, 4], [2, 5])
    info = analyze_cycle(inst)
    assert dict(info.pairing) == {1: 2, 4: 5}
    assert info.total_distance == 2 == total_distance(inst.graph, info.pairing)


def test_source_token_leaving_through_a_blocked_exit():
    # 1 has out-arcs to 2 and 4; leaving for either neighbor stalls the other token
    for arc in ((3, 2), (2, 3)):
        inst = make_instance(4, [(1, 2), (1, 4), (3, 4), arc], [1, 3], [2, 4])
        assert solve_cycle(inst).answer is False
        assert solve_exact(inst).answer is False


def test_cycle_witness_validates():
    inst = load_fixture("fig4c")
    res = solve_cycle(inst, want_witness=True)
    assert res.answer and is_witness(inst, res.witness)


def test_deadlocked_path_target_is_unreachable():
    # {3, 4} is not independent (arc 4 -> 3), so no sequence can end there
    arcs = [(1, 2), (2, 3), (4, 3), (4, 5)]
    with pytest.raises(TokenSetNotIndependent):
        make_instance(5, arcs, [1, 4], [3, 4])
    assert naive_solve(5, arcs, [1, 4], [3, 4]) is False
    g = OrientedGraph(5, arcs)
    assert (3, 4) not in reachable_configurations(g, (1, 4))


def test_path_with_one_token_stuck_behind_another():
    # 2 -> 3 is blocked while 4 is occupied, and 4 can only leave for 5
    arcs = [(1, 2), (2, 3), (4, 3), (4, 5)]
    for target, expected in (((3, 5), True), ((1, 3), True), ((2, 4), True), ((2, 5), True)):
        inst = make_instance(5, arcs, [1, 4], target)
        assert solve_path_forest(inst).answer is expected is naive_solve(5, arcs, [1, 4], target)
    inst = make_instance(5, arcs, [2, 5], [1, 4])
    assert solve_path_forest(inst).answer is False is naive_solve(5, arcs, [2, 5], [1, 4])


def test_path_forest_checks_each_component():
    inst = make_instance(4, [(1, 2), (3, 4)], [1, 3], [2, 4])
    res = solve_path_forest(inst, want_witness=True)
    assert res.answer and is_witness(inst, res.witness)
    assert not solve_path_forest(make_instance(5, [(1, 2), (3, 4)], [1, 3], [1, 5])).answer


def test_wrong_class_errors():
    p4 = make_instance(4, [(1, 2), (2, 3), (3, 4)], [], [])
    with pytest.raises(NotACograph):
        solve_cograph(p4)
    with pytest.raises(NotACycle):
        solve_cycle(p4)
    with pytest.raises(NotAPathForest):
        solve_path_forest(load_fixture("fig4a"))


def test_routing():
    assert route(load_fixture("fig4a").graph) == "cycle"
    assert route(OrientedGraph(3, [(1, 2)])) == "path"
    assert route(OrientedGraph(4, [(1, 2), (1, 3), (1, 4)])) == "cograph"
    assert route(OrientedGraph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (2, 5)])) == "exact"


def test_unknown_algorithm():
    with pytest.raises(ValueError):
        solve_with("magic", load_fixture("fig4a"))


@settings(max_examples=300, deadline=None)
@given(instances_on(cycles()))
def test_cycle_solver_matches_naive_oracle(case):
    n, arcs, s, t = case
    inst = make_instance(n, arcs, s, t)
    res = solve_cycle(inst, want_witness=True)
    assert res.answer == naive_solve(n, arcs, s, t)
    if res.answer:
        assert is_witness(inst, res.witness)


@settings(max_examples=200, deadline=None)
@given(instances_on(path_forests()))
def test_path_solver_matches_naive_oracle(case):
    n, arcs, s, t = case
    inst = make_instance(n, arcs, s, t)
    res = solve_path_forest(inst, want_witness=True)
    assert res.answer == naive_solve(n, arcs, s, t)
    if res.answer:
        assert is_witness(inst, res.witness)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_cograph_solver_matches_oracle_with_witness(seed):
    rng = random.Random(seed)
    g, _ = generate_graph("cograph", rng.randint(1, 9), rng)
    k = rng.randint(0, max_independent_set(g).alpha)
    inst = Instance(g, random_independent_set(g, k, rng), random_independent_set(g, k, rng))
    res = solve_cograph(inst, want_witness=True)
    assert res.answer == solve_exact(inst).answer
    if res.answer:
        assert is_witness(inst, res.witness)


def test_locked_means_no_move():
    inst = load_fixture("fig4a")
    assert is_locked(inst)
    assert solve_exact(inst).stats.states_expanded == 1
