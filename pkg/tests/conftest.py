"""Shared helpers: a deliberately naive oracle and hypothesis strategies.

The oracle below shares no code with the package: plain frozensets, plain
adjacency dicts, breadth-first search.  It is slow and obviously correct.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations

import pytest
from hypothesis import strategies as st

ACCEPTANCE_LINES: list[str] = []


def naive_adjacency(n, arcs, undirected=False):
    adj = {v: set() for v in range(1, n + 1)}
    out = {v: set() for v in range(1, n + 1)}
    for a, b in arcs:
        adj[a].add(b)
        adj[b].add(a)
        out[a].add(b)
        if undirected:
            out[b].add(a)
    return adj, out


def naive_moves(adj, out, conf):
    for u in conf:
        rest = conf - {u}
        for v in out[u]:
            if v not in conf and not (adj[v] & rest):
                yield u, v, rest | {v}


def naive_reachable(n, arcs, source, undirected=False):
    adj, out = naive_adjacency(n, arcs, undirected)
    start = frozenset(source)
    seen = {start}
    queue = deque([start])
    while queue:
        conf = queue.popleft()
        for _, _, nxt in naive_moves(adj, out, conf):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def naive_solve(n, arcs, source, target, undirected=False) -> bool:
    if len(source) != len(target):
        return False
    return frozenset(target) in naive_reachable(n, arcs, source, undirected)


def naive_shortest_length(n, arcs, source, target, cap=30):
    """Iterative deepening over move sequences; returns None past ``cap``."""
    adj, out = naive_adjacency(n, arcs)
    goal = frozenset(target)

    def dfs(conf, depth, path):
        if conf == goal:
            return True
        if depth == 0:
            return False
        for _, _, nxt in naive_moves(adj, out, conf):
            if nxt not in path and dfs(nxt, depth - 1, path | {nxt}):
                return True
        return False

    start = frozenset(source)
    for d in range(cap + 1):
        if dfs(start, d, {start}):
            return d
    return None


def naive_independent_sets(n, arcs, size):
    adj, _ = naive_adjacency(n, arcs)
    for combo in combinations(range(1, n + 1), size):
        if all(b not in adj[a] for a, b in combinations(combo, 2)):
            yield combo


@st.composite
def oriented_graphs(draw, min_n=1, max_n=7, max_arcs=None):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(1, n + 1), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_arcs)) if pairs else []
    flips = draw(st.lists(st.booleans(), min_size=len(chosen), max_size=len(chosen)))
    return n, [(b, a) if f else (a, b) for (a, b), f in zip(chosen, flips)]


@st.composite
def instances_on(draw, graph_strategy):
    """An oriented graph with two independent token sets of equal size."""
    n, arcs = draw(graph_strategy)
    sizes = [k for k in range(n + 1) if next(naive_independent_sets(n, arcs, k), None) is not None]
    k = draw(st.sampled_from(sizes))
    sets = list(naive_independent_sets(n, arcs, k))
    return n, arcs, draw(st.sampled_from(sets)), draw(st.sampled_from(sets))


@pytest.fixture
def record_criterion():
    def record(number, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
