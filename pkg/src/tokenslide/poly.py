"""Polynomial-time routes for oriented cycles and cographs, plus dispatch.

Oriented paths (and disjoint unions of them) are solved by exact search
restricted to one component at a time, memoized per component.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import NotACograph, NotACycle, NotAPathForest
from .exact import (
    SearchLimits,
    SearchStats,
    SolveResult,
    bfs,
    neighbor_masks,
    out_lists,
    solve_exact,
)
from .graph import (
    OrientedGraph,
    _co_components,
    _components,
    connected_components,
    directed_distance,
    is_cograph,
    is_oriented_cycle,
    is_path_forest,
    mask_of,
    vertices_of,
)
from .instance import Instance, Move

ALGORITHMS = ("auto", "exact", "cycle", "path", "cograph")


def _no(tag: str, expanded: int = 0) -> SolveResult:
    return SolveResult(False, None, SearchStats(expanded, 0, tag))


def _yes(tag: str, moves: list[Move] | None, want_witness: bool, expanded: int = 0) -> SolveResult:
    return SolveResult(True, list(moves or []) if want_witness else None, SearchStats(expanded, 0, tag))


def _restrict(inst: Instance, keep, drop_arcs=()) -> tuple[Instance, tuple[int, ...]]:
    """Sub-instance induced on ``keep`` (minus ``drop_arcs``) with relabelling."""
    labels = tuple(sorted(keep))
    index = {v: i + 1 for i, v in enumerate(labels)}
    dropped = set(drop_arcs)
    arcs = [(index[u], index[v]) for u, v in inst.graph.arcs if u in index and v in index and (u, v) not in dropped]
    sub = Instance(
        OrientedGraph(len(labels), arcs),
        tuple(index[s] for s in inst.source if s in index),
        tuple(index[t] for t in inst.target if t in index),
    )
    return sub, labels


def _relabel(moves: list[Move] | None, labels: tuple[int, ...]) -> list[Move] | None:
    if moves is None:
        return None
    return [Move(labels[u - 1], labels[v - 1]) for u, v in moves]


# -- oriented cycles ----------------------------------------------------------


@dataclass(frozen=True)
class CycleAnalysis:
    uniform: bool
    source_vertex: int | None
    locked: bool
    pairing: tuple[tuple[int, int], ...] | None = None
    total_distance: int | None = None


def _require_cycle(g: OrientedGraph) -> None:
    if not is_oriented_cycle(g):
        raise NotACycle(f"graph with {g.n} vertices and {g.arc_count} arcs is not an oriented cycle (n >= 3)")


def _uniform_order(g: OrientedGraph) -> list[int]:
    order = [1]
    while True:
        (nxt,) = g.out_neighbors(order[-1])
        if nxt == 1:
            return order
        order.append(nxt)


def _is_uniform(g: OrientedGraph) -> bool:
    return all(g.out_degree(v) == 1 for v in g.vertices)


def _locked(g: OrientedGraph, source, target, uniform: bool) -> bool:
    if not uniform or tuple(source) == tuple(target):
        return False
    toks = set(source)
    # directed distance exactly 2 on a uniform cycle: two out-steps ahead
    for s in toks:
        (a,) = g.out_neighbors(s)
        (b,) = g.out_neighbors(a)
        if b not in toks or b == s:
            return False
    return True


def is_locked(inst: Instance) -> bool:
    _require_cycle(inst.graph)
    return _locked(inst.graph, inst.source, inst.target, _is_uniform(inst.graph))


def _best_pairing(order: list[int], source, target) -> tuple[dict[int, int] | None, int | None]:
    """Cyclic order-preserving source->target assignment for a uniform cycle.

    Only non-crossing shifts qualify: unrolled along the cycle, the token end
    points must stay at least two apart, so no token ever has to overtake
    another.  Among those, the smallest total distance wins, then the shift
    giving the smallest source vertex the smallest target.
    """
    n = len(order)
    pos = {v: i for i, v in enumerate(order)}
    s_cyc = sorted(source, key=pos.__getitem__)
    t_cyc = sorted(target, key=pos.__getitem__)
    k = len(s_cyc)
    if k == 0:
        return {}, 0
    smallest = min(source)
    best = None
    for shift in range(k):
        pairing = {s_cyc[i]: t_cyc[(i + shift) % k] for i in range(k)}
        ends = [pos[s] + (pos[pairing[s]] - pos[s]) % n for s in s_cyc]
        ends.append(ends[0] + n)
        if any(b - a < 2 for a, b in zip(ends, ends[1:])) and k > 1:
            continue
        delta = sum(ends[:k]) - sum(pos[s] for s in s_cyc)
        key = (delta, pairing[smallest])
        if best is None or key < best[0]:
            best = (key, pairing)
    if best is None:
        return None, None
    return best[1], best[0][0]


def analyze_cycle(inst: Instance) -> CycleAnalysis:
    g = inst.graph
    _require_cycle(g)
    uniform = _is_uniform(g)
    source_vertex = None if uniform else min(v for v in g.vertices if g.out_degree(v) == 2)
    locked = _locked(g, inst.source, inst.target, uniform)
    pairing = delta = None
    if uniform and inst.source and len(inst.source) == len(inst.target):
        p, delta = _best_pairing(_uniform_order(g), inst.source, inst.target)
        pairing = tuple(sorted(p.items())) if p is not None else None
    return CycleAnalysis(uniform, source_vertex, locked, pairing, delta)


def _uniform_witness(inst: Instance) -> list[Move]:
    """Potential-descent schedule: every slide lowers the total distance by one."""
    g = inst.graph
    order = _uniform_order(g)
    n = len(order)
    nxt = {v: order[(i + 1) % n] for i, v in enumerate(order)}
    goal, delta = _best_pairing(order, inst.source, inst.target)
    if goal is None:
        raise RuntimeError("no non-crossing pairing exists")
    occupied = set(inst.source)
    moves: list[Move] = []
    for _ in range(n * max(delta, 1)):
        if delta == 0:
            return moves
        for x in sorted(occupied):
            if goal[x] == x:
                continue
            y = nxt[x]
            if y not in occupied and nxt[y] not in occupied:
                break
        else:
            raise RuntimeError(f"uniform-cycle schedule stalled at {sorted(occupied)}")
        occupied.remove(x)
        occupied.add(y)
        goal[y] = goal.pop(x)
        moves.append(Move(x, y))
        delta -= 1
    raise RuntimeError("uniform-cycle schedule exceeded its iteration cap")


def solve_cycle(inst: Instance, want_witness: bool = False) -> SolveResult:
    g = inst.graph
    _require_cycle(g)
    tag = "cycle"
    S, T = set(inst.source), set(inst.target)
    if len(S) != len(T):
        return _no(tag)
    if S == T:
        return _yes(tag, [], want_witness)

    if _is_uniform(g):
        if _locked(g, inst.source, inst.target, True):
            return _no(tag)
        return _yes(tag, _uniform_witness(inst) if want_witness else None, want_witness)

    v1 = min(v for v in g.vertices if g.out_degree(v) == 2)
    a, b = sorted(g.out_neighbors(v1))
    if v1 in S and v1 in T:
        # v1 has no in-arcs, so its token never moves and blocks both neighbors
        return _via_paths(inst, set(g.vertices) - {v1, a, b}, want_witness)
    if v1 not in S and v1 not in T:
        return _via_paths(inst, set(g.vertices) - {v1}, want_witness)
    if v1 in T:
        return _no(tag)

    # v1 in S \ T: its token leaves through exactly one of the two out-arcs.
    # The other arc stays as an adjacency: a token may not sit on that
    # neighbor while v1 is still occupied, so the branch is searched on the
    # cycle with one arc disabled rather than on a path.
    nbr = neighbor_masks(g)
    expanded = 0
    for exit_to, other in ((a, b), (b, a)):
        out = out_lists(g)
        out[v1] = (exit_to,)
        res, _ = bfs(out, nbr, mask_of(inst.source), mask_of(inst.target), want_witness=want_witness, tag=tag)
        expanded += res.stats.states_expanded
        if res.answer:
            return _yes(tag, res.witness, want_witness, expanded)
    return _no(tag, expanded)


def _via_paths(inst: Instance, keep, want_witness: bool) -> SolveResult:
    sub, labels = _restrict(inst, keep)
    res = solve_path_forest(sub, want_witness)
    return SolveResult(res.answer, _relabel(res.witness, labels), SearchStats(res.stats.states_expanded, 0, "cycle"))


# -- path forests --------------------------------------------------------------


@lru_cache(maxsize=8192)
def _path_reach(n: int, arcs: frozenset, source: int) -> frozenset[int]:
    g = OrientedGraph(n, arcs)
    _, seen = bfs(out_lists(g), neighbor_masks(g), source, None)
    return frozenset(seen)


@lru_cache(maxsize=4096)
def _path_parts(g: OrientedGraph) -> tuple | None:
    """Components of a path forest with their relabelled subgraphs, or None."""
    if not is_path_forest(g):
        return None
    parts = []
    for comp in connected_components(g):
        sub, labels = g.induced_subgraph(comp)
        parts.append((mask_of(comp), sub, labels))
    return tuple(parts)


def _local_mask(mask: int, labels: tuple[int, ...]) -> int:
    return sum(1 << i for i, v in enumerate(labels) if mask >> (v - 1) & 1)


def solve_path_forest(inst: Instance, want_witness: bool = False, limits: SearchLimits = SearchLimits()) -> SolveResult:
    tag = "path_forest"
    parts = _path_parts(inst.graph)
    if parts is None:
        raise NotAPathForest("underlying graph is not a disjoint union of paths")
    if len(inst.source) != len(inst.target):
        return _no(tag)
    S, T = mask_of(inst.source), mask_of(inst.target)
    if any((S & cm).bit_count() != (T & cm).bit_count() for cm, _, _ in parts):
        return _no(tag)
    moves: list[Move] = []
    expanded = 0
    for cm, sub, labels in parts:
        if S & cm == T & cm:
            continue
        src, dst = _local_mask(S, labels), _local_mask(T, labels)
        if want_witness:
            res = solve_exact(Instance(sub, vertices_of(src), vertices_of(dst)), limits, want_witness=True)
            expanded += res.stats.states_expanded
            if not res.answer:
                return _no(tag, expanded)
            moves += _relabel(res.witness, labels)
        else:
            reach = _path_reach(sub.n, sub.arcs, src)
            expanded += len(reach)
            if dst not in reach:
                return _no(tag, expanded)
    return _yes(tag, moves, want_witness, expanded)


# -- cographs --------------------------------------------------------------------


def _path_within(g: OrientedGraph, part: frozenset, s: int, t: int) -> list[Move] | None:
    parent = {s: None}
    frontier = [s]
    while frontier:
        nxt = []
        for x in frontier:
            for y in sorted(g.out_neighbors(x)):
                if y in part and y not in parent:
                    parent[y] = x
                    nxt.append(y)
        frontier = nxt
    if t not in parent:
        return None
    path = [t]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    return [Move(u, v) for u, v in zip(path, path[1:])]


def solve_cograph(inst: Instance, want_witness: bool = False) -> SolveResult:
    g = inst.graph
    tag = "cograph"
    if not is_cograph(g):
        raise NotACograph("graph contains an induced P4")

    def rec(part: frozenset, S: frozenset, T: frozenset) -> list[Move] | None:
        if len(S) != len(T):
            return None
        if S == T:
            return []
        if len(S) == 1:
            return _path_within(g, part, next(iter(S)), next(iter(T)))
        comps = _components(g, part)
        if len(comps) > 1:
            moves: list[Move] = []
            for c in comps:
                sub = rec(c, S & c, T & c)
                if sub is None:
                    return None
                moves += sub
            return moves
        # connected: every independent set of size >= 2 sits inside one co-component
        cocomps = _co_components(g, part)
        home_s = [c for c in cocomps if S <= c]
        home_t = [c for c in cocomps if T <= c]
        assert len(home_s) == 1 and len(home_t) == 1, "independent set spans co-components"
        if home_s[0] != home_t[0]:
            return None
        return rec(home_s[0], S, T)

    moves = rec(frozenset(g.vertices), frozenset(inst.source), frozenset(inst.target))
    if moves is None:
        return _no(tag)
    return _yes(tag, moves, want_witness)


# -- dispatch ------------------------------------------------------------------


def route(g: OrientedGraph) -> str:
    if is_oriented_cycle(g):
        return "cycle"
    if is_path_forest(g):
        return "path"
    if is_cograph(g):
        return "cograph"
    return "exact"


def solve_with(
    algo: str,
    inst: Instance,
    limits: SearchLimits = SearchLimits(),
    want_witness: bool = False,
) -> SolveResult:
    """Run the named algorithm (one of ``ALGORITHMS``)."""
    if algo == "auto":
        return solve_auto(inst, limits, want_witness)
    if algo == "exact":
        return solve_exact(inst, limits, want_witness)
    if algo == "cycle":
        return solve_cycle(inst, want_witness)
    if algo == "path":
        return solve_path_forest(inst, want_witness, limits)
    if algo == "cograph":
        return solve_cograph(inst, want_witness)
    raise ValueError(f"unknown algorithm {algo!r}; choose from {ALGORITHMS}")


def solve_auto(inst: Instance, limits: SearchLimits = SearchLimits(), want_witness: bool = False) -> SolveResult:
    return solve_with(route(inst.graph), inst, limits, want_witness)


def total_distance(g: OrientedGraph, pairing) -> float:
    """Sum of directed distances over ``(source, target)`` pairs."""
    return sum(directed_distance(g, s, t) for s, t in pairing)
