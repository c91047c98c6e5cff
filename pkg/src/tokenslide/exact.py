"""Exact breadth-first search over the directed configuration graph.

States are token sets encoded as bitmasks (bit ``v - 1`` for vertex ``v``),
which is a canonical encoding of the sorted token list.  Transitions are
single slides along arcs, so the search only ever runs forward.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    DestinationOccupied,
    InvalidMove,
    NoTokenAtSource,
    NotAnArc,
    ResultNotIndependent,
    StateLimitExceeded,
)
from .graph import Configuration, OrientedGraph, bit, mask_of, vertices_of
from .instance import Instance, Move, ReconfSequence

DEFAULT_MAX_STATES = 10_000_000


@dataclass(frozen=True)
class SearchLimits:
    max_states: int = DEFAULT_MAX_STATES
    max_moves: int | None = None

    def __post_init__(self) -> None:
        if self.max_states <= 0:
            raise ValueError("max_states must be positive")
        if self.max_moves is not None and self.max_moves <= 0:
            raise ValueError("max_moves must be positive")


@dataclass(frozen=True)
class SearchStats:
    states_expanded: int = 0
    frontier_peak: int = 0
    algorithm_tag: str = "exact"


@dataclass(frozen=True)
class SolveResult:
    answer: bool
    witness: list[Move] | None = None
    stats: SearchStats = field(default_factory=SearchStats)

    def __bool__(self) -> bool:
        return self.answer


def out_lists(g: OrientedGraph, undirected: bool = False) -> list[tuple[int, ...]]:
    pick = g.neighbors if undirected else g.out_neighbors
    return [()] + [tuple(sorted(pick(v))) for v in g.vertices]


def neighbor_masks(g: OrientedGraph) -> list[int]:
    return [0] + [g.neighbor_mask(v) for v in g.vertices]


def successors(out: Sequence[Sequence[int]], nbr: Sequence[int], state: int):
    """Yield ``(u, v, next_state)`` for every valid slide from ``state``."""
    rest = state
    while rest:
        low = rest & -rest
        rest ^= low
        u = low.bit_length()
        others = state ^ low
        for v in out[u]:
            bv = 1 << (v - 1)
            if not (nbr[v] & others) and not (others & bv):
                yield u, v, others | bv


def bfs(
    out: Sequence[Sequence[int]],
    nbr: Sequence[int],
    source: int,
    target: int | None,
    limits: SearchLimits = SearchLimits(),
    want_witness: bool = False,
    tag: str = "exact",
) -> tuple[SolveResult, set[int] | dict[int, tuple]]:
    """Core search shared by every exact route.

    With ``target=None`` the whole reachable set is explored and returned as
    the second element; otherwise the search stops at the target.
    """
    parents: dict[int, tuple] | None = {source: ()} if want_witness else None
    seen: set[int] | dict[int, tuple] = parents if parents is not None else {source}
    depth = {source: 0} if limits.max_moves is not None else None
    queue = deque([source])
    expanded = 0
    peak = 1
    cut_off = False

    def result(found: bool, goal: int | None = None) -> SolveResult:
        witness = None
        if found and want_witness:
            witness = []
            cur = goal
            while parents[cur]:
                prev, u, v = parents[cur]
                witness.append(Move(u, v))
                cur = prev
            witness.reverse()
        return SolveResult(found, witness, SearchStats(expanded, peak, tag))

    if target is not None and source == target:
        return result(True, source), seen
    while queue:
        state = queue.popleft()
        if expanded >= limits.max_states:
            raise StateLimitExceeded(expanded, limits.max_states)
        expanded += 1
        d = depth[state] if depth is not None else 0
        for u, v, nxt in successors(out, nbr, state):
            if nxt in seen:
                continue
            if depth is not None:
                if d + 1 > limits.max_moves:
                    cut_off = True
                    continue
                depth[nxt] = d + 1
            if parents is not None:
                parents[nxt] = (state, u, v)
            else:
                seen.add(nxt)
            if nxt == target:
                return result(True, nxt), seen
            queue.append(nxt)
        if len(queue) > peak:
            peak = len(queue)
    if cut_off:
        # unexplored states remain beyond the move bound: not a genuine "no"
        raise StateLimitExceeded(expanded, limits.max_states)
    return result(False), seen


def solve_exact(
    inst: Instance,
    limits: SearchLimits = SearchLimits(),
    want_witness: bool = False,
    undirected: bool = False,
) -> SolveResult:
    """Decide reachability of ``inst.target`` from ``inst.source``.

    Witnesses are shortest.  ``undirected=True`` lets tokens slide along arcs
    in both directions (the classical undirected problem on the underlying
    graph); reductions use it for their source instances.
    """
    tag = "exact-undirected" if undirected else "exact"
    if len(inst.source) != len(inst.target):
        return SolveResult(False, None, SearchStats(0, 0, tag))
    res, _ = bfs(
        out_lists(inst.graph, undirected),
        neighbor_masks(inst.graph),
        mask_of(inst.source),
        mask_of(inst.target),
        limits,
        want_witness,
        tag,
    )
    return res


def reachable_masks(
    g: OrientedGraph,
    source: Iterable[int],
    limits: SearchLimits = SearchLimits(),
    undirected: bool = False,
) -> set[int]:
    _, seen = bfs(out_lists(g, undirected), neighbor_masks(g), mask_of(source), None, limits)
    return set(seen)


def reachable_configurations(
    g: OrientedGraph,
    source: Iterable[int],
    limits: SearchLimits = SearchLimits(),
    undirected: bool = False,
) -> set[Configuration]:
    """Every configuration reachable from ``source`` (including itself)."""
    return {vertices_of(m) for m in reachable_masks(g, source, limits, undirected)}


def apply_and_validate(inst: Instance, seq: Iterable[Move], undirected: bool = False) -> Configuration:
    """Replay ``seq`` from the source, checking every slide; return the final set."""
    g = inst.graph
    nbr = neighbor_masks(g)
    state = mask_of(inst.source)
    for step, move in enumerate(seq, start=1):
        u, v = move
        if not (1 <= u <= g.n and state & bit(u)):
            raise NoTokenAtSource(step, (u, v))
        if not (g.has_arc(u, v) or (undirected and g.has_arc(v, u))):
            raise NotAnArc(step, (u, v))
        if state & bit(v):
            raise DestinationOccupied(step, (u, v))
        others = state ^ bit(u)
        if nbr[v] & others:
            raise ResultNotIndependent(step, (u, v))
        state = others | bit(v)
    return vertices_of(state)


def configurations_along(inst: Instance, seq: Iterable[Move]) -> list[Configuration]:
    """Configurations visited by an already-validated sequence, source first."""
    cur = set(inst.source)
    out = [tuple(sorted(cur))]
    for u, v in seq:
        cur.remove(u)
        cur.add(v)
        out.append(tuple(sorted(cur)))
    return out


def is_witness(inst: Instance, seq: ReconfSequence, undirected: bool = False) -> bool:
    try:
        return apply_and_validate(inst, seq, undirected) == inst.target
    except InvalidMove:
        return False
