"""Oriented graphs, independence and distance queries, and class recognizers.

Vertices are the integers ``1..n``.  Internally every vertex ``v`` owns bit
``v - 1`` of an ``int`` bitmask, which is how token sets are represented
inside the searches.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    AntiParallelPair,
    DuplicateArc,
    DuplicateToken,
    SelfLoop,
    TooLargeForExact,
    VertexOutOfRange,
)

Arc = tuple[int, int]
Configuration = tuple[int, ...]

DEFAULT_EXACT_CAP = 32


def bit(v: int) -> int:
    return 1 << (v - 1)


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def vertices_of(mask: int) -> Configuration:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


class OrientedGraph:
    """Simple directed graph without anti-parallel arcs.

    Immutable after construction.  Out-, in- and underlying neighborhoods are
    all derived from the single arc set.
    """

    __slots__ = ("n", "arcs", "_out", "_in", "_nbr", "_nbr_mask", "_hash")

    def __init__(self, n: int, arcs: Iterable[Arc]):
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"vertex count must be a nonnegative integer, got {n!r}")
        out: list[set[int]] = [set() for _ in range(n + 1)]
        inn: list[set[int]] = [set() for _ in range(n + 1)]
        seen: set[Arc] = set()
        for arc in arcs:
            u, v = arc
            for x in (u, v):
                if not isinstance(x, int) or not 1 <= x <= n:
                    raise VertexOutOfRange(x, n, f"arc {(u, v)}")
            if u == v:
                raise SelfLoop((u, v))
            if (u, v) in seen:
                raise DuplicateArc((u, v))
            if (v, u) in seen:
                raise AntiParallelPair((u, v))
            seen.add((u, v))
            out[u].add(v)
            inn[v].add(u)
        self.n = n
        self.arcs: frozenset[Arc] = frozenset(seen)
        self._out = tuple(frozenset(s) for s in out)
        self._in = tuple(frozenset(s) for s in inn)
        self._nbr = tuple(a | b for a, b in zip(self._out, self._in))
        self._nbr_mask = tuple(mask_of(s) for s in self._nbr)
        self._hash = hash((n, self.arcs))

    # -- basic queries -----------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def check_vertex(self, v: int, context: str = "") -> None:
        if not isinstance(v, int) or not 1 <= v <= self.n:
            raise VertexOutOfRange(v, self.n, context)

    def out_neighbors(self, v: int) -> frozenset[int]:
        self.check_vertex(v)
        return self._out[v]

    def in_neighbors(self, v: int) -> frozenset[int]:
        self.check_vertex(v)
        return self._in[v]

    def neighbors(self, v: int) -> frozenset[int]:
        """Neighbors of ``v`` in the underlying undirected graph."""
        self.check_vertex(v)
        return self._nbr[v]

    def neighbor_mask(self, v: int) -> int:
        return self._nbr_mask[v]

    def has_arc(self, u: int, v: int) -> bool:
        return 1 <= u <= self.n and v in self._out[u]

    def adjacent(self, u: int, v: int) -> bool:
        return 1 <= u <= self.n and v in self._nbr[u]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def out_degree(self, v: int) -> int:
        return len(self.out_neighbors(v))

    def in_degree(self, v: int) -> int:
        return len(self.in_neighbors(v))

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    def edges(self) -> list[Arc]:
        """Underlying undirected edges as sorted ``(min, max)`` pairs."""
        return sorted((min(a), max(a)) for a in self.arcs)

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple[OrientedGraph, tuple[int, ...]]:
        """Return the induced subgraph relabelled densely, plus ``labels``.

        ``labels[i - 1]`` is the original name of new vertex ``i``.
        """
        labels = tuple(sorted(set(vertices)))
        index = {v: i + 1 for i, v in enumerate(labels)}
        arcs = [(index[u], index[v]) for u in labels for v in self._out[u] if v in index]
        return OrientedGraph(len(labels), arcs), labels

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrientedGraph):
            return NotImplemented
        return self.n == other.n and self.arcs == other.arcs

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"OrientedGraph(n={self.n}, arcs={self.sorted_arcs()})"


def build_graph(vertex_count: int, arc_list: Iterable[Arc]) -> OrientedGraph:
    """Validate ``arc_list`` and return the oriented graph on ``1..vertex_count``."""
    return OrientedGraph(vertex_count, [tuple(a) for a in arc_list])


def as_configuration(tokens: Iterable[int], n: int | None = None, context: str = "configuration") -> Configuration:
    """Normalize a token collection into a sorted tuple, rejecting repeats."""
    toks = list(tokens)
    conf = tuple(sorted(set(toks)))
    if len(conf) != len(toks):
        dupes = sorted({t for t in toks if toks.count(t) > 1})
        raise DuplicateToken(f"{context}: repeated token(s) {dupes}")
    if n is not None:
        for t in conf:
            if not isinstance(t, int) or not 1 <= t <= n:
                raise VertexOutOfRange(t, n, context)
    return conf


def underlying_neighbors(g: OrientedGraph, v: int) -> frozenset[int]:
    return g.neighbors(v)


def is_independent(g: OrientedGraph, tokens: Iterable[int]) -> bool:
    m = 0
    for v in tokens:
        g.check_vertex(v)
        if g.neighbor_mask(v) & m:
            return False
        m |= bit(v)
    return True


def directed_distance(g: OrientedGraph, u: int, v: int) -> float:
    """Length of a shortest directed path from ``u`` to ``v`` (``math.inf`` if none)."""
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in g._out[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                if y == v:
                    return dist[y]
                queue.append(y)
    return math.inf


def reachable_from(g: OrientedGraph, u: int) -> set[int]:
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for y in g._out[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def directed_path(g: OrientedGraph, u: int, v: int) -> list[int] | None:
    """Vertices of one shortest directed path ``u .. v``, or ``None``."""
    parent = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            path = [v]
            while path[-1] != u:
                path.append(parent[path[-1]])
            return path[::-1]
        for y in sorted(g._out[x]):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    return None


# -- components ------------------------------------------------------------


def _components(g: OrientedGraph, vertices: Iterable[int]) -> list[frozenset[int]]:
    pool = set(vertices)
    comps = []
    for start in sorted(pool):
        if start not in pool:
            continue
        pool.discard(start)
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in g._nbr[x]:
                if y in pool:
                    pool.discard(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(frozenset(comp))
    return comps


def _co_components(g: OrientedGraph, vertices: Iterable[int]) -> list[frozenset[int]]:
    # Complement BFS by non-neighbor sweep: each popped vertex scans only the
    # still-unvisited pool, so the complement is never materialized.
    unvisited = set(vertices)
    comps = []
    while unvisited:
        start = min(unvisited)
        unvisited.discard(start)
        comp = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            nbr = g._nbr[x]
            found = [y for y in unvisited if y not in nbr]
            for y in found:
                unvisited.discard(y)
                comp.add(y)
                queue.append(y)
        comps.append(frozenset(comp))
    return comps


def connected_components(g: OrientedGraph) -> list[frozenset[int]]:
    """Components of the underlying graph, ordered by smallest member."""
    return _components(g, g.vertices)


def co_components(g: OrientedGraph) -> list[frozenset[int]]:
    """Components of the complement of the underlying graph, ordered by smallest member."""
    return _co_components(g, g.vertices)


# -- recognizers -----------------------------------------------------------


class CycleOrientation(str, enum.Enum):
    UNIFORM = "uniform"
    NON_UNIFORM = "non-uniform"
    NOT_APPLICABLE = "not-applicable"


SplitPartition = tuple[frozenset[int], frozenset[int]]


@dataclass(frozen=True)
class ClassReport:
    is_oriented_cycle: bool
    cycle_orientation: CycleOrientation
    is_path_forest: bool
    is_cograph: bool
    split_partition: SplitPartition | None
    is_bipartite: bool
    max_degree: int


def is_oriented_cycle(g: OrientedGraph) -> bool:
    if g.n < 3 or g.arc_count != g.n:
        return False
    if any(len(g._nbr[v]) != 2 for v in g.vertices):
        return False
    return len(connected_components(g)) == 1


def cycle_order(g: OrientedGraph) -> list[int]:
    """Vertices of a cycle in cyclic order, starting at 1 towards its smaller neighbor."""
    order = [1]
    prev, cur = 1, min(g._nbr[1])
    while cur != 1:
        order.append(cur)
        prev, cur = cur, next(x for x in g._nbr[cur] if x != prev)
    return order


def is_path_forest(g: OrientedGraph) -> bool:
    if any(len(g._nbr[v]) > 2 for v in g.vertices):
        return False
    # acyclic iff m = n - (#components)
    return g.arc_count == g.n - len(connected_components(g))


def is_cograph(g: OrientedGraph) -> bool:
    """P4-freeness via recursive component / co-component decomposition."""
    stack = [frozenset(g.vertices)]
    while stack:
        part = stack.pop()
        if len(part) <= 1:
            continue
        comps = _components(g, part)
        if len(comps) > 1:
            stack.extend(comps)
            continue
        cocomps = _co_components(g, part)
        if len(cocomps) == 1:
            # connected with connected complement: contains an induced P4
            return False
        stack.extend(cocomps)
    return True


def is_split_partition(g: OrientedGraph, clique: Iterable[int], independent: Iterable[int]) -> bool:
    k, i = set(clique), set(independent)
    if k & i or (k | i) != set(g.vertices):
        return False
    if any(not g.adjacent(a, b) for a in k for b in k if a < b):
        return False
    return all(not (g._nbr[v] & i) for v in i)


def split_partition(g: OrientedGraph) -> SplitPartition | None:
    """A (clique, independent set) partition, or ``None`` if ``g`` is not split.

    Degree-sequence test: order vertices by nonincreasing degree, take the
    longest prefix whose degrees stay >= index - 1, and check the edge balance.
    """
    if g.n == 0:
        return frozenset(), frozenset()
    order = sorted(g.vertices, key=lambda v: (-len(g._nbr[v]), v))
    deg = [len(g._nbr[v]) for v in order]
    m = max(i for i in range(1, g.n + 1) if deg[i - 1] >= i - 1)
    if sum(deg[:m]) != m * (m - 1) + sum(deg[m:]):
        return None
    part = frozenset(order[:m]), frozenset(order[m:])
    assert is_split_partition(g, *part)
    return part


def bipartition(g: OrientedGraph) -> tuple[frozenset[int], frozenset[int]] | None:
    side: dict[int, int] = {}
    for start in g.vertices:
        if start in side:
            continue
        side[start] = 0
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in g._nbr[x]:
                if y not in side:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    return None
    return (
        frozenset(v for v, s in side.items() if s == 0),
        frozenset(v for v, s in side.items() if s == 1),
    )


def is_bipartite(g: OrientedGraph) -> bool:
    return bipartition(g) is not None


def max_degree(g: OrientedGraph) -> int:
    return max((len(g._nbr[v]) for v in g.vertices), default=0)


def classify(g: OrientedGraph) -> ClassReport:
    cyc = is_oriented_cycle(g)
    if cyc:
        uniform = all(len(g._out[v]) == 1 for v in g.vertices)
        orient = CycleOrientation.UNIFORM if uniform else CycleOrientation.NON_UNIFORM
    else:
        orient = CycleOrientation.NOT_APPLICABLE
    return ClassReport(
        is_oriented_cycle=cyc,
        cycle_orientation=orient,
        is_path_forest=is_path_forest(g),
        is_cograph=is_cograph(g),
        split_partition=split_partition(g),
        is_bipartite=is_bipartite(g),
        max_degree=max_degree(g),
    )


# -- maximum independent set -----------------------------------------------


@dataclass(frozen=True)
class MISCertificate:
    alpha: int
    witness: Configuration


def max_independent_set(g: OrientedGraph, cap: int = DEFAULT_EXACT_CAP) -> MISCertificate:
    """Exact maximum independent set of the underlying graph by branch and bound."""
    if g.n > cap:
        raise TooLargeForExact(g.n, cap)
    nbr = [0] + [g.neighbor_mask(v) for v in g.vertices]
    best_mask, best_size = 0, -1

    def search(cand: int, chosen: int, size: int) -> None:
        nonlocal best_mask, best_size
        if size + cand.bit_count() <= best_size:
            return
        if not cand:
            best_mask, best_size = chosen, size
            return
        # some maximum set contains a minimum-degree vertex or one of its neighbors
        pivot, pdeg = 0, g.n + 1
        for v in vertices_of(cand):
            d = (nbr[v] & cand).bit_count()
            if d < pdeg:
                pivot, pdeg = v, d
                if d <= 1:
                    break
        branches = [pivot] if pdeg <= 1 else vertices_of((nbr[pivot] & cand) | bit(pivot))
        for w in branches:
            search(cand & ~(nbr[w] | bit(w)), chosen | bit(w), size + 1)

    search(mask_of(g.vertices), 0, 0)
    return MISCertificate(best_size, vertices_of(best_mask))


def independent_sets(g: OrientedGraph, size: int | None = None, max_size: int | None = None) -> Iterator[Configuration]:
    """Enumerate independent sets in lexicographic order, optionally of one size."""
    hi = size if size is not None else (max_size if max_size is not None else g.n)
    nbr = [0] + [g.neighbor_mask(v) for v in g.vertices]

    def rec(start: int, chosen: list[int], blocked: int) -> Iterator[Configuration]:
        if size is None or len(chosen) == size:
            yield tuple(chosen)
            if size is not None:
                return
        if len(chosen) >= hi:
            return
        for v in range(start, g.n + 1):
            if blocked & bit(v):
                continue
            chosen.append(v)
            yield from rec(v + 1, chosen, blocked | nbr[v])
            chosen.pop()

    yield from rec(1, [], 0)

