"""Seeded instance generators for the verification campaigns.

Every generator is a rejection sampler: draw a graph from the class, try to
place the tokens, and redraw on failure until the retry budget runs out.
Output depends only on the :class:`GenSpec` (seed included).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from itertools import combinations, islice

from .errors import InfeasibleSpec
from .graph import (
    Configuration,
    OrientedGraph,
    SplitPartition,
    independent_sets,
    max_independent_set,
)
from .instance import Instance

GRAPH_CLASSES = (
    "cycle",
    "path_forest",
    "cograph",
    "split",
    "bipartite",
    "bipartite_subcubic_max_is",
    "subcubic_max_is",
    "arbitrary",
)
MAX_IS_CLASSES = ("bipartite_subcubic_max_is", "subcubic_max_is")
DEFAULT_RETRIES = 1000

# bounds the randomized token-placement search per draw
_PLACEMENT_BUDGET = 20_000
# at most this many maximum independent sets are enumerated before sampling
_MAX_IS_POOL = 5_000


@dataclass(frozen=True)
class GenSpec:
    """What to draw.  ``token_count=None`` means ``alpha(G)`` for the max-IS classes."""

    graph_class: str
    vertex_count: int
    token_count: int | None
    seed: int
    retries: int = DEFAULT_RETRIES

    def __post_init__(self) -> None:
        if self.graph_class not in GRAPH_CLASSES:
            raise ValueError(f"unknown graph class {self.graph_class!r}; choose from {GRAPH_CLASSES}")
        if self.vertex_count < 1:
            raise ValueError("vertex_count must be >= 1")
        if self.token_count is not None and self.token_count < 0:
            raise ValueError("token_count must be >= 0")
        if self.token_count is None and self.graph_class not in MAX_IS_CLASSES:
            raise ValueError(f"token_count is required for class {self.graph_class!r}")


def _orient(edges, rng: random.Random) -> list[tuple[int, int]]:
    return [(u, v) if rng.random() < 0.5 else (v, u) for u, v in edges]


def _relabel_edges(n: int, edges, rng: random.Random):
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return [(perm[u - 1], perm[v - 1]) for u, v in edges]


def _cycle_edges(n: int, rng: random.Random):
    if n < 3:
        return None
    return [(i, i % n + 1) for i in range(1, n + 1)]


def _path_forest_edges(n: int, rng: random.Random):
    edges = []
    start = 1
    while start <= n:
        length = rng.randint(1, n - start + 1)
        edges += [(v, v + 1) for v in range(start, start + length - 1)]
        start += length
    return _relabel_edges(n, edges, rng)


def _cograph_edges(n: int, rng: random.Random):
    """Random cotree: split the vertex set recursively into a union or a join."""
    edges = []

    def build(vs: list[int]) -> None:
        if len(vs) < 2:
            return
        cut = rng.randint(1, len(vs) - 1)
        left, right = vs[:cut], vs[cut:]
        if rng.random() < 0.5:
            edges.extend((a, b) for a in left for b in right)
        build(left)
        build(right)

    vs = list(range(1, n + 1))
    rng.shuffle(vs)
    build(vs)
    return edges


def _split_edges(n: int, rng: random.Random, clique_size: int | None = None):
    c = rng.randint(1, n) if clique_size is None else clique_size
    vs = list(range(1, n + 1))
    rng.shuffle(vs)
    clique, indep = vs[:c], vs[c:]
    p = rng.uniform(0.2, 0.8)
    edges = list(combinations(sorted(clique), 2))
    edges += [(a, b) for a in clique for b in indep if rng.random() < p]
    return edges, (frozenset(clique), frozenset(indep))


def _bipartite_edges(n: int, rng: random.Random, max_deg: int | None = None):
    vs = list(range(1, n + 1))
    rng.shuffle(vs)
    cut = rng.randint(0, n)
    left, right = vs[:cut], vs[cut:]
    pairs = [(a, b) for a in left for b in right]
    return _thin(pairs, rng, max_deg, n)


def _subcubic_edges(n: int, rng: random.Random):
    return _thin(list(combinations(range(1, n + 1), 2)), rng, 3, n)


def _arbitrary_edges(n: int, rng: random.Random):
    return _thin(list(combinations(range(1, n + 1), 2)), rng, None, n)


def _thin(pairs, rng: random.Random, max_deg: int | None, n: int):
    rng.shuffle(pairs)
    p = rng.uniform(0.2, 0.7)
    deg = [0] * (n + 1)
    edges = []
    for a, b in pairs:
        if rng.random() >= p:
            continue
        if max_deg is not None and (deg[a] >= max_deg or deg[b] >= max_deg):
            continue
        deg[a] += 1
        deg[b] += 1
        edges.append((min(a, b), max(a, b)))
    return sorted(edges)


def random_independent_set(g: OrientedGraph, k: int, rng: random.Random) -> Configuration | None:
    """Randomized backtracking for an independent set of size ``k``.

    Returns ``None`` when none exists or the node budget is spent.
    """
    order = list(g.vertices)
    rng.shuffle(order)
    nbr = {v: g.neighbor_mask(v) for v in order}
    budget = [_PLACEMENT_BUDGET]
    chosen: list[int] = []

    def rec(i: int, blocked: int) -> bool:
        if len(chosen) == k:
            return True
        budget[0] -= 1
        if budget[0] < 0 or len(order) - i < k - len(chosen):
            return False
        for j in range(i, len(order)):
            if len(order) - j < k - len(chosen):
                return False
            v = order[j]
            if blocked >> (v - 1) & 1:
                continue
            chosen.append(v)
            if rec(j + 1, blocked | nbr[v] | (1 << (v - 1))):
                return True
            chosen.pop()
        return False

    return tuple(sorted(chosen)) if rec(0, 0) else None


def _draw_edges(cls: str, n: int, rng: random.Random):
    partition = None
    if cls == "cycle":
        edges = _cycle_edges(n, rng)
    elif cls == "path_forest":
        edges = _path_forest_edges(n, rng)
    elif cls == "cograph":
        edges = _cograph_edges(n, rng)
    elif cls == "split":
        edges, partition = _split_edges(n, rng)
    elif cls == "bipartite":
        edges = _bipartite_edges(n, rng)
    elif cls == "bipartite_subcubic_max_is":
        edges = _bipartite_edges(n, rng, max_deg=3)
    elif cls == "subcubic_max_is":
        edges = _subcubic_edges(n, rng)
    else:
        edges = _arbitrary_edges(n, rng)
    return edges, partition


def generate_graph(graph_class: str, n: int, rng: random.Random) -> tuple[OrientedGraph, SplitPartition | None]:
    """One random oriented graph of the class (tokens are the caller's business)."""
    if graph_class not in GRAPH_CLASSES:
        raise ValueError(f"unknown graph class {graph_class!r}; choose from {GRAPH_CLASSES}")
    edges, partition = _draw_edges(graph_class, n, rng)
    if edges is None:
        raise InfeasibleSpec(f"class {graph_class!r} has no graph on {n} vertices")
    return OrientedGraph(n, _orient(edges, rng)), partition


def generate_with_partition(spec: GenSpec) -> tuple[Instance, SplitPartition | None]:
    """Like :func:`generate_instance`, also returning the drawn split partition."""
    rng = random.Random(spec.seed)
    n, k, cls = spec.vertex_count, spec.token_count, spec.graph_class
    for _ in range(spec.retries):
        edges, partition = _draw_edges(cls, n, rng)
        if edges is None:
            break
        g = OrientedGraph(n, _orient(edges, rng))
        if cls in MAX_IS_CLASSES:
            alpha = max_independent_set(g).alpha
            if k is not None and k != alpha:
                continue
            pool = list(islice(independent_sets(g, size=alpha), _MAX_IS_POOL))
            S, T = rng.choice(pool), rng.choice(pool)
        else:
            S = random_independent_set(g, k, rng)
            T = random_independent_set(g, k, rng) if S is not None else None
            if S is None or T is None:
                continue
        return Instance(g, S, T), partition
    raise InfeasibleSpec(f"no {cls} instance with n={n}, k={k} after {spec.retries} draws (seed {spec.seed})")


def generate_instance(spec: GenSpec) -> Instance:
    return generate_with_partition(spec)[0]


def with_tokens(spec: GenSpec, k: int) -> GenSpec:
    return replace(spec, token_count=k)
