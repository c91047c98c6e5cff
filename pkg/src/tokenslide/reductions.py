"""Instance transformers for the planar, split and bipartite constructions.

Source instances are undirected problems encoded as oriented graphs: each
edge is given by one arc and its direction is ignored, so tokens on the
source side may slide either way (``solve_exact(..., undirected=True)``).
The reduced instances are genuinely oriented.

Every reduction returns a :class:`ReductionArtifact` recording the vertex
numbering and every arbitrary choice, so the reduced graph can be rebuilt and
sequences can be lifted (original to reduced) or projected (reduced to
original) without recomputing anything.

Vertex numbering of reduced graphs:

* planar: original vertices keep their labels; the ``i``-th edge in sorted
  order gets ``w1..w4 = n + 4i + 1 .. n + 4i + 4``.
* split: ``v`` itself is the first copy of every vertex; second copies of the
  clique vertices follow in sorted order from ``n + 1``; then ``c1``, ``c2``.
* bipartite: ``v`` and its twin ``v' = n + v``.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import (
    InternalLiftFailure,
    InternalProjectFailure,
    InvalidMove,
    InvalidSourceSequence,
    InvalidSplitPartition,
    MissingSection,
    NotBipartite,
    NotMaximumIndependentSet,
    ReductionError,
    TsdSyntaxError,
    UnknownSubject,
)
from .exact import apply_and_validate
from .graph import (
    Configuration,
    OrientedGraph,
    SplitPartition,
    is_bipartite,
    is_split_partition,
    max_degree,
    max_independent_set,
    split_partition,
)
from .instance import Instance, Move, ReconfSequence

KINDS = ("planar", "split", "bipartite")


class ReductionWarning(UserWarning):
    """A precondition of the hardness argument (not of the construction) fails."""


@dataclass(frozen=True)
class ReductionPolicy:
    """How arbitrary choices are resolved.

    ``seed=None`` is the lexicographic rule (smaller endpoint first);
    otherwise every choice is a coin flip from ``random.Random(seed)``.
    """

    seed: int | None = None

    @classmethod
    def parse(cls, text: str) -> ReductionPolicy:
        if text == "lex":
            return cls()
        if text.startswith("seed:"):
            try:
                return cls(int(text[5:]))
            except ValueError:
                pass
        raise ValueError(f"policy must be 'lex' or 'seed:<int>', got {text!r}")

    def __str__(self) -> str:
        return "lex" if self.seed is None else f"seed:{self.seed}"

    def chooser(self):
        """Return ``orient(a, b)`` mapping an unordered pair to an ordered one."""
        if self.seed is None:
            return lambda a, b: (min(a, b), max(a, b))
        rng = random.Random(self.seed)

        def orient(a: int, b: int) -> tuple[int, int]:
            lo, hi = min(a, b), max(a, b)
            return (lo, hi) if rng.random() < 0.5 else (hi, lo)

        return orient


class Gadget(NamedTuple):
    first: int
    second: int
    w1: int
    w2: int
    w3: int
    w4: int

    @property
    def internal(self) -> tuple[int, int, int, int]:
        return self.w1, self.w2, self.w3, self.w4

    def arcs(self) -> list[tuple[int, int]]:
        a, b, w1, w2, w3, w4 = self
        return [(a, w1), (w1, w2), (w2, b), (b, w4), (w4, a), (w2, w3), (w3, w1), (a, w3)]

    def other(self, v: int) -> int:
        return self.second if v == self.first else self.first


@dataclass(frozen=True)
class ReductionArtifact:
    kind: str
    policy: str
    original_n: int
    reduced_n: int
    forward_map: dict[int, tuple[int, ...]]
    policy_trace: tuple[tuple[int, int], ...]
    gadgets: tuple[Gadget, ...] = ()
    clique: frozenset[int] = field(default_factory=frozenset)
    independent: frozenset[int] = field(default_factory=frozenset)
    c1: int | None = None
    c2: int | None = None

    def image(self, v: int) -> int:
        """The vertex carrying ``v``'s token in mapped configurations."""
        return self.forward_map[v][0]

    def second_copy(self, v: int) -> int:
        return self.forward_map[v][1]


# -- planar ---------------------------------------------------------------------


def _planar_gadgets(n: int, edges, orient) -> tuple[Gadget, ...]:
    out = []
    for i, (a, b) in enumerate(edges):
        first, second = orient(a, b)
        base = n + 4 * i
        out.append(Gadget(first, second, base + 1, base + 2, base + 3, base + 4))
    return tuple(out)


def _planar_map(gadgets: Iterable[Gadget], conf: Iterable[int]) -> Configuration:
    conf = set(conf)
    out = set(conf)
    for g in gadgets:
        out.add(g.w2 if g.first in conf else g.w1)
    return tuple(sorted(out))


def reduce_planar(inst: Instance, policy: ReductionPolicy = ReductionPolicy()) -> tuple[Instance, ReductionArtifact]:
    """Replace every edge by a six-vertex oriented gadget.

    Both token sets must be maximum independent sets of the (undirected)
    input graph.  Inputs of maximum degree above 3 only draw a warning.
    """
    g = inst.graph
    alpha = max_independent_set(g).alpha
    for which, conf in (("source", inst.source), ("target", inst.target)):
        if len(conf) != alpha:
            raise NotMaximumIndependentSet(which, len(conf), alpha)
    if max_degree(g) > 3:
        warnings.warn(f"input has maximum degree {max_degree(g)} > 3", ReductionWarning, stacklevel=2)
    gadgets = _planar_gadgets(g.n, g.edges(), policy.chooser())
    art = ReductionArtifact(
        kind="planar",
        policy=str(policy),
        original_n=g.n,
        reduced_n=g.n + 4 * len(gadgets),
        forward_map={v: (v,) for v in g.vertices},
        policy_trace=tuple((x.first, x.second) for x in gadgets),
        gadgets=gadgets,
    )
    return rebuild_reduced(art, inst), art


# -- split ----------------------------------------------------------------------


def reduce_split(
    inst: Instance,
    split: SplitPartition | None = None,
    policy: ReductionPolicy = ReductionPolicy(),
) -> tuple[Instance, ReductionArtifact]:
    """Double the clique side and route clique-to-clique moves through ``c1 -> c2``.

    ``split`` is ``(clique, independent)``; if omitted one is computed.
    """
    g = inst.graph
    if split is None:
        split = split_partition(g)
        if split is None:
            raise InvalidSplitPartition("input graph is not a split graph")
    clique, indep = frozenset(split[0]), frozenset(split[1])
    if not is_split_partition(g, clique, indep):
        raise InvalidSplitPartition(
            f"({sorted(clique)}, {sorted(indep)}) is not a clique/independent-set partition"
        )
    n = g.n
    ks = sorted(clique)
    second = {v: n + 1 + i for i, v in enumerate(ks)}
    c1, c2 = n + len(ks) + 1, n + len(ks) + 2
    fmap = {v: ((v, second[v]) if v in clique else (v,)) for v in g.vertices}
    orient = policy.chooser()
    trace = []
    for a, b in g.edges():
        if a in clique and b in clique:
            for x in (a, second[a]):
                for y in (b, second[b]):
                    trace.append(orient(x, y))
    for v in ks:
        trace.append(orient(v, second[v]))
    art = ReductionArtifact(
        kind="split",
        policy=str(policy),
        original_n=n,
        reduced_n=c2,
        forward_map=fmap,
        policy_trace=tuple(trace),
        clique=clique,
        independent=indep,
        c1=c1,
        c2=c2,
    )
    return rebuild_reduced(art, inst), art


# -- bipartite ------------------------------------------------------------------


def reduce_bipartite(inst: Instance, policy: ReductionPolicy = ReductionPolicy()) -> tuple[Instance, ReductionArtifact]:
    """Turn every edge into a directed 4-cycle through the twins ``u'`` and ``v'``."""
    g = inst.graph
    if not is_bipartite(g):
        raise NotBipartite("input graph has an odd cycle")
    orient = policy.chooser()
    kept = tuple(orient(a, b) for a, b in g.edges())
    art = ReductionArtifact(
        kind="bipartite",
        policy=str(policy),
        original_n=g.n,
        reduced_n=2 * g.n,
        forward_map={v: (v, g.n + v) for v in g.vertices},
        policy_trace=kept,
    )
    return rebuild_reduced(art, inst), art


def reduce(kind: str, inst: Instance, policy: ReductionPolicy = ReductionPolicy(), split=None):
    if kind == "planar":
        return reduce_planar(inst, policy)
    if kind == "split":
        return reduce_split(inst, split, policy)
    if kind == "bipartite":
        return reduce_bipartite(inst, policy)
    raise UnknownSubject(f"unknown reduction kind {kind!r}; choose from {KINDS}")


# -- rebuilding from an artifact ------------------------------------------------


def map_configuration(art: ReductionArtifact, conf: Iterable[int]) -> Configuration:
    """Image of an original configuration in the reduced graph."""
    if art.kind == "planar":
        return _planar_map(art.gadgets, conf)
    return tuple(sorted(art.image(v) for v in conf))


def unmap_configuration(art: ReductionArtifact, conf: Iterable[int]) -> Configuration:
    """Inverse of :func:`map_configuration` on mapped configurations."""
    conf = tuple(conf)
    if art.kind == "split" and any(v > art.original_n for v in conf):
        raise ReductionError(f"configuration {list(conf)} has tokens outside the first copies")
    if art.kind == "bipartite":
        if any(v > art.original_n for v in conf):
            raise ReductionError(f"configuration {list(conf)} has tokens on twin vertices")
    return tuple(sorted(v for v in conf if v <= art.original_n))


def reduced_arcs(art: ReductionArtifact, original: OrientedGraph) -> list[tuple[int, int]]:
    if art.kind == "planar":
        return [a for g in art.gadgets for a in g.arcs()]
    if art.kind == "bipartite":
        n = art.original_n
        return [a for u, v in art.policy_trace for a in ((u, v), (v, n + u), (n + u, n + v), (n + v, u))]
    c1, c2 = art.c1, art.c2
    arcs = [(c1, c2)]
    for v in sorted(art.clique):
        for x in art.forward_map[v]:
            arcs += [(x, c1), (c2, x)]
    arcs += list(art.policy_trace)
    for a, b in original.edges():
        u, w = (a, b) if a in art.clique else (b, a)
        if u in art.clique and w in art.independent:
            arcs += [(u, w), (w, art.second_copy(u))]
    return arcs


def rebuild_reduced(art: ReductionArtifact, original: Instance) -> Instance:
    """The reduced instance of ``original`` under the choices in ``art``."""
    if original.n != art.original_n:
        raise ReductionError(f"artifact expects {art.original_n} original vertices, got {original.n}")
    g = OrientedGraph(art.reduced_n, reduced_arcs(art, original.graph))
    return Instance(g, map_configuration(art, original.source), map_configuration(art, original.target))


def rebuild_original(art: ReductionArtifact, reduced: Instance) -> Instance:
    """The source instance (edges as sorted pairs) behind ``reduced``."""
    if reduced.n != art.reduced_n:
        raise ReductionError(f"artifact expects {art.reduced_n} reduced vertices, got {reduced.n}")
    n = art.original_n
    if art.kind == "planar":
        edges = [(min(g.first, g.second), max(g.first, g.second)) for g in art.gadgets]
    elif art.kind == "bipartite":
        edges = [(min(a), max(a)) for a in art.policy_trace]
    else:
        ks = sorted(art.clique)
        edges = [(a, b) for i, a in enumerate(ks) for b in ks[i + 1:]]
        edges += [(min(u, w), max(u, w)) for u, w in reduced.graph.arcs if u in art.clique and w in art.independent]
    g = OrientedGraph(n, sorted(edges))
    return Instance(g, unmap_configuration(art, reduced.source), unmap_configuration(art, reduced.target))


# -- lifting --------------------------------------------------------------------


def _validated_end(inst: Instance, seq, undirected: bool, failure) -> Configuration:
    try:
        return apply_and_validate(inst, seq, undirected)
    except InvalidMove as exc:
        raise failure(str(exc)) from exc


def lift_sequence(art: ReductionArtifact, original: Instance, seq: ReconfSequence) -> ReconfSequence:
    """Translate a valid original sequence into one on the reduced instance.

    The result starts at the mapped source and ends at the image of the
    configuration that ``seq`` reaches (the mapped target for a witness).
    """
    end = _validated_end(original, seq, True, InvalidSourceSequence)
    reduced = rebuild_reduced(art, original)
    if art.kind == "planar":
        out = _lift_planar(art, original.graph, seq)
    elif art.kind == "split":
        out = _lift_split(art, seq)
    else:
        out = _lift_bipartite(art, seq)
    got = _validated_end(reduced, out, False, InternalLiftFailure)
    if got != map_configuration(art, end):
        raise InternalLiftFailure(f"lifted sequence ends at {list(got)}, expected {list(map_configuration(art, end))}")
    return out


def _gadget_index(art: ReductionArtifact) -> dict[frozenset, Gadget]:
    return {frozenset((g.first, g.second)): g for g in art.gadgets}


def _lift_planar(art: ReductionArtifact, g: OrientedGraph, seq) -> list[Move]:
    gad = _gadget_index(art)
    out: list[Move] = []
    for u, v in seq:
        # free v: gadgets where v is first move their w1 token to w2
        for x in sorted(g.neighbors(v) - {u}):
            h = gad[frozenset((v, x))]
            if h.first == v:
                out.append(Move(h.w1, h.w2))
        h = gad[frozenset((u, v))]
        if h.first == u:
            out += [Move(h.w2, v), Move(u, h.w1)]
        else:
            out += [Move(u, h.w4), Move(h.w1, h.w2), Move(h.w4, v)]
        # u is empty now: restore the "no endpoint token" placement on its other gadgets
        for x in sorted(g.neighbors(u) - {v}):
            h = gad[frozenset((u, x))]
            if h.first == u:
                out += [Move(h.w2, h.w3), Move(h.w3, h.w1)]
    return out


def _lift_split(art: ReductionArtifact, seq) -> list[Move]:
    c1, c2 = art.c1, art.c2
    out: list[Move] = []
    for x, y in seq:
        if x in art.clique and y in art.clique:
            out += [Move(x, c1), Move(c1, c2), Move(c2, y)]
        elif x in art.clique:
            out.append(Move(x, y))
        elif y in art.clique:
            y2 = art.second_copy(y)
            out += [Move(x, y2), Move(y2, c1), Move(c1, c2), Move(c2, y)]
        else:
            raise InvalidSourceSequence(f"move {x} -> {y} joins two independent-side vertices")
    return out


def _lift_bipartite(art: ReductionArtifact, seq) -> list[Move]:
    kept = set(art.policy_trace)
    n = art.original_n
    out: list[Move] = []
    for u, v in seq:
        if (u, v) in kept:
            out.append(Move(u, v))
        else:
            out += [Move(u, n + v), Move(n + v, n + u), Move(n + u, v)]
    return out


# -- projection -----------------------------------------------------------------


def project_sequence(art: ReductionArtifact, reduced: Instance, seq: ReconfSequence) -> ReconfSequence:
    """Translate a valid reduced sequence into one on the original instance.

    ``seq`` must start at ``reduced.source`` and end at a mapped
    configuration; the result is validated with undirected slides.
    """
    end = _validated_end(reduced, seq, False, InvalidSourceSequence)
    original = rebuild_original(art, reduced)
    try:
        want = unmap_configuration(art, end)
    except ReductionError as exc:
        raise InvalidSourceSequence(f"sequence ends outside the mapped configurations: {exc}") from exc
    if map_configuration(art, want) != end:
        raise InvalidSourceSequence(f"sequence ends at {list(end)}, which is not a mapped configuration")
    if art.kind == "planar":
        out = _project_planar(art, seq)
    elif art.kind == "split":
        out = _project_split(art, seq)
    else:
        out = _project_bipartite(art, original, seq)
    got = _validated_end(original, out, True, InternalProjectFailure)
    if got != want:
        raise InternalProjectFailure(f"projected sequence ends at {list(got)}, expected {list(want)}")
    return out


def _project_planar(art: ReductionArtifact, seq) -> list[Move]:
    owner = {w: g for g in art.gadgets for w in g.internal}
    n = art.original_n
    out = []
    for x, y in seq:
        if y <= n:
            g = owner[x]
            out.append(Move(g.other(y), y))
    return out


def _project_split(art: ReductionArtifact, seq) -> list[Move]:
    n = art.original_n
    second_of = {art.second_copy(v): v for v in art.clique}
    out: list[Move] = []
    start = entry = pos = None
    for x, y in seq:
        if start is None:
            if y <= n:
                out.append(Move(x, y))
            else:
                start, entry, pos = x, y, y
            continue
        if x != pos:
            raise InternalProjectFailure(f"token on {x} moved while a token was inside the clique side")
        if y > n:
            pos = y
            continue
        w = y
        if start in art.independent:
            v = second_of.get(entry)
            if v is None:
                raise InternalProjectFailure(f"independent-side token left {start} through {entry}")
            out.append(Move(start, v))
            if v != w:
                out.append(Move(v, w))
        elif start != w:
            out.append(Move(start, w))
        start = entry = pos = None
    if start is not None:
        raise InternalProjectFailure("sequence ends with a token inside the clique side")
    return out


def _project_bipartite(art: ReductionArtifact, original: Instance, seq) -> list[Move]:
    n = art.original_n

    def strip(v: int) -> int:
        return v - n if v > n else v

    raw = [Move(strip(x), strip(y)) for x, y in seq]
    _validated_end(original, raw, True, InternalProjectFailure)
    out: list[Move] = []
    for m in raw:
        if m.tail == m.head or (out and out[-1] == m):
            continue
        out.append(m)
    return out


# -- proof-side measures used by tests and campaigns -----------------------------


def gadget_weights(art: ReductionArtifact, conf: Iterable[int]) -> list[int]:
    """Tokens per planar gadget, endpoints counted in every gadget they belong to."""
    conf = set(conf)
    return [sum(1 for v in (g.first, g.second, *g.internal) if v in conf) for g in art.gadgets]


# -- .map sidecar ---------------------------------------------------------------


def serialize_artifact(art: ReductionArtifact) -> str:
    lines = [
        f"kind {art.kind}",
        f"policy {art.policy}",
        f"n {art.original_n}",
        f"N {art.reduced_n}",
    ]
    lines += [f"v {v} -> {' '.join(map(str, imgs))}" for v, imgs in sorted(art.forward_map.items())]
    lines += ["g " + " ".join(map(str, g)) for g in art.gadgets]
    if art.kind == "split":
        lines.append(" ".join(["clique", *map(str, sorted(art.clique))]))
        lines.append(" ".join(["indep", *map(str, sorted(art.independent))]))
        lines.append(f"c {art.c1} {art.c2}")
    lines += [f"o {a} {b}" for a, b in art.policy_trace]
    return "\n".join(lines) + "\n"


_MAP_TAGS = ("kind", "policy", "n", "N", "v", "g", "o", "clique", "indep", "c")


def parse_artifact(text: str) -> ReductionArtifact:
    fields: dict = {"fmap": {}, "gadgets": [], "trace": [], "clique": [], "indep": [], "c": (None, None)}
    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = line.split("#", 1)[0].split()
        if not toks:
            continue
        tag, rest = toks[0], toks[1:]
        if tag not in _MAP_TAGS:
            raise TsdSyntaxError(f"unknown map line tag {tag!r}", lineno, 1)
        try:
            if tag in ("kind", "policy"):
                fields[tag] = rest[0]
            elif tag in ("n", "N"):
                fields[tag] = int(rest[0])
            elif tag == "v":
                if rest[1] != "->":
                    raise ValueError
                fields["fmap"][int(rest[0])] = tuple(int(x) for x in rest[2:])
            elif tag == "g":
                fields["gadgets"].append(Gadget(*map(int, rest)))
            elif tag == "o":
                a, b = map(int, rest)
                fields["trace"].append((a, b))
            elif tag in ("clique", "indep"):
                fields[tag] = [int(x) for x in rest]
            else:
                fields["c"] = tuple(map(int, rest))
                if len(fields["c"]) != 2:
                    raise ValueError
        except (ValueError, IndexError, TypeError):
            raise TsdSyntaxError(f"malformed {tag!r} line", lineno, 1) from None
    for key in ("kind", "policy", "n", "N"):
        if key not in fields:
            raise MissingSection(f"map file lacks a '{key}' line")
    if fields["kind"] not in KINDS:
        raise TsdSyntaxError(f"unknown reduction kind {fields['kind']!r}")
    return ReductionArtifact(
        kind=fields["kind"],
        policy=fields["policy"],
        original_n=fields["n"],
        reduced_n=fields["N"],
        forward_map=fields["fmap"],
        policy_trace=tuple(fields["trace"]),
        gadgets=tuple(fields["gadgets"]),
        clique=frozenset(fields["clique"]),
        independent=frozenset(fields["indep"]),
        c1=fields["c"][0],
        c2=fields["c"][1],
    )


def write_artifact(art: ReductionArtifact, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_artifact(art))


def read_artifact(path) -> ReductionArtifact:
    with open(path, encoding="utf-8") as fh:
        return parse_artifact(fh.read())
