"""Instances, token slides, and the ``.tsd`` / ``.wit`` text formats.

``.tsd`` layout (``#`` comments run to end of line)::

    p tsd <n> <m>
    a <u> <v>            # exactly m arc lines
    s <k> <v1> ... <vk>  # source tokens
    t <k> <v1> ... <vk>  # target tokens

Sections after the ``p`` line may come in any order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, NamedTuple

from .errors import (
    ArcCountMismatch,
    MissingSection,
    TokenSetNotIndependent,
    TsdSyntaxError,
)
from .graph import Configuration, OrientedGraph, as_configuration, build_graph, is_independent

FIXTURE_NAMES = ("fig4a", "fig4b", "fig4c")


class Move(NamedTuple):
    """A token slide along the arc ``tail -> head``."""

    tail: int
    head: int

    def __str__(self) -> str:
        return f"{self.tail} -> {self.head}"


ReconfSequence = list[Move]


def as_moves(moves: Iterable[Iterable[int]]) -> ReconfSequence:
    return [Move(*m) for m in moves]


@dataclass(frozen=True)
class Instance:
    """An oriented graph with source and target token sets.

    Token sets are normalized to sorted tuples and must be independent.  The
    two sets may differ in size; solvers answer ``no`` in that case.
    """

    graph: OrientedGraph
    source: Configuration = field(default=())
    target: Configuration = field(default=())

    def __post_init__(self) -> None:
        for name in ("source", "target"):
            conf = as_configuration(getattr(self, name), self.graph.n, name)
            if not is_independent(self.graph, conf):
                raise TokenSetNotIndependent(f"{name} tokens {list(conf)} are not independent")
            object.__setattr__(self, name, conf)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def token_count(self) -> int:
        return len(self.source)

    def reversed(self) -> Instance:
        """Same graph with source and target exchanged."""
        return Instance(self.graph, self.target, self.source)


def make_instance(n: int, arcs: Iterable[tuple[int, int]], source: Iterable[int], target: Iterable[int]) -> Instance:
    return Instance(build_graph(n, arcs), tuple(source), tuple(target))


# -- .tsd ----------------------------------------------------------------------

_TOKEN = re.compile(r"[^ \t\r\n]+")


def _fields(line: str) -> list[tuple[str, int]]:
    body = line.split("#", 1)[0]
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]


def _int(tok: tuple[str, int], lineno: int, what: str) -> int:
    text, col = tok
    try:
        value = int(text)
    except ValueError:
        raise TsdSyntaxError(f"expected integer {what}, found {text!r}", lineno, col) from None
    if value < 0:
        raise TsdSyntaxError(f"{what} must be nonnegative, found {value}", lineno, col)
    return value


def parse_instance(text: str) -> Instance:
    n = m = None
    arcs: list[tuple[int, int]] = []
    tokens: dict[str, tuple[list[int], int]] = {}
    p_line = 0

    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = _fields(line)
        if not toks:
            continue
        tag, col = toks[0]
        if n is None:
            if tag != "p":
                raise MissingSection("first non-comment line must be 'p tsd <n> <m>'", lineno, col)
            if len(toks) != 4 or toks[1][0] != "tsd":
                raise TsdSyntaxError("problem line must read 'p tsd <n> <m>'", lineno, col)
            n = _int(toks[2], lineno, "vertex count")
            m = _int(toks[3], lineno, "arc count")
            p_line = lineno
            continue
        if tag == "p":
            raise TsdSyntaxError("second problem line", lineno, col)
        if tag == "a":
            if len(toks) != 3:
                raise TsdSyntaxError("arc line must read 'a <u> <v>'", lineno, col)
            arcs.append((_int(toks[1], lineno, "arc tail"), _int(toks[2], lineno, "arc head")))
        elif tag in ("s", "t"):
            if tag in tokens:
                raise TsdSyntaxError(f"duplicate '{tag}' line", lineno, col)
            if len(toks) < 2:
                raise TsdSyntaxError(f"'{tag}' line needs a token count", lineno, col)
            k = _int(toks[1], lineno, "token count")
            if len(toks) - 2 != k:
                raise TsdSyntaxError(f"'{tag}' line declares {k} tokens but lists {len(toks) - 2}", lineno, col)
            tokens[tag] = ([_int(t, lineno, "token") for t in toks[2:]], lineno)
        else:
            raise TsdSyntaxError(f"unknown line tag {tag!r}", lineno, col)

    if n is None:
        raise MissingSection("missing 'p tsd' problem line")
    if len(arcs) != m:
        raise ArcCountMismatch(f"problem line declares {m} arcs but {len(arcs)} were given", p_line)
    for tag in ("s", "t"):
        if tag not in tokens:
            raise MissingSection(f"missing '{tag}' line")

    graph = build_graph(n, arcs)
    confs = {}
    for tag, name in (("s", "source"), ("t", "target")):
        values, lineno = tokens[tag]
        conf = as_configuration(values, n, f"line {lineno} ({name} tokens)")
        if not is_independent(graph, conf):
            raise TokenSetNotIndependent(f"line {lineno}: {name} tokens {list(conf)} are not independent")
        confs[tag] = conf
    return Instance(graph, confs["s"], confs["t"])


def serialize_instance(inst: Instance) -> str:
    g = inst.graph
    lines = [f"p tsd {g.n} {g.arc_count}"]
    lines += [f"a {u} {v}" for u, v in g.sorted_arcs()]
    lines.append(" ".join(["s", str(len(inst.source)), *map(str, inst.source)]))
    lines.append(" ".join(["t", str(len(inst.target)), *map(str, inst.target)]))
    return "\n".join(lines) + "\n"


def read_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def write_instance(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_instance(inst))


def fixture_text(name: str) -> str:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {FIXTURE_NAMES}")
    return resources.files("tokenslide").joinpath("fixtures", f"{name}.tsd").read_text(encoding="utf-8")


def load_fixture(name: str) -> Instance:
    """One of the three six-vertex cycle instances: ``fig4a``, ``fig4b``, ``fig4c``."""
    return parse_instance(fixture_text(name))


# -- .wit ----------------------------------------------------------------------


def format_witness(answer: bool, moves: Iterable[Move] | None = None) -> str:
    if not answer:
        return "no\n"
    moves = list(moves or [])
    return "".join([f"yes {len(moves)}\n", *(f"{u} {v}\n" for u, v in moves)])


def parse_witness(text: str) -> tuple[bool, ReconfSequence]:
    rows = [(i, _fields(line)) for i, line in enumerate(text.splitlines(), start=1)]
    rows = [(i, f) for i, f in rows if f]
    if not rows:
        raise MissingSection("empty witness file")
    lineno, head = rows[0]
    if head[0][0] == "no" and len(head) == 1:
        if len(rows) > 1:
            raise TsdSyntaxError("moves listed after 'no'", rows[1][0], 1)
        return False, []
    if head[0][0] != "yes" or len(head) != 2:
        raise TsdSyntaxError("first line must be 'yes <length>' or 'no'", lineno, head[0][1])
    length = _int(head[1], lineno, "witness length")
    moves = []
    for i, f in rows[1:]:
        if len(f) != 2:
            raise TsdSyntaxError("move line must read '<from> <to>'", i, f[0][1])
        moves.append(Move(_int(f[0], i, "move tail"), _int(f[1], i, "move head")))
    if len(moves) != length:
        raise TsdSyntaxError(f"header announces {length} moves but {len(moves)} follow", lineno, head[1][1])
    return True, moves
