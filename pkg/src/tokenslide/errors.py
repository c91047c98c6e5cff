"""Exception hierarchy shared by every module."""

from __future__ import annotations


class TokenSlidingError(Exception):
    """Base class for all errors raised by this package."""


# graph construction / queries


class GraphError(TokenSlidingError, ValueError):
    pass


class SelfLoop(GraphError):
    def __init__(self, arc: tuple[int, int]):
        self.arc = arc
        super().__init__(f"self-loop on vertex {arc[0]}: arc {arc}")


class AntiParallelPair(GraphError):
    def __init__(self, arc: tuple[int, int]):
        self.arc = arc
        super().__init__(f"arc {arc} together with {(arc[1], arc[0])} is not oriented")


class DuplicateArc(GraphError):
    def __init__(self, arc: tuple[int, int]):
        self.arc = arc
        super().__init__(f"duplicate arc {arc}")


class VertexOutOfRange(GraphError):
    def __init__(self, vertex: object, n: int, context: str = ""):
        self.vertex = vertex
        self.n = n
        where = f" in {context}" if context else ""
        super().__init__(f"vertex {vertex!r}{where} outside 1..{n}")


class TooLargeForExact(TokenSlidingError):
    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(f"{n} vertices exceeds the exact-computation cap of {cap}")


# instances and text formats


class InstanceError(TokenSlidingError, ValueError):
    pass


class DuplicateToken(InstanceError):
    pass


class TokenSetNotIndependent(InstanceError):
    pass


class FormatError(InstanceError):
    """A positional problem in a text file (1-based line and column)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}" + (f", column {column}" if column else "") + f": {message}"
        super().__init__(message)


class TsdSyntaxError(FormatError):
    pass


class ArcCountMismatch(FormatError):
    pass


class MissingSection(FormatError):
    pass


class InfeasibleSpec(TokenSlidingError):
    pass


# sequences and search


class InvalidMove(TokenSlidingError):
    """A token slide that cannot be applied; ``step`` is 1-based."""

    reason = "invalid move"

    def __init__(self, step: int, move: tuple[int, int]):
        self.step = step
        self.move = tuple(move)
        super().__init__(f"step {step} ({move[0]} -> {move[1]}): {self.reason}")


class NoTokenAtSource(InvalidMove):
    reason = "no token on the tail vertex"


class NotAnArc(InvalidMove):
    reason = "not an arc of the graph"


class DestinationOccupied(InvalidMove):
    reason = "head vertex already holds a token"


class ResultNotIndependent(InvalidMove):
    reason = "resulting token set is not independent"


class StateLimitExceeded(TokenSlidingError):
    def __init__(self, states_expanded: int, limit: int):
        self.states_expanded = states_expanded
        self.limit = limit
        super().__init__(f"search truncated after {states_expanded} states (limit {limit})")


# polynomial solvers


class WrongGraphClass(TokenSlidingError, ValueError):
    pass


class NotACycle(WrongGraphClass):
    pass


class NotAPathForest(WrongGraphClass):
    pass


class NotACograph(WrongGraphClass):
    pass


# reductions


class ReductionError(TokenSlidingError):
    pass


class NotMaximumIndependentSet(ReductionError, ValueError):
    def __init__(self, which: str, size: int, alpha: int):
        self.which = which
        self.size = size
        self.alpha = alpha
        super().__init__(f"{which} has {size} tokens but the maximum independent set size is {alpha}")


class InvalidSplitPartition(ReductionError, ValueError):
    pass


class NotBipartite(ReductionError, ValueError):
    pass


class InvalidSourceSequence(ReductionError, ValueError):
    pass


class InternalLiftFailure(ReductionError, AssertionError):
    pass


class InternalProjectFailure(ReductionError, AssertionError):
    pass


class UnknownSubject(TokenSlidingError, ValueError):
    pass
