"""Exception hierarchy.

Every failure raised by the library derives from :class:`RamseyForgeError`,
so callers (and the CLI) can catch one type. Subclasses carry a short
machine-readable ``code`` used in reports.
"""


class RamseyForgeError(Exception):
    code = "error"


class OddCycleError(RamseyForgeError):
    code = "odd-cycle-found"

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(f"graph is not bipartite; odd cycle {list(self.cycle)}")


class TooLargeError(RamseyForgeError):
    code = "too-large"


class IntractableError(RamseyForgeError):
    code = "intractable"


class DegenerateError(RamseyForgeError):
    code = "degenerate"


class EmptySideError(RamseyForgeError):
    code = "empty-side"


class DivisionDegenerateError(RamseyForgeError):
    code = "division-degenerate"


class NoCandidateError(RamseyForgeError):
    code = "no-candidate"


class AlphaTooSmallError(RamseyForgeError):
    code = "alpha-too-small"


class TooManyRemovalsError(RamseyForgeError):
    code = "too-many-removals"


class NotATreeError(RamseyForgeError):
    code = "not-a-tree"


class NoEdgesError(RamseyForgeError):
    code = "no-edges"


class InfeasibleError(RamseyForgeError):
    code = "infeasible"


class LinkOverflowError(RamseyForgeError):
    code = "link-overflow"


class ParityViolationError(RamseyForgeError):
    code = "parity-violation"


class EmbeddingFailedError(RamseyForgeError):
    code = "embedding-failed"

    def __init__(self, message, stuck_vertex=None, trace=()):
        self.stuck_vertex = stuck_vertex
        self.trace = list(trace)
        super().__init__(message)


class FormatError(RamseyForgeError):
    code = "format"
