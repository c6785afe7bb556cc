"""Exception hierarchy shared by every module."""


class MadcolorError(Exception):
    """Base class for all package errors."""


class MalformedInputError(MadcolorError, ValueError):
    """Input data (edge list, list file, parameters) is not well formed."""


class ContractError(MadcolorError, ValueError):
    """A documented precondition of an operation was violated."""


class NotNiceError(ContractError):
    """A list assignment fails the niceness condition.

    ``vertices`` holds the offending vertex indices.
    """

    def __init__(self, vertices):
        self.vertices = tuple(vertices)
        super().__init__(f"list assignment is not nice at vertices {list(self.vertices)[:20]}")


class CapExceededError(MadcolorError, RuntimeError):
    """A brute-force oracle refused an instance larger than its cap."""


class DivergenceError(MadcolorError, RuntimeError):
    """A LOCAL program did not halt within the round cap."""

    def __init__(self, cap, pending):
        self.cap = cap
        self.pending = tuple(pending)
        super().__init__(f"round cap {cap} exceeded; {len(self.pending)} vertices still running "
                         f"(first: {list(self.pending)[:10]})")


class ProgressStallError(MadcolorError, RuntimeError):
    """A peeling iteration found no happy vertex although vertices remain."""


class BoundViolationError(MadcolorError, AssertionError):
    """A proven per-iteration size bound failed on a run."""
