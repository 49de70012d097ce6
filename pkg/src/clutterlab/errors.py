"""Exception types shared across the package."""


class ClutterLabError(Exception):
    """Base class for all package errors."""


class WidthMismatch(ClutterLabError, ValueError):
    pass


class CapExceeded(ClutterLabError):
    """A configured size cap would be exceeded; nothing is truncated silently."""


class AntichainViolation(ClutterLabError, ValueError):
    def __init__(self, smaller, larger):
        self.pair = (smaller, larger)
        super().__init__(f"member {sorted(smaller)} is contained in member {sorted(larger)}")


class PreconditionError(ClutterLabError, ValueError):
    """An operation was called outside its documented domain."""


class LpInfeasible(ClutterLabError):
    pass


class LpUnbounded(ClutterLabError):
    pass


class NotASum(PreconditionError):
    """Overlap of two matroids matches no 1-, 2- or Y-sum."""


class BridgeError(PreconditionError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"graph has a bridge: edge {edge}")


class ParseError(ClutterLabError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
