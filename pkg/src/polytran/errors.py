"""Exception hierarchy shared by every polytran module."""


class PolytranError(Exception):
    """Base class for all library errors."""


class InvalidSpec(PolytranError, ValueError):
    pass


class DimensionMismatch(PolytranError, ValueError):
    pass


class NotAMember(PolytranError, ValueError):
    pass


class NoFractionalCell(PolytranError, ValueError):
    pass


class StructureMatrixMismatch(PolytranError, ValueError):
    pass


class EpsOutOfRange(PolytranError, ValueError):
    pass


class NoSecondMutableLine(PolytranError, AssertionError):
    """Raised when the total-sum argument for a second mutable line fails.

    For a valid member of a k-constrained polytope this cannot happen, so it
    signals that sigma(A) != k or an internal inconsistency.
    """


class Infeasible(PolytranError):
    pass


class InstanceTooLarge(PolytranError, ValueError):
    pass


class ParseError(PolytranError, ValueError):
    """Malformed input file; carries the source name, line and offending token."""

    def __init__(self, message, source=None, line=None, token=None):
        self.source = source
        self.line = line
        self.token = token
        where = []
        if source is not None:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        prefix = ":".join(where)
        detail = f" (token {token!r})" if token is not None else ""
        super().__init__(f"{prefix}: {message}{detail}" if prefix else f"{message}{detail}")
