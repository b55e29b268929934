"""Exception types raised across the package."""


class DomQuboError(Exception):
    """Base class for all package errors."""


class ParseError(DomQuboError, ValueError):
    """Malformed graph or model input. Carries the offending line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InfeasibleModelError(DomQuboError, ValueError):
    """A constraint can never be satisfied on this graph (e.g. an isolated vertex under total domination)."""

    def __init__(self, message, vertex=None):
        self.vertex = vertex
        super().__init__(message)


class SizeLimitError(DomQuboError, ValueError):
    """Problem too large for an enumeration-based routine."""
