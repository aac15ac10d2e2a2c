"""Exception hierarchy shared by every module."""

from __future__ import annotations


class ImbalanceError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGroupError(ImbalanceError, ValueError):
    pass


class CapacityError(ImbalanceError):
    """The requested computation exceeds a documented size cap."""


class DomainError(ImbalanceError, ValueError):
    """An element index or parameter lies outside its valid range."""


class InvalidModulusError(ImbalanceError, ValueError):
    pass


class InvalidTransformError(ImbalanceError, ValueError):
    pass


class NotAFunctionError(ImbalanceError):
    """A transformed graph does not describe a function of the first coordinate."""


class InapplicableError(ImbalanceError):
    """The input does not satisfy the hypotheses of the requested relation."""


class IdentityViolation(ImbalanceError):
    """An exact identity that must always hold was violated (an implementation bug)."""


class ParseError(ImbalanceError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SchemaError(ImbalanceError, ValueError):
    pass
