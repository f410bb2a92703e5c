"""Exception types.  ``code`` doubles as the CLI exit status where relevant."""

from __future__ import annotations


class DsgError(Exception):
    code = 1
    kind = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict:
        return {"error": self.kind, "message": self.message, **{k: _plain(v) for k, v in self.details.items()}}


def _plain(v):
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (int, str, bool)) or v is None:
        return v
    return str(v)


class PolynomialMismatch(DsgError, ValueError):
    kind = "ring_mismatch"


class ParseError(DsgError, ValueError):
    code = 2
    kind = "parse_error"

    def __init__(self, message: str, line: int = 1, column: int = 1, **details):
        super().__init__(f"{line}:{column}: {message}", line=line, column=column, **details)
        self.line = line
        self.column = column


class InvalidPresentation(DsgError, ValueError):
    code = 2
    kind = "invalid_presentation"


class UnitIdealError(DsgError, ValueError):
    """A defining polynomial is a unit, so the local ring is zero."""
    code = 2
    kind = "unit_in_defining_ideal"


class Inconclusive(DsgError):
    """Truncation schedule exhausted before a certificate was found."""
    code = 4
    kind = "inconclusive"


class NotIsolated(Inconclusive):
    code = 3
    kind = "not_certified_isolated"


class DimensionOverflow(DsgError):
    code = 2
    kind = "dimension_overflow"


class ComplexError(DsgError):
    kind = "complex_error"
