"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class CraError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(CraError):
    pass


class UnknownSymbol(CraError):
    pass


class PathExplosion(CraError):
    pass


class AlphabetMismatch(CraError):
    pass


class GrammarMismatch(CraError):
    pass


class NotCopyless(CraError):
    pass


class NotLinearForm(CraError):
    pass


class NotDecomposable(CraError):
    pass


class UnsupportedConstants(CraError):
    pass


class InvalidEdge(CraError):
    pass


class IncrementOutOfRange(CraError):
    pass


class ParseError(CraError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line else ""
        super().__init__(f"{where}{message}")
