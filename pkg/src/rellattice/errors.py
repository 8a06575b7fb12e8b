"""Exception hierarchy shared by every rellattice module."""

from __future__ import annotations


class RelationError(Exception):
    """Base class for all relational-algebra errors."""


class InvalidAttributeName(RelationError, ValueError):
    pass


class HeaderMismatch(RelationError, ValueError):
    pass


class AttrNotInHeader(RelationError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class HeadersNotDisjoint(RelationError, ValueError):
    pass


class HeaderNotBinary(RelationError, ValueError):
    pass


class RenameCollision(RelationError, ValueError):
    pass


class SameAttribute(RelationError, ValueError):
    pass


class NotMaterializable(RelationError):
    """A join with a symbolic relation would produce infinitely many rows."""


class ParseError(RelationError):
    """Syntax error with a 1-based (line, column) position."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        if line:
            super().__init__(f"{message} at line {line}, column {column}")
        else:
            super().__init__(message)


class EvalError(RelationError):
    """Failure while evaluating a query; ``context`` is the printed sub-expression."""

    def __init__(self, message: str, context: str | None = None):
        self.message = message
        self.context = context
        if context is not None:
            super().__init__(f"{message} (in: {context})")
        else:
            super().__init__(message)


class UnboundName(EvalError):
    pass


class UnknownObject(RelationError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class UnknownAttribute(RelationError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class TooLarge(RelationError):
    pass
