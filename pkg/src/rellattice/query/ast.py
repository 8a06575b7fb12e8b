"""Expression tree of the query language."""

from __future__ import annotations

from dataclasses import dataclass
import typing

from ..predicates import SymbolicRelation
from ..relation import Value


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Literal:
    attrs: tuple[str, ...]
    rows: tuple[tuple[Value, ...], ...]


@dataclass(frozen=True)
class Join:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Union:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Project:
    expr: "Expr"
    attrs: tuple[str, ...]


@dataclass(frozen=True)
class Select:
    expr: "Expr"
    preds: tuple[SymbolicRelation, ...]


@dataclass(frozen=True)
class Rename:
    expr: "Expr"
    pairs: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class Minus:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class MinusLiteral:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Tc:
    expr: "Expr"
    x: str
    y: str


@dataclass(frozen=True)
class Tensor:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Dee:
    pass


@dataclass(frozen=True)
class Dum:
    pass


@dataclass(frozen=True)
class Empty:
    attrs: tuple[str, ...]


Expr = typing.Union[
    Name, Literal, Join, Union, Project, Select, Rename, Minus, MinusLiteral,
    Tc, Tensor, Dee, Dum, Empty,
]

KEYWORDS = frozenset({
    "project", "select", "rename", "minus", "minus_literal", "tc", "tensor",
    "dee", "dum", "empty", "rel",
})
