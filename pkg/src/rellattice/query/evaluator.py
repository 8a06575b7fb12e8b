"""Evaluation of query expressions over an environment of named relations."""

from __future__ import annotations

from collections.abc import Mapping

from .. import derived
from ..errors import EvalError, InvalidAttributeName, RelationError, UnboundName
from ..kernel import generalized_union, natural_join
from ..relation import Relation, dee, dum, empty, make_relation
from ..serialize import format_value
from . import ast
from .ast import KEYWORDS
from .parser import parse, to_text

Env = Mapping[str, Relation]


def check_env_name(name: str) -> str:
    if not name or not name[0].isascii() or not name[0].isalpha() or not all(
        ch.isascii() and (ch.isalnum() or ch == "_") for ch in name
    ):
        raise InvalidAttributeName(f"{name!r} is not a valid relation name")
    if name in KEYWORDS:
        raise InvalidAttributeName(f"{name!r} is a reserved word")
    return name


def evaluate(e: ast.Expr, env: Env) -> Relation:
    """Evaluate ``e``.  Errors carry the text of the innermost failing sub-expression."""
    try:
        return _eval(e, env)
    except EvalError:
        raise
    except (RelationError, TypeError) as exc:
        raise EvalError(str(exc), to_text(e)) from exc


def _eval(e: ast.Expr, env: Env) -> Relation:
    if isinstance(e, ast.Name):
        try:
            return env[e.name]
        except KeyError:
            raise UnboundName(f"unbound relation name {e.name!r}", e.name) from None
    if isinstance(e, ast.Join):
        return natural_join(evaluate(e.left, env), evaluate(e.right, env))
    if isinstance(e, ast.Union):
        return generalized_union(evaluate(e.left, env), evaluate(e.right, env))
    if isinstance(e, ast.Dee):
        return dee()
    if isinstance(e, ast.Dum):
        return dum()
    if isinstance(e, ast.Empty):
        return empty(e.attrs)
    if isinstance(e, ast.Literal):
        return make_relation(list(e.attrs), e.rows)
    if isinstance(e, ast.Project):
        return derived.projection(evaluate(e.expr, env), e.attrs)
    if isinstance(e, ast.Select):
        return derived.select(evaluate(e.expr, env), e.preds)
    if isinstance(e, ast.Rename):
        return derived.rename(evaluate(e.expr, env), e.pairs)
    if isinstance(e, ast.Tc):
        return derived.transitive_closure(evaluate(e.expr, env), e.x, e.y)
    if isinstance(e, ast.Minus):
        return derived.difference(evaluate(e.left, env), evaluate(e.right, env))
    if isinstance(e, ast.MinusLiteral):
        return derived.difference_literal(evaluate(e.left, env), evaluate(e.right, env))
    if isinstance(e, ast.Tensor):
        return derived.tensor_product(evaluate(e.left, env), evaluate(e.right, env))
    raise TypeError(f"not an expression node: {e!r}")


def run(text: str, env: Env) -> Relation:
    return evaluate(parse(text), env)


def _display(value) -> str:
    s = format_value(value)
    if any(ch in s for ch in "|\n\r") and not s.startswith('"'):
        s = '"' + s.replace('"', '""') + '"'
    return s


def format_relation(r: Relation) -> str:
    """Deterministic text table: columns by name, rows in canonical order."""
    if not r.attrs:
        return "DEE (no columns, 1 row)\n" if len(r) else "DUM (no columns, 0 rows)\n"
    cells = [[_display(v) for v in t] for t in r.tuples()]
    widths = [
        max([len(a)] + [len(row[i]) for row in cells]) for i, a in enumerate(r.attrs)
    ]
    lines = [
        " | ".join(a.ljust(w) for a, w in zip(r.attrs, widths)).rstrip(),
        "-+-".join("-" * w for w in widths),
    ]
    lines += [" | ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    n = len(r)
    lines.append(f"({n} row{'s' if n != 1 else ''})")
    return "\n".join(lines) + "\n"
