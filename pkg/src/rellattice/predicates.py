"""Intensional relations such as ``x = y``, ``x != y``, ``x < 1``.

These stand for possibly infinite relations over the integers (text and
booleans support only ``=`` and ``!=``).  They are never materialized;
:func:`join_with_symbolic` joins a finite relation with any number of
them, one tuple at a time, and fails with :class:`NotMaterializable`
when the result would be infinite.
"""

from __future__ import annotations

import enum
import operator
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Optional

from .errors import NotMaterializable, SameAttribute
from .relation import Relation, Value, cell, check_attribute, plain

RELOPS = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
    "=": operator.eq,
    "!=": operator.ne,
}
ORDERING = frozenset({"<", "<=", ">", ">="})
_ALIASES = {"==": "=", "<>": "!=", "≠": "!=", "≤": "<=", "≥": ">="}


def _norm_op(op: str) -> str:
    op = _ALIASES.get(op, op)
    if op not in RELOPS:
        raise ValueError(f"unknown comparison operator {op!r}")
    return op


def compare(left: Value, op: str, right: Value) -> bool:
    """Typed comparison; ordering operators hold only between two integers."""
    lc, rc = cell(left), cell(right)
    if op == "=":
        return lc == rc
    if op == "!=":
        return lc != rc
    if lc[0] != rc[0] or isinstance(left, (bool, str)):
        return False
    return RELOPS[op](left, right)


@dataclass(frozen=True)
class SymbolicRelation:
    """``left op right`` where ``right`` is an attribute, or ``left op const``.

    Exactly one of ``right`` / ``const`` is set.
    """

    left: str
    op: str
    right: Optional[str] = None
    const: Optional[Value] = None
    has_const: bool = field(default=False, repr=False)

    @property
    def header(self) -> frozenset[str]:
        if self.right is None:
            return frozenset({self.left})
        return frozenset({self.left, self.right})

    @property
    def kind(self) -> str:
        if self.has_const:
            return "CONST_CMP"
        return {"=": "EQ", "!=": "NEQ"}.get(self.op, "CMP")

    def __str__(self) -> str:
        rhs = self.right if not self.has_const else format_literal(self.const)
        return f"{self.left} {self.op} {rhs}"


def format_literal(v: Value) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    return str(v)


def eq_rel(a: str, b: str) -> SymbolicRelation:
    return cmp_rel(a, "=", b)


def neq_rel(a: str, b: str) -> SymbolicRelation:
    return cmp_rel(a, "!=", b)


def cmp_rel(a: str, op: str, b: str) -> SymbolicRelation:
    check_attribute(a)
    check_attribute(b)
    if a == b:
        raise SameAttribute(f"comparison needs two distinct attributes, got {a!r} twice")
    return SymbolicRelation(a, _norm_op(op), right=b)


def const_cmp_rel(a: str, op: str, value: Value) -> SymbolicRelation:
    check_attribute(a)
    cell(value)  # type check
    return SymbolicRelation(a, _norm_op(op), const=value, has_const=True)


class Status(enum.Enum):
    EXTEND = "extend"
    PASS = "pass"
    FAIL = "fail"
    INFINITE = "infinite"


@dataclass(frozen=True)
class RestrictResult:
    status: Status
    extensions: tuple[dict, ...] = ()


PASS = RestrictResult(Status.PASS)
FAIL = RestrictResult(Status.FAIL)
INFINITE = RestrictResult(Status.INFINITE)


def restrict(sym: SymbolicRelation, probe: Mapping[str, Value]) -> RestrictResult:
    """What ``sym`` says about a partial binding.

    Extend carries the (finite) set of bindings for ``sym``'s attributes
    missing from ``probe``.  Attributes of ``probe`` outside ``sym`` are
    ignored.
    """
    if sym.has_const:
        if sym.left in probe:
            return PASS if compare(probe[sym.left], sym.op, sym.const) else FAIL
        if sym.op == "=":
            return RestrictResult(Status.EXTEND, ({sym.left: sym.const},))
        return INFINITE
    lb, rb = sym.left in probe, sym.right in probe
    if lb and rb:
        return PASS if compare(probe[sym.left], sym.op, probe[sym.right]) else FAIL
    if not lb and not rb:
        return INFINITE
    bound, free = (sym.left, sym.right) if lb else (sym.right, sym.left)
    v = probe[bound]
    if sym.op == "=":
        return RestrictResult(Status.EXTEND, ({free: v},))
    if sym.op in ORDERING and isinstance(v, (bool, str)):
        # ordering relations contain integer pairs only
        return FAIL
    return INFINITE


def join_with_symbolic(a: Relation, syms: Sequence[SymbolicRelation]) -> Relation:
    """Natural join of ``a`` with every symbolic relation in ``syms``.

    Each tuple of ``a`` is extended to a fixpoint: a Fail drops it, a Pass
    discharges the predicate and an Extend grows the binding.  Predicates
    still Infinite at the fixpoint make the result infinite.
    """
    syms = list(syms)
    out_header = set(a.header)
    for s in syms:
        out_header |= s.header
    out_attrs = tuple(sorted(out_header))
    body = set()
    for t in a.body:
        start = {attr: plain(c) for attr, c in zip(a.attrs, t)}
        stack = [(start, syms)]
        while stack:
            binding, pending = stack.pop()
            dropped = False
            while pending:
                progressed = False
                rest = []
                branches = None
                for i, s in enumerate(pending):
                    r = restrict(s, binding)
                    if r.status is Status.FAIL:
                        dropped = True
                        break
                    if r.status is Status.PASS:
                        progressed = True
                    elif r.status is Status.EXTEND:
                        # re-check s after binding: it must pass
                        branches = (r.extensions, pending[:i] + pending[i + 1:] + [s])
                        break
                    else:
                        rest.append(s)
                if dropped:
                    break
                if branches is not None:
                    extensions, remaining = branches
                    for ext in extensions[1:]:
                        stack.append(({**binding, **ext}, remaining))
                    binding = {**binding, **extensions[0]}
                    pending = remaining
                    continue
                pending = rest
                if not progressed and pending:
                    break
            if dropped:
                continue
            if pending:
                raise NotMaterializable(
                    "join with " + ", ".join(str(s) for s in pending)
                    + f" is infinite for tuple {binding}"
                )
            body.add(tuple(cell(binding[x]) for x in out_attrs))
    return Relation(out_attrs, body)

