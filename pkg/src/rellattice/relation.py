"""Relations over typed scalar values, with set semantics.

A relation is a header (a set of attribute names) and a body (a set of
tuples, each binding exactly the header's attributes).  Values are
integers, texts or booleans; values of different types never compare
equal, so ``1`` and ``True`` are distinct cells even though Python says
otherwise.

Internally every cell is stored as a ``(tag, payload)`` pair and every
tuple as a Python tuple aligned with the header sorted by name.  That
ordering is an implementation detail used for hashing and display only.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from typing import Any, Union

from .errors import AttrNotInHeader, HeaderMismatch, InvalidAttributeName

Value = Union[int, str, bool]
Cell = tuple  # (tag, payload)

_BOOL, _INT, _TEXT = 0, 1, 2
_TAG_NAMES = {_BOOL: "bool", _INT: "int", _TEXT: "text"}

# Reserved for fresh names generated by derived operators.
FRESH_MARK = "'"


def cell(value: Value) -> Cell:
    if isinstance(value, bool):
        return (_BOOL, value)
    if isinstance(value, int):
        return (_INT, value)
    if isinstance(value, str):
        return (_TEXT, value)
    raise TypeError(f"unsupported value {value!r} of type {type(value).__name__}")


def plain(c: Cell) -> Value:
    return c[1]


def value_type(value: Value) -> str:
    return _TAG_NAMES[cell(value)[0]]


def values_equal(a: Value, b: Value) -> bool:
    """Typed equality: ``values_equal(1, True)`` is False."""
    return cell(a) == cell(b)


def check_attribute(name: Any) -> str:
    if not isinstance(name, str) or not name:
        raise InvalidAttributeName(f"attribute name must be non-empty text, got {name!r}")
    if name != name.strip():
        raise InvalidAttributeName(f"attribute name {name!r} has surrounding whitespace")
    return name


def check_user_attribute(name: Any) -> str:
    """Validate a name coming from user input; the fresh-name mark is refused."""
    check_attribute(name)
    if FRESH_MARK in name:
        raise InvalidAttributeName(
            f"attribute name {name!r} contains the reserved character {FRESH_MARK!r}"
        )
    return name


def fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    name = base + FRESH_MARK
    while name in taken:
        name += FRESH_MARK
    return name


class Relation:
    """An immutable finite relation.

    Use :func:`make_relation` to build one from user data.  Two relations
    compare equal iff their headers and bodies are equal as sets.
    """

    __slots__ = ("header", "attrs", "_body", "_hash")

    def __init__(self, attrs: Iterable[str], body: Iterable[tuple] = ()):
        # Trusted constructor: ``body`` tuples must already be cell tuples
        # aligned with ``sorted(attrs)``.
        self.attrs: tuple[str, ...] = tuple(sorted(set(attrs)))
        self.header: frozenset[str] = frozenset(self.attrs)
        self._body: frozenset[tuple] = frozenset(body)
        self._hash: int | None = None

    @property
    def body(self) -> frozenset[tuple]:
        return self._body

    def __len__(self) -> int:
        return len(self._body)

    def __bool__(self) -> bool:
        # A relation is always a value; emptiness is asked explicitly.
        return True

    def is_empty(self) -> bool:
        return not self._body

    def __iter__(self) -> Iterator[dict[str, Value]]:
        return iter(self.rows())

    def rows(self) -> list[dict[str, Value]]:
        """Tuples as dicts, in canonical order."""
        return [
            {a: plain(c) for a, c in zip(self.attrs, t)} for t in sorted(self._body)
        ]

    def tuples(self, order: Sequence[str] | None = None) -> list[tuple[Value, ...]]:
        """Tuples as plain value tuples in the given column order (canonical row order)."""
        if order is None:
            return [tuple(plain(c) for c in t) for t in sorted(self._body)]
        idx = [self._index(a) for a in order]
        if sorted(order) != list(self.attrs):
            raise HeaderMismatch(f"column order {list(order)} does not cover {sorted(self.header)}")
        return sorted(tuple(plain(t[i]) for i in idx) for t in self._body)

    def _index(self, attr: str) -> int:
        try:
            return self.attrs.index(attr)
        except ValueError:
            raise AttrNotInHeader(f"attribute {attr!r} not in header {list(self.attrs)}") from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self.header == other.header and self._body == other._body

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.header, self._body))
        return self._hash

    def __repr__(self) -> str:
        if not self.attrs:
            return "DEE" if self._body else "DUM"
        shown = ", ".join(str(t) for t in self.tuples()[:4])
        more = ", ..." if len(self) > 4 else ""
        return f"Relation({list(self.attrs)}, [{shown}{more}])"


def make_relation(header: Iterable[str], rows: Iterable[Any] = ()) -> Relation:
    """Build a relation, removing duplicate rows.

    Rows may be mappings (keys must equal the header) or sequences matched
    positionally against ``header``.  Positional rows follow the iteration
    order of ``header`` when it is a list or tuple and sorted order when it
    is a set.
    """
    if isinstance(header, (set, frozenset)):
        order = sorted(header)
    else:
        order = list(header)
    for a in order:
        check_attribute(a)
    if len(set(order)) != len(order):
        raise HeaderMismatch(f"duplicate attribute in header {order}")
    attrs = tuple(sorted(order))
    hset = set(attrs)
    perm = [order.index(a) for a in attrs]
    body = set()
    for row in rows:
        if isinstance(row, Mapping):
            if set(row) != hset:
                raise HeaderMismatch(
                    f"row keys {sorted(row)} do not match header {list(attrs)}"
                )
            body.add(tuple(cell(row[a]) for a in attrs))
        else:
            row = tuple(row)
            if len(row) != len(order):
                raise HeaderMismatch(
                    f"row {row!r} has {len(row)} values for header {order}"
                )
            body.add(tuple(cell(row[i]) for i in perm))
    return Relation(attrs, body)


_DEE = Relation((), [()])
_DUM = Relation((), [])


def dee() -> Relation:
    """The relation with no attributes and exactly one (empty) row."""
    return _DEE


def dum() -> Relation:
    """The relation with no attributes and no rows."""
    return _DUM


def empty(header: Iterable[str]) -> Relation:
    header = list(header)
    for a in header:
        check_attribute(a)
    return Relation(header, ())


def kernel_project(rel: Relation, attrs: Iterable[str]) -> Relation:
    """Restrict every tuple to ``attrs``, merging duplicates.

    Projecting onto no attributes gives DEE for a non-empty relation and
    DUM for an empty one.
    """
    target = sorted(set(attrs))
    missing = [a for a in target if a not in rel.header]
    if missing:
        raise AttrNotInHeader(f"attributes {missing} not in header {list(rel.attrs)}")
    if len(target) == len(rel.attrs):
        return rel
    idx = [rel.attrs.index(a) for a in target]
    return Relation(target, {tuple(t[i] for i in idx) for t in rel.body})


def relation_equal(a: Relation, b: Relation) -> bool:
    return a.header == b.header and a.body == b.body


def sort_key(rel: Relation) -> tuple:
    """Deterministic total order on relations, for display and stable iteration."""
    return (len(rel.attrs), rel.attrs, len(rel), tuple(sorted(rel.body)))
