"""Classical relational operators built from join, generalized union and
symbolic predicate relations only.

Each operator is written as the reduction itself: selection is a join with
predicate relations, projection is a union with an empty relation,
renaming is a join with an equality relation followed by projection, and
so on.  :func:`difference` is the exception; it is the plain set
difference, kept next to :func:`difference_literal` so the two can be
compared.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .errors import (
    AttrNotInHeader,
    HeaderMismatch,
    HeaderNotBinary,
    HeadersNotDisjoint,
    RenameCollision,
)
from .kernel import generalized_union, natural_join
from .predicates import SymbolicRelation, eq_rel, join_with_symbolic, neq_rel
from .relation import Relation, check_attribute, empty, fresh_name

TENSOR_ATTRS = ("xx", "xy", "yx", "yy")


@dataclass(frozen=True)
class RenameSpec:
    pairs: tuple[tuple[str, str], ...]

    @classmethod
    def of(cls, spec: "RenameSpec | Mapping[str, str] | Iterable[tuple[str, str]]") -> "RenameSpec":
        if isinstance(spec, RenameSpec):
            return spec
        items = spec.items() if isinstance(spec, Mapping) else spec
        return cls(tuple((old, new) for old, new in items))

    @property
    def olds(self) -> list[str]:
        return [o for o, _ in self.pairs]

    @property
    def news(self) -> list[str]:
        return [n for _, n in self.pairs]

    def validate(self, header: frozenset[str]) -> None:
        for name in self.olds + self.news:
            check_attribute(name)
        if len(set(self.olds)) != len(self.olds):
            raise RenameCollision(f"attribute renamed twice in {list(self.pairs)}")
        if len(set(self.news)) != len(self.news):
            raise RenameCollision(f"two attributes renamed to the same name in {list(self.pairs)}")
        missing = [o for o in self.olds if o not in header]
        if missing:
            raise AttrNotInHeader(f"cannot rename {missing}: not in header {sorted(header)}")
        clash = [n for n in self.news if n in header]
        if clash:
            raise RenameCollision(f"new names {clash} already in header {sorted(header)}")

    def inverse(self) -> "RenameSpec":
        return RenameSpec(tuple((n, o) for o, n in self.pairs))


def cartesian(a: Relation, b: Relation) -> Relation:
    shared = a.header & b.header
    if shared:
        raise HeadersNotDisjoint(f"cartesian product needs disjoint headers; shared {sorted(shared)}")
    return natural_join(a, b)


def projection(a: Relation, attrs: Iterable[str]) -> Relation:
    """Union with the empty relation over ``attrs``."""
    attrs = set(attrs)
    missing = sorted(attrs - a.header)
    if missing:
        raise AttrNotInHeader(f"attributes {missing} not in header {list(a.attrs)}")
    return generalized_union(a, empty(attrs))


def select(a: Relation, preds: Sequence[SymbolicRelation]) -> Relation:
    """Join with the predicate relations, then project back onto ``a``'s header.

    A predicate may mention attributes ``a`` lacks; the join then binds
    them (equality) or fails to materialize, and the projection drops them.
    """
    return projection(join_with_symbolic(a, preds), a.header)


def rename(a: Relation, spec) -> Relation:
    spec = RenameSpec.of(spec)
    spec.validate(a.header)
    joined = join_with_symbolic(a, [eq_rel(old, new) for old, new in spec.pairs])
    return projection(joined, (a.header - set(spec.olds)) | set(spec.news))


def _binary(rel: Relation, x: str | None, y: str | None, op: str) -> tuple[str, str]:
    if len(rel.header) != 2:
        raise HeaderNotBinary(f"{op} needs a binary relation, got header {list(rel.attrs)}")
    if x is None and y is None:
        x, y = rel.attrs
    if x is None or y is None or {x, y} != rel.header:
        raise HeaderNotBinary(f"{op}: attributes ({x}, {y}) do not match header {list(rel.attrs)}")
    return x, y


def compose(r: Relation, s: Relation, x: str, y: str) -> Relation:
    """Relational composition: pairs (x, y) with r(x, m) and s(m, y) for some m."""
    _binary(r, x, y, "compose")
    _binary(s, x, y, "compose")
    mid = fresh_name("s", {x, y})
    joined = natural_join(rename(r, {y: mid}), rename(s, {x: mid}))
    return projection(joined, {x, y})


def transitive_closure(a: Relation, x: str | None = None, y: str | None = None) -> Relation:
    """Union of all powers of ``a``, stopping once the accumulated union stops growing."""
    x, y = _binary(a, x, y, "transitive closure")
    acc = power = a
    while True:
        power = compose(power, a, x, y)
        grown = generalized_union(acc, power)
        if grown == acc:
            return acc
        acc = grown


def difference_literal(a: Relation, b: Relation, x: str | None = None, y: str | None = None) -> Relation:
    """Anti-join construction with NEQ on each column, evaluated as printed.

    Keeps the rows of ``a`` for which some row of ``b`` differs in the
    first column, plus those for which some row of ``b`` differs in the
    second.  This is not set difference: ``{(1,2)} - {(1,2),(3,4)}`` gives
    ``{(1,2)}`` and anything minus an empty relation is empty.
    """
    if a.header != b.header:
        raise HeaderMismatch(f"difference needs equal headers, got {list(a.attrs)} and {list(b.attrs)}")
    x, y = _binary(a, x, y, "difference")
    xp = fresh_name(x, a.header)
    yp = fresh_name(y, a.header | {xp})
    b_primed = rename(b, {x: xp, y: yp})
    a1 = projection(join_with_symbolic(natural_join(a, b_primed), [neq_rel(x, xp)]), {x, y})
    a2 = projection(join_with_symbolic(natural_join(a, b_primed), [neq_rel(y, yp)]), {x, y})
    return generalized_union(a1, a2)


def difference(a: Relation, b: Relation) -> Relation:
    if a.header != b.header:
        raise HeaderMismatch(f"difference needs equal headers, got {list(a.attrs)} and {list(b.attrs)}")
    return Relation(a.attrs, a.body - b.body)


def tensor_product(a: Relation, b: Relation, x: str | None = None, y: str | None = None) -> Relation:
    """Three-step EQ-chain construction over columns ``xx, xy, yx, yy``.

    ``a``'s rows become ``(x, x, y, y)`` and ``b``'s rows ``(x, y, x, y)``.
    """
    if a.header != b.header:
        raise HeaderMismatch(f"tensor product needs equal headers, got {list(a.attrs)} and {list(b.attrs)}")
    x, y = _binary(a, x, y, "tensor product")
    xx, xy, yx, yy = TENSOR_ATTRS
    if a.header & set(TENSOR_ATTRS):
        raise RenameCollision(f"input header {list(a.attrs)} overlaps output names {list(TENSOR_ATTRS)}")
    a1 = join_with_symbolic(a, [eq_rel(x, xx), eq_rel(x, xy), eq_rel(y, yx), eq_rel(y, yy)])
    b1 = join_with_symbolic(b, [eq_rel(x, xx), eq_rel(y, xy), eq_rel(x, yx), eq_rel(y, yy)])
    return projection(generalized_union(a1, b1), TENSOR_ATTRS)
