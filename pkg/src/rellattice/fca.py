"""Formal contexts, their concept lattices, and concepts read as relations.

A concept becomes a relation with a ``Name`` column holding its extent
and one all-``true`` column ``is<Attribute>`` per intent attribute.
Natural join of two such relations then keeps exactly the objects common
to both extents, which is the extent of the meet of the two concepts.
The header of the join is the union of the intents, while the meet's
intent may be larger; :func:`check_bridge` only claims agreement on
extents and reports how often the headers differ.
"""

from __future__ import annotations

import csv
import io
from collections.abc import Iterable
from dataclasses import dataclass, field
from itertools import combinations

from .derived import projection
from .errors import ParseError, TooLarge, UnknownAttribute, UnknownObject
from .kernel import LawReport, Witness, natural_join
from .relation import Relation, make_relation

NAME_COLUMN = "Name"
MAX_ATTRIBUTES = 20


@dataclass(frozen=True)
class FormalContext:
    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    incidence: frozenset[tuple[str, str]]
    _rows: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _cols: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        objs, attrs = set(self.objects), set(self.attributes)
        if len(objs) != len(self.objects):
            raise ValueError("duplicate object name")
        if len(attrs) != len(self.attributes):
            raise ValueError("duplicate attribute name")
        for g, m in self.incidence:
            if g not in objs:
                raise UnknownObject(f"incidence references unknown object {g!r}")
            if m not in attrs:
                raise UnknownAttribute(f"incidence references unknown attribute {m!r}")
        for g in self.objects:
            self._rows[g] = frozenset(m for h, m in self.incidence if h == g)
        for m in self.attributes:
            self._cols[m] = frozenset(g for g, n in self.incidence if n == m)

    def attributes_of(self, obj: str) -> frozenset[str]:
        try:
            return self._rows[obj]
        except KeyError:
            raise UnknownObject(f"unknown object {obj!r}") from None

    def objects_with(self, attr: str) -> frozenset[str]:
        try:
            return self._cols[attr]
        except KeyError:
            raise UnknownAttribute(f"unknown attribute {attr!r}") from None


def parse_context(text: str) -> FormalContext:
    """Read a cross table: a header row of attributes (first cell empty),
    then one row per object whose cells are ``x`` or empty.
    Comma separated; tab separated is accepted when the header has no comma.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty context: a header row is required", 1, 1)
    delimiter = "\t" if "\t" in lines[0] and "," not in lines[0] else ","
    rows = list(csv.reader(io.StringIO("\n".join(lines)), delimiter=delimiter))
    header = [c.strip() for c in rows[0]]
    if header and header[0] == "":
        header = header[1:]
    attributes = tuple(header)
    if any(not a for a in attributes):
        raise ParseError("empty attribute name in header", 1, 1)
    objects, incidence = [], set()
    for lineno, row in enumerate(rows[1:], start=2):
        cells = [c.strip() for c in row]
        # a row may omit trailing empty cells but may not have extra ones
        if len(cells) > len(attributes) + 1 or not cells or not cells[0]:
            raise ParseError(
                f"row has {len(cells)} cells for {len(attributes)} attributes", lineno, 1
            )
        obj = cells[0]
        for col, value in enumerate(cells[1:]):
            if value.lower() == "x":
                incidence.add((obj, attributes[col]))
            elif value:
                raise ParseError(f"cell {value!r} is neither 'x' nor empty", lineno, col + 2)
        objects.append(obj)
    try:
        return FormalContext(tuple(objects), attributes, frozenset(incidence))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def context_to_csv(ctx: FormalContext) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + list(ctx.attributes))
    for g in ctx.objects:
        w.writerow([g] + ["x" if (g, m) in ctx.incidence else "" for m in ctx.attributes])
    return buf.getvalue()


def derive_intent(ctx: FormalContext, objects: Iterable[str]) -> frozenset[str]:
    """Attributes shared by all ``objects``; every attribute for the empty set."""
    result = frozenset(ctx.attributes)
    for g in objects:
        result &= ctx.attributes_of(g)
    return result


def derive_extent(ctx: FormalContext, attributes: Iterable[str]) -> frozenset[str]:
    """Objects having all ``attributes``; every object for the empty set."""
    result = frozenset(ctx.objects)
    for m in attributes:
        result &= ctx.objects_with(m)
    return result


@dataclass(frozen=True)
class Concept:
    extent: frozenset[str]
    intent: frozenset[str]


@dataclass(frozen=True)
class ConceptLattice:
    """Concepts ordered by extent inclusion.

    ``concepts`` is sorted with the largest extent first, so index 0 is the
    top concept and the last index the bottom one.  ``hasse_edges`` holds
    ``(lower, upper)`` index pairs of covering concepts.
    """

    context: FormalContext
    concepts: tuple[Concept, ...]
    hasse_edges: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.concepts)

    def leq(self, i: int, j: int) -> bool:
        return self.concepts[i].extent <= self.concepts[j].extent

    def index(self, c: Concept) -> int:
        return self.concepts.index(c)

    def meet(self, i: int, j: int) -> int:
        extent = self.concepts[i].extent & self.concepts[j].extent
        return self._by_extent(extent)

    def join(self, i: int, j: int) -> int:
        intent = self.concepts[i].intent & self.concepts[j].intent
        return self._by_extent(derive_extent(self.context, intent))

    def _by_extent(self, extent: frozenset[str]) -> int:
        for k, c in enumerate(self.concepts):
            if c.extent == extent:
                return k
        raise KeyError(f"no concept with extent {sorted(extent)}")

    @property
    def top(self) -> int:
        return 0

    @property
    def bottom(self) -> int:
        return len(self.concepts) - 1


def _concept_key(ctx: FormalContext, c: Concept) -> tuple:
    opos = {g: i for i, g in enumerate(ctx.objects)}
    apos = {m: i for i, m in enumerate(ctx.attributes)}
    return (
        -len(c.extent),
        sorted(opos[g] for g in c.extent),
        sorted(apos[m] for m in c.intent),
    )


def enumerate_concepts(ctx: FormalContext, max_attributes: int = MAX_ATTRIBUTES) -> ConceptLattice:
    """Close every attribute subset; exponential, so the attribute count is capped."""
    n = len(ctx.attributes)
    if n > max_attributes:
        raise TooLarge(f"{n} attributes exceed the enumeration limit of {max_attributes}")
    found: dict[frozenset, Concept] = {}
    for k in range(n + 1):
        for subset in combinations(ctx.attributes, k):
            extent = derive_extent(ctx, subset)
            if extent not in found:
                found[extent] = Concept(extent, derive_intent(ctx, extent))
    concepts = tuple(sorted(found.values(), key=lambda c: _concept_key(ctx, c)))
    return ConceptLattice(ctx, concepts, _covers(concepts))


def _covers(concepts: tuple[Concept, ...]) -> tuple[tuple[int, int], ...]:
    edges = []
    n = len(concepts)
    for lo in range(n):
        uppers = [
            hi for hi in range(n)
            if hi != lo and concepts[lo].extent < concepts[hi].extent
        ]
        for hi in uppers:
            if not any(
                concepts[mid].extent < concepts[hi].extent
                for mid in uppers if mid != hi
            ):
                edges.append((lo, hi))
    return tuple(sorted(edges))


def attribute_column(attr: str) -> str:
    return "is" + attr[:1].upper() + attr[1:]


def concept_to_relation(ctx: FormalContext, c: Concept) -> Relation:
    columns = {attribute_column(m): m for m in c.intent}
    header = [NAME_COLUMN] + sorted(columns)
    rows = [(g,) + (True,) * len(columns) for g in c.extent]
    return make_relation(header, rows)


def _names(rel: Relation) -> frozenset:
    return frozenset(r[NAME_COLUMN] for r in projection(rel, {NAME_COLUMN}).rows())


def check_bridge(ctx: FormalContext, lattice: ConceptLattice | None = None) -> LawReport:
    """Extent-level agreement of natural join with the concept meet, over all pairs."""
    lattice = lattice or enumerate_concepts(ctx)
    rels = [concept_to_relation(ctx, c) for c in lattice.concepts]
    n = len(lattice)
    cases = 0
    header_differs = 0
    for i in range(n):
        for j in range(i, n):
            cases += 1
            joined = natural_join(rels[i], rels[j])
            meet = lattice.meet(i, j)
            names = _names(joined)
            expected = lattice.concepts[i].extent & lattice.concepts[j].extent
            if names != expected or names != lattice.concepts[meet].extent:
                return LawReport(
                    "fca-bridge", cases, False,
                    Witness((rels[i], rels[j]), projection(joined, {NAME_COLUMN}),
                            projection(rels[meet], {NAME_COLUMN})),
                )
            if joined.header != rels[meet].header:
                header_differs += 1
    note = (
        f"extents agree on all {cases} pairs; headers differ from the meet's "
        f"relation on {header_differs} pairs"
    )
    return LawReport("fca-bridge", cases, True, note=note)


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def reduced_labels(lattice: ConceptLattice) -> list[tuple[list[str], list[str]]]:
    """Per concept: attributes it introduces and objects it introduces."""
    ctx = lattice.context
    labels: list[tuple[list[str], list[str]]] = [([], []) for _ in lattice.concepts]
    for m in ctx.attributes:
        extent = derive_extent(ctx, [m])
        labels[lattice._by_extent(extent)][0].append(m)
    for g in ctx.objects:
        extent = derive_extent(ctx, ctx.attributes_of(g))
        labels[lattice._by_extent(extent)][1].append(g)
    return labels


def emit_dot(lattice: ConceptLattice) -> str:
    """Hasse diagram in DOT, bottom to top, with reduced labelling."""
    lines = [
        "digraph concept_lattice {",
        "  rankdir=BT;",
        "  node [shape=box, fontsize=10];",
    ]
    for k, (attrs, objs) in enumerate(reduced_labels(lattice)):
        label = "\\n".join(
            _dot_escape(part) for part in (", ".join(attrs), ", ".join(objs)) if part
        )
        lines.append(f'  c{k} [label="{label}"];')
    for lo, hi in lattice.hasse_edges:
        lines.append(f"  c{lo} -> c{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
