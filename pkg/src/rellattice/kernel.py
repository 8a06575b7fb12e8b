"""Natural join and generalized union, and the lattice they generate.

Lattice join is natural join and lattice meet is generalized union, so
``a <= b`` iff ``a & b == b`` iff ``a | b == a``.  DEE is the least
element.  No top element is provided: the join of all relations is only
defined relative to a fixed attribute universe.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import Optional

from .relation import Relation, kernel_project, make_relation, relation_equal, sort_key


def natural_join(a: Relation, b: Relation) -> Relation:
    if not isinstance(a, Relation) or not isinstance(b, Relation):
        raise TypeError("natural_join expects finite Relations; use join_with_symbolic")
    common = sorted(a.header & b.header)
    out_attrs = tuple(sorted(a.header | b.header))
    a_key = [a.attrs.index(c) for c in common]
    b_key = [b.attrs.index(c) for c in common]
    # every output column comes from a when present there, else from b
    pick = [
        (0, a.attrs.index(x)) if x in a.header else (1, b.attrs.index(x))
        for x in out_attrs
    ]
    if len(a) > len(b):
        build, build_key, probe, probe_key, build_side = b, b_key, a, a_key, 1
    else:
        build, build_key, probe, probe_key, build_side = a, a_key, b, b_key, 0
    index: dict[tuple, list[tuple]] = {}
    for t in build.body:
        index.setdefault(tuple(t[i] for i in build_key), []).append(t)
    body = set()
    for s in probe.body:
        for t in index.get(tuple(s[i] for i in probe_key), ()):
            pair = (t, s) if build_side == 0 else (s, t)
            body.add(tuple(pair[side][i] for side, i in pick))
    return Relation(out_attrs, body)


def generalized_union(a: Relation, b: Relation) -> Relation:
    """Project both operands onto their common attributes and take the set union."""
    if not isinstance(a, Relation) or not isinstance(b, Relation):
        raise TypeError("generalized_union is defined for finite Relations only")
    common = a.header & b.header
    pa = kernel_project(a, common)
    pb = kernel_project(b, common)
    return Relation(pa.attrs, pa.body | pb.body)


def leq_by_join(a: Relation, b: Relation) -> bool:
    return relation_equal(b, natural_join(a, b))


def leq_by_union(a: Relation, b: Relation) -> bool:
    return relation_equal(a, generalized_union(a, b))


leq = leq_by_join


# -- law checking -----------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    operands: tuple[Relation, ...]
    lhs: Relation
    rhs: Relation


@dataclass(frozen=True)
class LawReport:
    law: str
    cases: int
    holds: bool
    witness: Optional[Witness] = None
    note: str = ""

    def reproduce(self) -> bool:
        """Re-evaluate the witness; True iff the two sides still differ."""
        if self.witness is None:
            return False
        if self.law not in LAWS:
            return not relation_equal(self.witness.lhs, self.witness.rhs)
        _, lhs, rhs = LAWS[self.law]
        ops = self.witness.operands
        return not relation_equal(lhs(*ops), rhs(*ops))


J, U = natural_join, generalized_union

# name -> (arity, lhs, rhs)
LAWS: dict[str, tuple[int, Callable[..., Relation], Callable[..., Relation]]] = {
    "join-idempotent": (1, lambda a: J(a, a), lambda a: a),
    "union-idempotent": (1, lambda a: U(a, a), lambda a: a),
    "join-commutative": (2, lambda a, b: J(a, b), lambda a, b: J(b, a)),
    "union-commutative": (2, lambda a, b: U(a, b), lambda a, b: U(b, a)),
    "join-associative": (3, lambda a, b, c: J(a, J(b, c)), lambda a, b, c: J(J(a, b), c)),
    "union-associative": (3, lambda a, b, c: U(a, U(b, c)), lambda a, b, c: U(U(a, b), c)),
    "join-absorbs-union": (2, lambda a, b: J(a, U(a, b)), lambda a, b: a),
    "union-absorbs-join": (2, lambda a, b: U(a, J(a, b)), lambda a, b: a),
    "join-over-union": (
        3, lambda a, b, c: J(a, U(b, c)), lambda a, b, c: U(J(a, b), J(a, c))),
    "union-over-join": (
        3, lambda a, b, c: U(a, J(b, c)), lambda a, b, c: J(U(a, b), U(a, c))),
    "modular": (
        3, lambda a, b, c: J(a, U(b, c)), lambda a, b, c: U(J(a, b), c)),
}

LATTICE_LAWS = (
    "join-idempotent", "union-idempotent",
    "join-commutative", "union-commutative",
    "join-associative", "union-associative",
    "join-absorbs-union", "union-absorbs-join",
)

ATTRIBUTE_POOL = ("w", "x", "y", "z")


def random_relation(
    rng: random.Random,
    pool: Sequence[str] = ATTRIBUTE_POOL,
    max_rows: int = 6,
    max_value: int = 4,
) -> Relation:
    """Small random relation: header drawn from ``pool``, 0..max_rows rows, values 0..max_value."""
    header = [a for a in pool if rng.random() < 0.5]
    nrows = rng.randint(0, max_rows)
    rows = [tuple(rng.randint(0, max_value) for _ in header) for _ in range(nrows)]
    return make_relation(header, rows)


def relation_sampler(seed: int = 0, **kwargs) -> Callable[[], Relation]:
    rng = random.Random(seed)
    return lambda: random_relation(rng, **kwargs)


def evaluate_law(name: str, *operands: Relation) -> Optional[Witness]:
    arity, lhs, rhs = LAWS[name]
    ops = operands[:arity]
    left, right = lhs(*ops), rhs(*ops)
    if relation_equal(left, right):
        return None
    return Witness(ops, left, right)


def check_laws(
    sampler: Callable[[], Relation] | None = None, cases: int = 1000
) -> list[LawReport]:
    """Check the eight lattice identities on ``cases`` sampled triples."""
    if cases < 1:
        raise ValueError("cases must be >= 1")
    if sampler is None:
        sampler = relation_sampler(0)
    witnesses: dict[str, Optional[Witness]] = dict.fromkeys(LATTICE_LAWS)
    for _ in range(cases):
        triple = (sampler(), sampler(), sampler())
        for name in LATTICE_LAWS:
            if witnesses[name] is None:
                witnesses[name] = evaluate_law(name, *triple)
    return [
        LawReport(name, cases, witnesses[name] is None, witnesses[name])
        for name in LATTICE_LAWS
    ]


def check_distributivity(a: Relation, b: Relation, c: Relation) -> tuple[LawReport, LawReport]:
    """Both distributive laws on one triple; the witness always carries both sides."""
    reports = []
    for name in ("join-over-union", "union-over-join"):
        _, lhs, rhs = LAWS[name]
        left, right = lhs(a, b, c), rhs(a, b, c)
        reports.append(
            LawReport(name, 1, relation_equal(left, right), Witness((a, b, c), left, right))
        )
    return reports[0], reports[1]


def check_modularity(a: Relation, b: Relation, c: Relation) -> LawReport:
    """Modular law: a <= c implies a & (b | c) == (a & b) | c."""
    if not leq_by_union(a, c):
        return LawReport("modular", 1, True, note="premise a <= c is false")
    w = evaluate_law("modular", a, b, c)
    return LawReport("modular", 1, w is None, w)


# -- finite sublattices -----------------------------------------------------


@dataclass(frozen=True)
class LatticeClosure:
    elements: tuple[Relation, ...]
    generators: tuple[Relation, ...]
    truncated: bool
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._index.update({r: i for i, r in enumerate(self.elements)})

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, rel: Relation) -> bool:
        return rel in self._index

    def index(self, rel: Relation) -> int:
        return self._index[rel]

    def tables(self) -> tuple[list[list[int]], list[list[int]]]:
        """Join and meet tables as index matrices (requires a closed set)."""
        if self.truncated:
            raise ValueError("closure was truncated; operation tables are partial")
        els = self.elements
        n = len(els)
        jt = [[0] * n for _ in range(n)]
        mt = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                jt[i][j] = jt[j][i] = self._index[natural_join(els[i], els[j])]
                mt[i][j] = mt[j][i] = self._index[generalized_union(els[i], els[j])]
        return jt, mt


def lattice_closure(generators: Iterable[Relation], cap: int = 512) -> LatticeClosure:
    """Close ``generators`` under both operators, stopping once more than ``cap`` elements exist."""
    gens = tuple(sorted(set(generators), key=sort_key))
    if cap < len(gens):
        raise ValueError("cap must be at least the number of generators")
    elements: list[Relation] = list(gens)
    seen = set(elements)
    done = 0  # elements[:done] have been paired with each other
    truncated = False
    while done < len(elements) and not truncated:
        end = len(elements)
        for i in range(done, end):
            for j in range(i + 1):
                for r in (natural_join(elements[i], elements[j]),
                          generalized_union(elements[i], elements[j])):
                    if r not in seen:
                        seen.add(r)
                        elements.append(r)
                        if len(elements) > cap:
                            truncated = True
                            break
                if truncated:
                    break
            if truncated:
                break
            done = i + 1
        else:
            done = end
    return LatticeClosure(tuple(elements), gens, truncated)


def _order_matrix(jt: list[list[int]]) -> list[list[bool]]:
    n = len(jt)
    return [[jt[i][j] == j for j in range(n)] for i in range(n)]


def find_n5(closure: LatticeClosure) -> Optional[tuple[Relation, ...]]:
    """Search for a pentagon sublattice; returns ``(bot, top, x, a, b)`` with ``a < b``.

    ``x`` is incomparable with ``a`` and ``b``, ``x & a == x & b == top`` and
    ``x | a == x | b == bot``.
    """
    if closure.truncated:
        raise ValueError("find_n5 needs a closed (untruncated) lattice")
    n = len(closure)
    if n < 5:
        return None
    jt, mt = closure.tables()
    le = _order_matrix(jt)
    els = closure.elements
    for x in range(n):
        incomparable = [i for i in range(n) if not le[x][i] and not le[i][x]]
        for a in incomparable:
            for b in incomparable:
                if a == b or not le[a][b]:
                    continue
                if jt[x][a] == jt[x][b] and mt[x][a] == mt[x][b]:
                    return (els[mt[x][a]], els[jt[x][a]], els[x], els[a], els[b])
    return None


def find_modularity_violation(closure: LatticeClosure) -> Optional[LawReport]:
    """Exhaustive search of all triples ``a <= c`` for a modular-law failure."""
    if closure.truncated:
        raise ValueError("needs a closed (untruncated) lattice")
    jt, mt = closure.tables()
    le = _order_matrix(jt)
    n = len(closure)
    for a in range(n):
        for c in range(n):
            if a == c or not le[a][c]:
                continue
            for b in range(n):
                if jt[a][mt[b][c]] != mt[jt[a][b]][c]:
                    return check_modularity(
                        closure.elements[a], closure.elements[b], closure.elements[c]
                    )
    return None


def hasse_edges(closure: LatticeClosure) -> list[tuple[int, int]]:
    """Covering pairs ``(lower, upper)`` of the closure's order, as element indices."""
    jt, _ = closure.tables()
    le = _order_matrix(jt)
    n = len(closure)
    edges = []
    for lo in range(n):
        above = [hi for hi in range(n) if hi != lo and le[lo][hi]]
        for hi in above:
            if not any(le[mid][hi] for mid in above if mid != hi):
                edges.append((lo, hi))
    return edges
