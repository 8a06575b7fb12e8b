import itertools

import pytest
from hypothesis import given, strategies as st

from rellattice.errors import ParseError, TooLarge, UnknownAttribute, UnknownObject
from rellattice.fca import (
    Concept, FormalContext, check_bridge, concept_to_relation, context_to_csv, derive_extent,
    derive_intent, emit_dot, enumerate_concepts, parse_context,
)
from rellattice.fixtures import famous_animals
from rellattice.relation import make_relation

ANIMALS = ("Garfield", "Snoopy", "Socks", "Bobby", "Harriet")


@pytest.fixture(scope="module")
def ctx():
    return famous_animals()


@pytest.fixture(scope="module")
def lattice(ctx):
    return enumerate_concepts(ctx)


def closed_pairs_from_objects(ctx):
    """Oracle: close every object subset (the opposite side from the implementation)."""
    found = set()
    for k in range(len(ctx.objects) + 1):
        for objs in itertools.combinations(ctx.objects, k):
            common = {m for m in ctx.attributes if all((g, m) in ctx.incidence for g in objs)}
            extent = frozenset(g for g in ctx.objects
                               if all((g, m) in ctx.incidence for m in common))
            found.add((extent, frozenset(common)))
    return found


def test_parse_famous_animals(ctx):
    assert ctx.objects == ANIMALS
    assert len(ctx.attributes) == 6
    assert len(ctx.incidence) == 14


def test_parse_variants():
    assert parse_context(",a,b\n").objects == ()
    tabbed = parse_context("\tcat\tdog\nTom\tx\t\n")
    assert tabbed.incidence == {("Tom", "cat")}
    with pytest.raises(ParseError):
        parse_context(",a\nobj,y\n")
    with pytest.raises(ParseError):
        parse_context(",a\nobj,x,x\n")
    with pytest.raises(ParseError):
        parse_context("")


def test_csv_roundtrip(ctx):
    assert parse_context(context_to_csv(ctx)) == ctx


def test_derivations(ctx):
    assert derive_intent(ctx, ["Garfield"]) == {"cartoon", "cat", "mammal"}
    assert derive_extent(ctx, []) == set(ANIMALS)
    assert derive_intent(ctx, []) == set(ctx.attributes)
    assert derive_extent(ctx, ["real", "mammal"]) == {"Socks", "Bobby"}
    with pytest.raises(UnknownObject):
        derive_intent(ctx, ["Tom"])
    with pytest.raises(UnknownAttribute):
        derive_extent(ctx, ["fish"])


def test_concept_n_present(lattice):
    assert Concept(frozenset({"Socks", "Bobby"}), frozenset({"real", "mammal"})) in lattice.concepts


def test_concept_count_matches_oracle(ctx, lattice):
    oracle = closed_pairs_from_objects(ctx)
    assert {(c.extent, c.intent) for c in lattice.concepts} == oracle
    assert len(lattice) == len(oracle) == 13


def test_empty_context():
    ctx = FormalContext((), ("a", "b"), frozenset())
    lat = enumerate_concepts(ctx)
    assert len(lat) == 1 and lat.hasse_edges == ()


def test_too_large():
    ctx = FormalContext(("g",), tuple(f"m{i}" for i in range(21)), frozenset())
    with pytest.raises(TooLarge):
        enumerate_concepts(ctx)


def test_concept_to_relation(ctx, lattice):
    n = Concept(frozenset({"Socks", "Bobby"}), frozenset({"real", "mammal"}))
    rel = concept_to_relation(ctx, n)
    assert rel == make_relation(["Name", "isMammal", "isReal"],
                                [("Socks", True, True), ("Bobby", True, True)])
    top = concept_to_relation(ctx, lattice.concepts[lattice.top])
    assert top.header == {"Name"} and len(top) == 5
    bottom = concept_to_relation(ctx, lattice.concepts[lattice.bottom])
    assert len(bottom) == 0 and len(bottom.header) == 7


def test_hasse_edges_brute_force(lattice):
    cs = lattice.concepts
    expected = {
        (lo, hi)
        for lo, hi in itertools.permutations(range(len(cs)), 2)
        if cs[lo].extent < cs[hi].extent
        and not any(cs[lo].extent < cs[m].extent < cs[hi].extent for m in range(len(cs)))
    }
    assert set(lattice.hasse_edges) == expected
    assert len(expected) == 21


def test_lattice_has_unique_meets_and_joins(lattice):
    n = len(lattice)
    for i, j in itertools.product(range(n), repeat=2):
        lower = [k for k in range(n) if lattice.leq(k, i) and lattice.leq(k, j)]
        upper = [k for k in range(n) if lattice.leq(i, k) and lattice.leq(j, k)]
        glb = [k for k in lower if all(lattice.leq(m, k) for m in lower)]
        lub = [k for k in upper if all(lattice.leq(k, m) for m in upper)]
        assert glb == [lattice.meet(i, j)]
        assert lub == [lattice.join(i, j)]


def test_bridge(ctx):
    rep = check_bridge(ctx)
    assert rep.holds and rep.cases == 13 * 14 // 2
    assert "headers differ" in rep.note
    single = FormalContext(("g",), ("a",), frozenset({("g", "a")}))
    assert check_bridge(single).holds


def test_emit_dot(lattice):
    dot = emit_dot(lattice)
    assert dot == emit_dot(lattice)
    assert dot.startswith("digraph")
    assert dot.count("[label=") == 13
    assert dot.count(" -> ") == 21
    assert 'label="tortoise\\nHarriet"' in dot
    single = enumerate_concepts(FormalContext(("g",), (), frozenset()))
    assert emit_dot(single).count(" -> ") == 0 and emit_dot(single).count("[label=") == 1


@st.composite
def contexts(draw):
    objs = tuple(f"g{i}" for i in range(draw(st.integers(0, 5))))
    attrs = tuple(f"m{i}" for i in range(draw(st.integers(0, 5))))
    inc = draw(st.sets(st.sampled_from([(g, m) for g in objs for m in attrs]))) if objs and attrs else set()
    return FormalContext(objs, attrs, frozenset(inc))


@given(contexts(), st.data())
def test_galois_connection(ctx, data):
    objs = data.draw(st.sets(st.sampled_from(ctx.objects))) if ctx.objects else set()
    closed = derive_extent(ctx, derive_intent(ctx, objs))
    assert objs <= closed
    assert derive_extent(ctx, derive_intent(ctx, closed)) == closed
    more = data.draw(st.sets(st.sampled_from(ctx.objects))) if ctx.objects else set()
    assert closed <= derive_extent(ctx, derive_intent(ctx, objs | more))


@given(contexts())
def test_concepts_closed_and_complete(ctx):
    lat = enumerate_concepts(ctx)
    for c in lat.concepts:
        assert derive_intent(ctx, c.extent) == c.intent
        assert derive_extent(ctx, c.intent) == c.extent
    assert {(c.extent, c.intent) for c in lat.concepts} == closed_pairs_from_objects(ctx)
    assert check_bridge(ctx, lat).holds


@given(contexts())
def test_concept_relations_injective(ctx):
    lat = enumerate_concepts(ctx)
    rels = [concept_to_relation(ctx, c) for c in lat.concepts]
    assert len(set(rels)) == len(rels)
