import itertools

import pytest
from hypothesis import given, strategies as st

from rellattice.derived import (
    RenameSpec, cartesian, compose, difference, difference_literal, projection, rename,
    select, tensor_product, transitive_closure,
)
from rellattice.errors import (
    AttrNotInHeader, HeaderMismatch, HeaderNotBinary, HeadersNotDisjoint, NotMaterializable,
    RenameCollision,
)
from rellattice.kernel import natural_join
from rellattice.predicates import cmp_rel, const_cmp_rel, eq_rel, neq_rel
from rellattice.relation import dee, empty, kernel_project, make_relation

from conftest import R, binary, relations


def warshall(pairs):
    nodes = sorted({v for p in pairs for v in p})
    reach = {(a, b) for a, b in pairs}
    for k in nodes:
        for i in nodes:
            for j in nodes:
                if (i, k) in reach and (k, j) in reach:
                    reach.add((i, j))
    return reach


def relabel(rel, mapping):
    rows = [{mapping.get(k, k): v for k, v in row.items()} for row in rel.rows()]
    return make_relation([mapping.get(a, a) for a in rel.attrs], rows)


def test_cartesian(A, B, C):
    assert len(cartesian(A, C)) == 4
    assert cartesian(A, dee()) == A
    with pytest.raises(HeadersNotDisjoint):
        cartesian(A, B)


def test_select_examples(A):
    assert select(A, [const_cmp_rel("x", "=", 1)]) == A
    assert select(A, [const_cmp_rel("x", ">", 1)]) == empty(["x", "y"])
    assert select(A, [cmp_rel("x", "<", "y")]) == A
    assert select(A, [const_cmp_rel("y", "=", 3)]) == R("xy", (1, 3))


def test_select_with_fresh_attribute(A):
    # equality to a fresh attribute extends then projects away
    assert select(A, [eq_rel("y", "q")]) == A
    with pytest.raises(NotMaterializable):
        select(A, [neq_rel("y", "q")])


def test_projection_examples(A):
    assert projection(A, {"y"}) == R("y", (2,), (3,))
    assert projection(A, {"x", "y"}) == A
    assert projection(A, set()) == dee()
    with pytest.raises(AttrNotInHeader):
        projection(A, {"q"})


def test_rename_examples(A):
    assert rename(A, {"y": "z"}) == R("xz", (1, 2), (1, 3))
    assert rename(rename(A, {"y": "z"}), {"z": "y"}) == A
    joined = natural_join(rename(A, {"y": "z"}), A)
    assert joined == R("xyz", (1, 2, 2), (1, 2, 3), (1, 3, 2), (1, 3, 3))
    # without renaming the self-join collapses
    assert natural_join(A, A) == A


def test_rename_errors(A):
    with pytest.raises(RenameCollision):
        rename(A, {"y": "x"})
    with pytest.raises(AttrNotInHeader):
        rename(A, {"q": "r"})
    with pytest.raises(RenameCollision):
        rename(A, [("x", "p"), ("y", "p")])
    with pytest.raises(RenameCollision):
        rename(A, [("x", "p"), ("x", "q")])


def test_compose_examples(A):
    r = R("xy", (1, 2), (2, 3))
    assert compose(r, r, "x", "y") == R("xy", (1, 3))
    assert compose(r, empty("xy"), "x", "y") == empty("xy")
    assert compose(A, A, "x", "y") == empty("xy")
    with pytest.raises(HeaderNotBinary):
        compose(R("xyz"), r, "x", "y")


def test_transitive_closure_examples():
    assert transitive_closure(R("xy", (1, 2), (2, 3))) == R("xy", (1, 2), (2, 3), (1, 3))
    assert transitive_closure(empty("xy")) == empty("xy")
    assert transitive_closure(R("xy", (1, 2), (2, 1))) == R("xy", (1, 2), (2, 1), (1, 1), (2, 2))
    with pytest.raises(HeaderNotBinary):
        transitive_closure(R("x", (1,)))


def test_transitive_closure_named_attrs():
    r = R(["src", "dst"], (1, 2), (2, 3))
    assert transitive_closure(r, "src", "dst") == R(["src", "dst"], (1, 2), (2, 3), (1, 3))
    # orientation matters
    assert transitive_closure(r, "dst", "src") == R(["src", "dst"], (1, 2), (2, 3), (1, 3))


def test_difference_literal_cases():
    a = R("xy", (1, 2))
    assert difference_literal(a, R("xy", (1, 3))) == R("xy", (1, 2))
    assert difference(a, R("xy", (1, 3))) == R("xy", (1, 2))
    b = R("xy", (1, 2), (3, 4))
    assert difference_literal(a, b) == R("xy", (1, 2))
    assert difference(a, b) == empty("xy")
    assert difference_literal(a, empty("xy")) == empty("xy")
    assert difference(a, empty("xy")) == a


def test_difference_examples(A):
    assert difference(A, R("xy", (1, 3))) == R("xy", (1, 2))
    assert difference(A, A) == empty("xy")
    with pytest.raises(HeaderMismatch):
        difference(A, R("yz"))
    with pytest.raises(HeaderNotBinary):
        difference_literal(R("x", (1,)), R("x", (1,)))


def test_tensor_examples():
    out = tensor_product(R("xy", (1, 2)), R("xy", (3, 4)))
    assert out == make_relation(["xx", "xy", "yx", "yy"], [(1, 1, 2, 2), (3, 4, 3, 4)])
    same = tensor_product(R("xy", (1, 2)), R("xy", (1, 2)))
    assert same == make_relation(["xx", "xy", "yx", "yy"], [(1, 1, 2, 2), (1, 2, 1, 2)])
    assert tensor_product(empty("xy"), empty("xy")) == empty(["xx", "xy", "yx", "yy"])
    with pytest.raises(HeaderNotBinary):
        tensor_product(R("x"), R("x"))


@given(relations())
def test_projection_reduction_is_exact(r):
    for k in range(len(r.attrs) + 1):
        for attrs in itertools.combinations(r.attrs, k):
            assert projection(r, attrs) == kernel_project(r, attrs)


@given(relations(), st.data())
def test_rename_matches_relabeling(r, data):
    olds = data.draw(st.lists(st.sampled_from(sorted(r.header)), unique=True)) if r.header else []
    fresh = [n for n in ("p", "q", "s", "t") if n not in r.header]
    news = data.draw(st.permutations(fresh))[: len(olds)]
    mapping = dict(zip(olds, news))
    assert rename(r, mapping) == relabel(r, mapping)
    assert rename(rename(r, mapping), RenameSpec.of(mapping).inverse()) == r


@given(relations(header=("x", "y")), st.lists(st.sampled_from([
    cmp_rel("x", "<", "y"), cmp_rel("x", "!=", "y"), const_cmp_rel("x", ">=", 2),
    const_cmp_rel("y", "=", 1), eq_rel("x", "y"),
]), max_size=3))
def test_select_is_subset(r, preds):
    out = select(r, preds)
    assert out.header == r.header and out.body <= r.body


@given(binary(values=st.integers(0, 7)))
def test_transitive_closure_matches_warshall(r):
    tc = transitive_closure(r)
    assert set(tc.tuples(["x", "y"])) == warshall(r.tuples(["x", "y"]))
    assert transitive_closure(tc) == tc


def test_difference_exhaustive_small_domain():
    for header in ([], ["x"], ["x", "y"]):
        universe = list(itertools.product([0, 1], repeat=len(header)))
        bodies = [
            list(c) for k in range(len(universe) + 1) for c in itertools.combinations(universe, k)
        ]
        for ra in bodies:
            for rb in bodies:
                a, b = make_relation(header, ra), make_relation(header, rb)
                expected = make_relation(header, [t for t in ra if t not in rb])
                assert difference(a, b) == expected


def literal_oracle(a, b):
    """Rows of a with some b-row differing in x, or some b-row differing in y."""
    rows = []
    for s in a.tuples(["x", "y"]):
        if any(s[0] != t[0] for t in b.tuples(["x", "y"])) or any(
            s[1] != t[1] for t in b.tuples(["x", "y"])
        ):
            rows.append(s)
    return make_relation(["x", "y"], rows)


@given(binary(max_rows=4, values=st.integers(0, 2)), binary(max_rows=4, values=st.integers(0, 2)))
def test_difference_literal_characterization(a, b):
    lit = difference_literal(a, b)
    assert lit == literal_oracle(a, b)
    # over-approximates true difference whenever b is non-empty
    if not b.is_empty():
        assert difference(a, b).body <= lit.body
    # agrees exactly when b has a single row
    if len(b) == 1:
        assert lit == difference(a, b)


@given(relations(pool=("x", "y")), relations(pool=("z", "w")))
def test_cartesian_cardinality(a, b):
    assert len(cartesian(a, b)) == len(a) * len(b)
