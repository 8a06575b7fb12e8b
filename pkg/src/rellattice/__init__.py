"""Relational algebra reduced to natural join and generalized union.

The two kernel operators form a (non-distributive) lattice over finite
relations; every classical operator is derived from them together with
symbolic predicate relations.
"""

from .derived import (
    RenameSpec,
    cartesian,
    compose,
    difference,
    difference_literal,
    projection,
    rename,
    select,
    tensor_product,
    transitive_closure,
)
from .errors import (
    AttrNotInHeader,
    EvalError,
    HeaderMismatch,
    HeaderNotBinary,
    HeadersNotDisjoint,
    NotMaterializable,
    ParseError,
    RelationError,
    RenameCollision,
    SameAttribute,
    TooLarge,
    UnboundName,
)
from .kernel import (
    LatticeClosure,
    LawReport,
    check_distributivity,
    check_laws,
    check_modularity,
    find_modularity_violation,
    find_n5,
    generalized_union,
    lattice_closure,
    leq_by_join,
    leq_by_union,
    natural_join,
)
from .predicates import (
    SymbolicRelation,
    cmp_rel,
    const_cmp_rel,
    eq_rel,
    join_with_symbolic,
    neq_rel,
    restrict,
)
from .relation import (
    Relation,
    dee,
    dum,
    empty,
    kernel_project,
    make_relation,
    relation_equal,
)

__version__ = "0.1.0"
