"""Built-in example relations and the "famous animals" formal context."""

from __future__ import annotations

from .fca import FormalContext, parse_context
from .relation import Relation, make_relation

FAMOUS_ANIMALS_CSV = """\
,cartoon,real,tortoise,dog,cat,mammal
Garfield,x,,,,x,x
Snoopy,x,,,x,,x
Socks,,x,,,x,x
Bobby,,x,,x,,x
Harriet,,x,x,,,
"""


def example_a() -> Relation:
    return make_relation(["x", "y"], [(1, 2), (1, 3)])


def example_b() -> Relation:
    return make_relation(["y", "z"], [(1, 3), (2, 4)])


def example_c() -> Relation:
    return make_relation(["z"], [(3,), (7,)])


def example_env() -> dict[str, Relation]:
    """Relations ``A``, ``B`` and ``C`` preloaded by the CLI."""
    return {"A": example_a(), "B": example_b(), "C": example_c()}


def famous_animals() -> FormalContext:
    return parse_context(FAMOUS_ANIMALS_CSV)
