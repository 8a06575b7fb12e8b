import pytest
from hypothesis import settings, strategies as st

from rellattice.relation import make_relation
from rellattice import fixtures

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

POOL = ("w", "x", "y", "z")


@st.composite
def relations(draw, pool=POOL, max_rows=6, values=st.integers(0, 4), header=None):
    if header is None:
        header = draw(st.lists(st.sampled_from(pool), unique=True, max_size=len(pool)))
    rows = draw(st.lists(st.tuples(*[values for _ in header]), max_size=max_rows))
    return make_relation(list(header), rows)


def binary(attrs=("x", "y"), max_rows=8, values=st.integers(0, 5)):
    return relations(header=attrs, max_rows=max_rows, values=values)


@pytest.fixture
def A():
    return fixtures.example_a()


@pytest.fixture
def B():
    return fixtures.example_b()


@pytest.fixture
def C():
    return fixtures.example_c()


def R(header, *rows):
    return make_relation(list(header), rows)


# -- acceptance report ------------------------------------------------------

ACCEPTANCE_CRITERIA = 14
_acceptance_key = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """``acceptance(n, ok, detail)`` records the verdict for criterion ``n``."""
    results = request.config.stash.setdefault(_acceptance_key, {})

    def record(n, ok, detail):
        results[n] = (bool(ok), detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_acceptance_key, None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, ACCEPTANCE_CRITERIA + 1):
        if n in results:
            ok, detail = results[n]
            terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n:2d}: {detail}")
        else:
            terminalreporter.write_line(f"FAIL criterion {n:2d}: not run or raised before reporting")
