import itertools

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from asilab.graph import StructuredMultigraph

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@st.composite
def small_graphs(draw, min_n=1, max_n=8, p=1, density=None):
    """Finite multigraphs with vertex ids drawn from a sparse range."""
    n = draw(st.integers(min_n, max_n))
    verts = sorted(draw(st.sets(st.integers(0, 40), min_size=n, max_size=n)))
    pairs = list(itertools.combinations(verts, 2))
    mults = draw(st.lists(st.integers(0, p), min_size=len(pairs), max_size=len(pairs)))
    if density is not None:
        keep = draw(st.lists(st.floats(0, 1), min_size=len(pairs), max_size=len(pairs)))
        mults = [m if x < density else 0 for m, x in zip(mults, keep)]
    edges = [[u, v, m] for (u, v), m in zip(pairs, mults) if m]
    return StructuredMultigraph(verts, edges)


@st.composite
def order_preserving_maps(draw, vertices):
    """An injective, strictly increasing relabeling of ``vertices``."""
    gaps = draw(st.lists(st.integers(1, 5), min_size=len(vertices), max_size=len(vertices)))
    out, cur = {}, draw(st.integers(0, 10))
    for v, gap in zip(sorted(vertices), gaps):
        cur += gap
        out[v] = cur
    return out


def path_graph(n):
    return StructuredMultigraph(range(n), [[i, i + 1] for i in range(n - 1)])


def cycle_graph(n):
    return StructuredMultigraph(range(n), [[i, (i + 1) % n] for i in range(n)])


def complete_graph(n):
    return StructuredMultigraph(range(n), [[u, v] for u, v in itertools.combinations(range(n), 2)])


@pytest.fixture
def path6():
    return path_graph(6)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
