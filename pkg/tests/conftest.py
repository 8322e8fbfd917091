import random

import pytest
from hypothesis import strategies as st

from polycolor import Hypergraph, paper_hypergraph

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def paper():
    return paper_hypergraph()


@pytest.fixture
def rng():
    return random.Random(20231016)


@st.composite
def hypergraphs(draw, max_n=5, min_n=0, max_edges=8, allow_empty_edge=True):
    n = draw(st.integers(min_n, max_n))
    lo = 0 if allow_empty_edge else 1
    if n == 0 and not allow_empty_edge:
        return Hypergraph(0, ())
    edges = draw(st.lists(st.integers(lo, (1 << n) - 1), max_size=max_edges))
    return Hypergraph(n, tuple(edges))


def random_hypergraph(rng, n, max_edges=8, allow_empty_edge=True):
    lo = 0 if allow_empty_edge else 1
    if n == 0:
        return Hypergraph(0, ())
    count = rng.randint(0, max_edges)
    return Hypergraph(n, tuple(rng.randint(lo, (1 << n) - 1) for _ in range(count)))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
