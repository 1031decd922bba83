import pytest

from helpers import BIPARTITE, CERNY, EXAMPLE_A, EXAMPLE_GRAPH

from grcpkit.rational import RationalMatrix

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def example_matrix():
    return RationalMatrix(EXAMPLE_A)


@pytest.fixture
def example_graph():
    return EXAMPLE_GRAPH


@pytest.fixture
def cerny():
    return CERNY


@pytest.fixture
def bipartite():
    return BIPARTITE


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
