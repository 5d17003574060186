import pytest

from kvc.corpus import atlas_graphs


@pytest.fixture(scope="session")
def atlas():
    """Connected graphs with 2..7 vertices, one per isomorphism class."""
    return atlas_graphs(7, min_n=2)


@pytest.fixture(scope="session")
def small_atlas():
    return atlas_graphs(5, min_n=2)



ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_lines():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
