import pytest

from btlres.graph import build_graph


@pytest.fixture
def k2():
    return build_graph(2, [(0, 1)])


@pytest.fixture
def path3():
    return build_graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def path4():
    return build_graph(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def cycle4():
    return build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def k4():
    return build_graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])


@pytest.fixture
def star5():
    return build_graph(5, [(0, v) for v in range(1, 5)])


@pytest.fixture
def two_triangles():
    """Triangles {0,1,2} and {3,4,5} joined by the bridge (2, 3)."""
    return build_graph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
