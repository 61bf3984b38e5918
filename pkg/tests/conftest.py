import pytest

from stskel.graph import enumerate_spanning_trees
from stskel.skeleton import build_skeleton, mst_vertex_set

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


@pytest.fixture(scope="session")
def mst_lp_skeleton():
    """LP-certified MST skeletons, built once per session (n=5 takes about a minute)."""
    cache = {}

    def get(n):
        if n not in cache:
            vs = mst_vertex_set(n)
            cache[n] = (vs, enumerate_spanning_trees(n), build_skeleton(vs, oracle="lp"))
        return cache[n]

    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
