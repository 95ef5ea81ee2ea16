import pytest

from choix import search

ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture(scope="session")
def table_1_cap6():
    return search.bfs_distances(1, 6, 36)


@pytest.fixture(scope="session")
def table_1_cap7():
    return search.bfs_distances(1, 7, 10_000)


@pytest.fixture(scope="session")
def table_5_cap7():
    return search.bfs_distances(5, 7, 20_000)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
