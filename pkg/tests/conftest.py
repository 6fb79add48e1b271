import pytest

from abelred import catalog

ACCEPTANCE_RESULTS = {}


def catalog_algebras():
    """(label, algebra) pairs covering every built-in family."""
    return [
        ("heisenberg(1)", catalog.heisenberg(1)),
        ("heisenberg(2)", catalog.heisenberg(2)),
        ("heisenberg(3)", catalog.heisenberg(3)),
        ("cartan_f23", catalog.cartan_f23()),
        ("free_f24", catalog.free_f24()),
        ("filiform(3)", catalog.filiform(3)),
        ("filiform(4)", catalog.filiform(4)),
        ("filiform(5)", catalog.filiform(5)),
        ("filiform(6)", catalog.filiform(6)),
        ("jet(1,1,1)", catalog.jet(1, 1, 1)),
        ("jet(2,1,1)", catalog.jet(2, 1, 1)),
        ("jet(1,2,1)", catalog.jet(1, 2, 1)),
        ("jet(2,2,2)", catalog.jet(2, 2, 2)),
        ("se2", catalog.se2()),
    ]


@pytest.fixture(scope="session")
def algebras():
    return catalog_algebras()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        ok, title = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
