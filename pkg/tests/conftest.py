import pytest
from hypothesis import settings, strategies as st

from diffinv.fixtures import Setup
from diffinv.gcalg import GCElement, GCMonomial

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def setup():
    return Setup()


def monomials(max_x=3, n=3):
    return st.builds(
        lambda e, m: GCMonomial(tuple(e), m),
        st.lists(st.integers(0, max_x), min_size=n, max_size=n),
        st.integers(0, 2 ** n - 1),
    )


def elements(max_x=3, n=3, p=3, max_terms=4):
    return st.dictionaries(monomials(max_x, n), st.integers(1, p - 1), max_size=max_terms).map(
        lambda d: GCElement(d, n, p))


def homogeneous(bd, n=3, p=3):
    from diffinv.gcalg import bidegree_basis
    basis = bidegree_basis(bd, n)
    return st.lists(st.integers(0, p - 1), min_size=len(basis), max_size=len(basis)).map(
        lambda cs: GCElement(dict(zip(basis, cs)), n, p))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
