import pytest

from ekrshift.complex import boundary_of_simplex, from_facets
from ekrshift.fflinalg import FieldConfig

# generators of the 3-near-cone worked example on v1 < ... < v6
EXAMPLE_GENERATORS = [[1, 2, 4, 6], [1, 3], [1, 5], [2, 3], [2, 5], [3, 4], [3, 5], [3, 6]]
BIG = FieldConfig(2147483647)
TWO = FieldConfig(2)


@pytest.fixture
def example():
    return from_facets(EXAMPLE_GENERATORS, range(1, 7))


@pytest.fixture
def hollow_triangle():
    return boundary_of_simplex(3)


@pytest.fixture
def four_cycle():
    return from_facets([[1, 2], [2, 3], [3, 4], [1, 4]], range(1, 5))


@pytest.fixture
def disjoint_edges():
    return from_facets([[1, 2], [3, 4]], range(1, 5))


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
