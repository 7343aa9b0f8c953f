import sys

import pytest

from toricpair.invariants import make_pair


def cyclic_exponents(d):
    return [(d, 1, 0), (0, d, 1), (1, 0, d)]


@pytest.fixture
def cyclic():
    """x^d y, y^d z, z^d x on A^3, keyed by d."""
    return lambda d: make_pair(cyclic_exponents(d))


@pytest.fixture
def max_ideal_plane():
    return make_pair([(1, 0), (0, 1)])


@pytest.fixture
def principal_plane():
    return make_pair([(1, 0)])


@pytest.fixture
def a1_pair():
    # maximal ideal of the A1 point
    return make_pair([(0, 1), (1, 0), (2, -1)], [(1, 0), (1, 2)])


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("tests.test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(acceptance.RESULTS, key=lambda s: int(s.split()[2].rstrip(":"))):
        terminalreporter.write_line(line)
