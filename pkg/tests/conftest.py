import sys

import pytest

from nestkernel.lattice import Nest
from nestkernel.linalg import Matrix

T1_ROWS = [[0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 1, 1], [0, 0, 1, 1]]
T2_ROWS = [[0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 1, 2], [0, 0, 1, 1]]


def E(n, i, j):
    """Matrix unit with 1-based indices."""
    return Matrix.unit(n, i - 1, j - 1)


def e(n, i):
    return tuple(int(k == i - 1) for k in range(n))


@pytest.fixture
def T1():
    return Matrix(T1_ROWS)


@pytest.fixture
def T2():
    return Matrix(T2_ROWS)


@pytest.fixture
def N4():
    return Nest.maximal_coordinate(4)


@pytest.fixture
def N2():
    return Nest.maximal_coordinate(2)


@pytest.fixture
def N6():
    return Nest.maximal_coordinate(6)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
