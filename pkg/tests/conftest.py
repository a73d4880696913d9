import numpy as np
import pytest

from treecode.bijection import decode_degree
from treecode.trees import RootedTree

QUATERNARY_CODE = (2, 2, 3, 2, 4, 4, 1, 1, 2, 1, 3, 4, 3, 4, 1, 3)
QUATERNARY_GROWN_CODE = (2, 2, 5, 5, 3, 2, 4, 4, 5, 1, 5, 1, 2, 1, 3, 4, 3, 4, 1, 3)

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def quaternary():
    return decode_degree(QUATERNARY_CODE, (4, 4, 4, 4))


def star3():
    return RootedTree.from_parent_map(3, 1, {2: 1, 3: 1})


def path231():
    return RootedTree.from_parent_map(3, 2, {3: 2, 1: 3})
