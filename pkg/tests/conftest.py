import pytest

from relhom.relational import Relation

RUNNING = [[0, 1, 0, 1], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 1, 0]]


@pytest.fixture
def running():
    return Relation.from_matrix("abcd", "wxyz", RUNNING)


@pytest.fixture
def full2x2():
    return Relation.from_matrix("ab", "xy", [[1, 1], [1, 1]])
