import pytest

from dkchains.simplicial import (free_on_nerve, free_on_standard_simplex)

Z2 = [[0, 1], [1, 0]]
Z3 = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]


@pytest.fixture(scope="session")
def delta0():
    return free_on_standard_simplex(0, 4, name="delta:0")


@pytest.fixture(scope="session")
def delta1():
    return free_on_standard_simplex(1, 4, name="delta:1")


@pytest.fixture(scope="session")
def delta2():
    return free_on_standard_simplex(2, 4, name="delta:2")


@pytest.fixture(scope="session")
def nerve_z2():
    return free_on_nerve(Z2, 3, name="nerve:z2")
