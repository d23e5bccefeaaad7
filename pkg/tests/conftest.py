import pytest

from sizesem import fixtures
from sizesem.setcore import Universe


@pytest.fixture
def u3():
    return Universe(["x", "y", "z"])


@pytest.fixture
def fact34_1():
    return fixtures.fixture_system("fact34-1")


@pytest.fixture
def fact34_2():
    return fixtures.fixture_system("fact34-2")


@pytest.fixture
def ex38_3():
    return fixtures.fixture_system("ex38-3")
