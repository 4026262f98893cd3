import pytest

from iwahori import group_of, preset


@pytest.fixture(scope="session")
def a1():
    return group_of(preset("A1", "coroot"))


@pytest.fixture(scope="session")
def a1w():
    return group_of(preset("A1", "coweight"))


@pytest.fixture(scope="session")
def a2():
    return group_of(preset("A2", "coroot"))


@pytest.fixture(scope="session")
def a2w():
    return group_of(preset("A2", "coweight"))


@pytest.fixture(scope="session")
def c2():
    return group_of(preset("C2", "coroot"))
