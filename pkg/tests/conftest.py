import pytest

from matroid_depth import families


@pytest.fixture(scope="session")
def census3():
    return families.census(3)


@pytest.fixture(scope="session")
def census4():
    return families.census(4)


@pytest.fixture(scope="session")
def census5():
    return families.census(5)


@pytest.fixture(scope="session")
def fixture_matroids():
    return families.fixtures()
