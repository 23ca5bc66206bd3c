import pytest

from ainfsurf.polygon import build_polygon


@pytest.fixture(scope="session")
def pentagon():
    return build_polygon(5)


@pytest.fixture(scope="session")
def hexagon():
    return build_polygon(6)
