import pytest

from LINZ.MonomialDynamics.SystemFile import readSystem

from .helpers import dataFile, system


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run exhaustive sweeps")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def example1():
    return readSystem(dataFile("example1.txt"))


@pytest.fixture
def example2():
    return readSystem(dataFile("example2.txt"))


@pytest.fixture
def trigon():
    return system([2], [3], [1])
