import logging

import pytest

from qcmatch.graph import Graph


def pytest_configure(config):
    logging.getLogger("qcmatch.engine").setLevel(logging.ERROR)


@pytest.fixture
def triangle():
    return Graph(3, frozenset([(0, 1), (1, 2), (0, 2)]))


@pytest.fixture
def path4():
    return Graph(4, frozenset([(0, 1), (1, 2), (2, 3)]))


@pytest.fixture
def k4():
    return Graph(4, frozenset([(u, v) for u in range(4) for v in range(u + 1, 4)]),
                 ((0, 1), (2, 3)))
