import numpy as np
import pytest
from hypothesis import settings

from kernelwedge import WeightedSpace, certify

settings.register_profile("kernelwedge", deadline=None, max_examples=50)
settings.load_profile("kernelwedge")

RUNNING_EXAMPLE = [[0.2, 0.1], [0.3, 0.4]]


@pytest.fixture
def unit2():
    return WeightedSpace.uniform(2)


@pytest.fixture
def running(unit2):
    return unit2.operator(RUNNING_EXAMPLE)


@pytest.fixture
def ones(unit2):
    return unit2.vector([1.0, 1.0])


@pytest.fixture
def ones_cert(running, ones):
    return certify(running, ones)


@pytest.fixture
def image_cert(running, unit2):
    return certify(running, unit2.vector([0.3, 0.7]))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
