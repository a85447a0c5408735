import numpy as np
import pytest

from loxpairs.generate import generate_pair
from loxpairs.hermitian import HermitianSpace
from loxpairs.spectral import eigen_frame


@pytest.fixture(scope="session")
def qspace():
    return HermitianSpace(3, "quaternion")


@pytest.fixture(scope="session")
def cspace():
    return HermitianSpace(3, "complex")


@pytest.fixture(scope="session", params=["quaternion", "complex"])
def space(request):
    return HermitianSpace(3, request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def qpair(qspace):
    return generate_pair(qspace, seed=7, mode="strong")


@pytest.fixture(scope="session")
def cpair(cspace):
    return generate_pair(cspace, seed=7, mode="strong")


@pytest.fixture(scope="session")
def qframes(qspace, qpair):
    A, B = qpair
    return eigen_frame(qspace, A), eigen_frame(qspace, B)
