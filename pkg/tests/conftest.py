import pytest

from photonbox import BoxParams, FreeFall, Harmonic, PhysConstants


@pytest.fixture
def consts():
    return PhysConstants(hbar=1.0, c=1.0, g=1.0)


@pytest.fixture
def ff_box():
    return BoxParams(M=1000.0, m=1.0, potential=FreeFall())


@pytest.fixture
def ho_box():
    return BoxParams(M=1000.0, m=1.0, potential=Harmonic(k=1000.0))
