import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from su3forge.gates import swap12, walsh_hadamard, wh_hamiltonian

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def W():
    return walsh_hadamard()


@pytest.fixture
def S():
    return swap12()


@pytest.fixture
def H_W():
    return wh_hamiltonian()


def random_hermitian(rng, scale=1.0):
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    return scale * (a + a.conj().T) / 2
