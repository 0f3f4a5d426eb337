import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ejalab.jordan import Element, hermitian_2x2_model
from ejalab.scalars import ScalarKind

settings.register_profile(
    "ejalab", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ejalab")


def complex_part(m):
    """Matrix-factor component from a complex numpy matrix."""
    m = np.asarray(m, dtype=complex)
    return np.stack([m.real, m.imag], axis=-1)


def complex_matrix(part):
    return part[..., 0] + 1j * part[..., 1]


def h2c_element(m):
    """Element of the raw 2x2 complex Hermitian model."""
    return Element(hermitian_2x2_model(ScalarKind.COMPLEX), [complex_part(m)])


def random_hermitian(rng, k):
    a = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
    return (a + a.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)
