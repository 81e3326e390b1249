"""Shared fixtures; the expensive 1d solves are session-scoped."""

import numpy as np
import pytest
from hypothesis import settings

from gaugeqed import double_well_model, harmonic_model, solve_particle

settings.register_profile("suite", deadline=None, max_examples=25,
                          derandomize=True)
settings.load_profile("suite")


def rng(seed):
    return np.random.default_rng(seed)


def random_hermitian(dim, seed, scale=1.0):
    g = rng(seed)
    m = g.standard_normal((dim, dim)) + 1j * g.standard_normal((dim, dim))
    return scale * (m + m.conj().T) / 2.0


@pytest.fixture(scope="session")
def harmonic():
    model = harmonic_model()
    return model, solve_particle(model)


@pytest.fixture(scope="session")
def double_well():
    model = double_well_model()
    return model, solve_particle(model)
