import itertools

import numpy as np
import pytest
from hypothesis import settings

from fockoptics import InputQutrit, make_state

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_state(rng, modes, max_photons, n_terms=None):
    labels = [occ for occ in itertools.product(range(max_photons + 1), repeat=modes) if sum(occ) <= max_photons]
    n_terms = n_terms or int(rng.integers(1, min(len(labels), 12) + 1))
    picks = rng.choice(len(labels), size=n_terms, replace=False)
    amps = rng.normal(size=n_terms) + 1j * rng.normal(size=n_terms)
    return make_state(modes, [(labels[i], a) for i, a in zip(picks, amps)]).normalized()


def random_qutrit(rng):
    v = rng.normal(size=3) + 1j * rng.normal(size=3)
    return InputQutrit.normalized_from(*v)


@pytest.fixture
def rng():
    return np.random.default_rng(20011)
