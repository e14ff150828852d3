import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fockoptics import (
    FockBasisState,
    InputQutrit,
    StateVector,
    StructuralError,
    ValidationError,
    equal_up_to_global_phase,
    make_state,
    norm_squared,
    tensor,
    vacuum,
)
from fockoptics.fock import PRUNE_THRESHOLD

from conftest import random_state


def test_basis_state_invariants():
    k = FockBasisState((2, 0, 1))
    assert k.mode_count == 3
    assert k.total_photons() == 3
    assert k == (2, 0, 1) and hash(k) == hash((2, 0, 1))
    with pytest.raises(StructuralError):
        FockBasisState((1, -1))
    with pytest.raises(StructuralError):
        FockBasisState((1.5,))


def test_make_state_examples():
    s = make_state(1, [([0], 1.0)])
    assert s.amplitude((0,)) == 1 and norm_squared(s) == 1.0

    anc = make_state(2, [([1, 1], 1.0)])
    assert dict(anc.items()) == {(1, 1): 1.0}

    s = make_state(1, [([0], 0.6), ([0], 0.8)])
    assert len(s) == 1
    assert s.amplitude((0,)) == pytest.approx(1.4)


def test_make_state_errors():
    with pytest.raises(StructuralError):
        make_state(2, [([1], 1.0)])
    with pytest.raises(StructuralError):
        make_state(2, [([1, -1], 1.0)])


def test_make_state_prunes_tiny_terms():
    s = make_state(2, [([1, 0], 1.0), ([0, 1], 1e-16), ([2, 0], 0.5), ([2, 0], -0.5)])
    assert set(s) == {(1, 0)}
    assert all(abs(v) >= PRUNE_THRESHOLD for _, v in s.items())


def test_tensor_examples():
    one = make_state(1, [([1], 1)])
    assert dict(tensor(one, one).items()) == {(1, 1): 1}

    a, b, g = 0.6, 0.0 + 0.48j, 0.64
    q = make_state(1, [([0], a), ([1], b), ([2], g)])
    anc = make_state(2, [([1, 1], 1)])
    t = tensor(q, anc)
    assert t.mode_count == 3
    assert dict(t.items()) == {(0, 1, 1): a, (1, 1, 1): b, (2, 1, 1): g}

    v = tensor(vacuum(1), vacuum(2))
    assert v == vacuum(3) and norm_squared(v) == 1.0


def test_norm_squared_examples():
    assert norm_squared(make_state(2, [([1, 1], 1)])) == 1.0
    assert norm_squared(make_state(1, [([0], 0.6), ([1], 0.8j)])) == pytest.approx(1.0, abs=1e-15)
    assert norm_squared(StateVector(2)) == 0.0


def test_global_phase_examples():
    plus = make_state(1, [([0], 1 / math.sqrt(2)), ([1], 1 / math.sqrt(2))])
    minus = make_state(1, [([0], 1 / math.sqrt(2)), ([1], -1 / math.sqrt(2))])
    assert equal_up_to_global_phase(plus, plus.scaled(-1), 1e-12)
    assert not equal_up_to_global_phase(plus, minus, 1e-12)
    with pytest.raises(StructuralError):
        equal_up_to_global_phase(plus, vacuum(2), 1e-12)


def test_global_phase_reflexive_symmetric_and_phase_invariant(rng):
    for _ in range(20):
        s = random_state(rng, 3, 3)
        lam = cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        assert equal_up_to_global_phase(s, s, 1e-12)
        assert equal_up_to_global_phase(s, s.scaled(lam), 1e-12)
        assert equal_up_to_global_phase(s.scaled(lam), s, 1e-12)
        other = random_state(rng, 3, 3)
        assert equal_up_to_global_phase(s, other, 1e-10) == equal_up_to_global_phase(other, s, 1e-10)


def test_tensor_associative_and_multiplicative_norm(rng):
    for _ in range(20):
        a, b, c = (random_state(rng, m, 2).scaled(rng.uniform(0.5, 2)) for m in (1, 2, 1))
        left, right = tensor(tensor(a, b), c), tensor(a, tensor(b, c))
        assert left.mode_count == right.mode_count == 4
        np.testing.assert_allclose(
            sorted(abs(v) for _, v in left.items()), sorted(abs(v) for _, v in right.items()), atol=1e-15
        )
        assert abs(norm_squared(tensor(a, b)) - norm_squared(a) * norm_squared(b)) <= 1e-12


occupations = st.lists(st.integers(0, 4), min_size=3, max_size=3).map(tuple)
amplitude = st.complex_numbers(min_magnitude=1e-6, max_magnitude=10, allow_nan=False, allow_infinity=False)


@given(st.dictionaries(occupations, amplitude, min_size=1, max_size=10))
def test_make_state_roundtrip(terms):
    s = make_state(3, list(terms.items()))
    assert {k: s.amplitude(k) for k in terms} == terms
    assert len(s) == len(terms)


def test_input_qutrit_validation():
    q = InputQutrit(1, 1, 1)
    with pytest.raises(ValidationError, match="deficit"):
        q.validate()
    n = InputQutrit.normalized_from(1, 1, 1)
    n.validate()
    assert n.to_state().mode_count == 1
    assert InputQutrit.from_state(n.to_state()) == n
