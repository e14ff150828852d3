import json
import math
from importlib import resources
from pathlib import Path

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import fockoptics
from fockoptics import (
    BeamSplitter,
    CircuitDescription,
    CircuitSemanticError,
    CircuitSyntaxError,
    MeasureRecord,
    PhaseShifter,
    parse_circuit,
    serialize_circuit,
)
from fockoptics.circuit_io import execute
from fockoptics.nls import CANONICAL_THETA

MALFORMED = Path(__file__).parent / "fixtures" / "malformed"
EXPECTED_ERRORS = json.loads((MALFORMED / "expected.json").read_text())


def nls_text():
    return (resources.files("fockoptics") / "data" / "nls.circuit").read_text()


def test_parse_nls_fixture():
    c = parse_circuit(nls_text())
    assert c.mode_count == 3
    assert len(c.elements) == 2
    assert c.elements[0] == BeamSplitter(1, 2, CANONICAL_THETA)
    assert c.elements[1] == BeamSplitter(0, 1, math.pi / 4)
    assert c.measure == MeasureRecord((0, 1))
    assert c.normalize


def test_roundtrip_nls_fixture():
    c = parse_circuit(nls_text())
    assert parse_circuit(serialize_circuit(c)) == c


def test_float_roundtrip_17_digits():
    c = CircuitDescription(2, (((1, 0), 1.0, 0.0),), (BeamSplitter(0, 1, 0.5536),))
    text = serialize_circuit(c)
    assert '"theta": 0.55359999999999998' in text
    assert parse_circuit(text).elements[0].theta == 0.5536


def test_postselect_preserved():
    c = CircuitDescription(2, (((1, 1), 1.0, 0.0),), (), MeasureRecord((0, 1), (2, 0)))
    assert parse_circuit(serialize_circuit(c)).measure.postselect == (2, 0)


def test_error_locations():
    with pytest.raises(CircuitSyntaxError) as exc:
        parse_circuit((MALFORMED / "bad_json.circuit").read_text())
    assert exc.value.line == 3 and exc.value.column == 31
    with pytest.raises(CircuitSemanticError) as exc:
        parse_circuit((MALFORMED / "mode_out_of_range.circuit").read_text())
    assert exc.value.path.startswith("bs[0]") and "modes[1]" in exc.value.path


@pytest.mark.parametrize("name", sorted(EXPECTED_ERRORS))
def test_malformed_fixtures(name):
    cls = getattr(fockoptics, EXPECTED_ERRORS[name])
    with pytest.raises(cls):
        parse_circuit((MALFORMED / name).read_text())


def test_execute_modes():
    c = parse_circuit(nls_text())
    dist = execute(c)
    assert dist[(2, 0)].probability == pytest.approx(0.1, abs=1e-12)
    p, residual = execute(c, (0, 2))
    assert p == pytest.approx(0.1, abs=1e-12)
    assert residual.amplitude((1,)) == pytest.approx(-1 / math.sqrt(3), abs=1e-12)
    bare = CircuitDescription(2, (((1, 1), 1.0, 0.0),), (BeamSplitter(0, 1, CANONICAL_THETA),))
    state = execute(bare)
    assert state.amplitude((0, 2)) == pytest.approx(-2 / math.sqrt(10), abs=1e-12)


finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@st.composite
def descriptions(draw):
    m = draw(st.integers(1, 4))
    mode = st.integers(0, m - 1)
    occ = st.lists(st.integers(0, 5), min_size=m, max_size=m).map(tuple)
    terms = draw(st.lists(st.tuples(occ, finite, finite), min_size=1, max_size=5))
    normalize = True
    if len(terms) == 1 and draw(st.booleans()):
        terms, normalize = [(terms[0][0], 0.6, -0.8)], False
    elements = []
    for _ in range(draw(st.integers(0, 6))):
        if m > 1 and draw(st.booleans()):
            a, b = draw(st.lists(mode, min_size=2, max_size=2, unique=True))
            elements.append(BeamSplitter(a, b, draw(finite)))
        else:
            elements.append(PhaseShifter(draw(mode), draw(finite)))
    measure = None
    if draw(st.booleans()):
        modes = tuple(draw(st.lists(mode, min_size=1, max_size=m, unique=True)))
        pattern = draw(st.none() | st.lists(st.integers(0, 5), min_size=len(modes), max_size=len(modes)).map(tuple))
        measure = MeasureRecord(modes, pattern)
    return CircuitDescription(m, tuple(terms), tuple(elements), measure, normalize)


@given(descriptions())
def test_roundtrip_property(c):
    assume(_nonzero(c))
    assert parse_circuit(serialize_circuit(c)) == c


def _nonzero(c):
    # summed duplicate labels can cancel to zero, which is not a valid input
    state = fockoptics.make_state(c.mode_count, [(o, complex(re, im)) for o, re, im in c.input_terms])
    return state.norm_squared() > 0
