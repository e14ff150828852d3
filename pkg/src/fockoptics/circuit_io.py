"""Line-oriented text format for linear-optical circuits.

Each non-blank line is ``<keyword> <JSON value>``; ``#`` starts a comment line.
Records, in canonical order::

    modes 3
    normalize true                                  (optional, default false)
    input [[0, 1, 1], 1.0, 0.0]                     (one per term: occupations, re, im)
    bs {"modes": [1, 2], "theta": 0.5535743588970452}
    ps {"mode": 2, "phi": 3.141592653589793}
    measure {"modes": [0, 1], "postselect": [2, 0]}  (optional, at most once)

``bs`` and ``ps`` lines are applied in file order. Unknown keywords and unknown
object keys are rejected. See ``docs/circuit-format.md`` for the grammar.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import CircuitSemanticError, CircuitSyntaxError, ValidationError
from .fock import StateVector, make_state
from .linear_optics import BeamSplitter, OpticalElement, PhaseShifter, apply_elements
from .measurement import MeasurementSpec, outcome_distribution, postselect

__all__ = [
    "MeasureRecord",
    "CircuitDescription",
    "parse_circuit",
    "serialize_circuit",
    "load_circuit",
    "initial_state",
    "run_circuit",
    "execute",
]

NORM_TOL = 1e-9
KEYWORDS = ("modes", "normalize", "input", "bs", "ps", "measure")


@dataclass(frozen=True)
class MeasureRecord:
    modes: tuple[int, ...]
    postselect: tuple[int, ...] | None = None

    @property
    def spec(self) -> MeasurementSpec:
        return MeasurementSpec(self.modes)


@dataclass(frozen=True)
class CircuitDescription:
    mode_count: int
    input_terms: tuple[tuple[tuple[int, ...], float, float], ...]
    elements: tuple[OpticalElement, ...] = ()
    measure: MeasureRecord | None = None
    normalize: bool = False


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def serialize_circuit(c: CircuitDescription) -> str:
    lines = [f"modes {c.mode_count}"]
    if c.normalize:
        lines.append("normalize true")
    for occ, re, im in c.input_terms:
        lines.append(f"input [[{', '.join(map(str, occ))}], {_fmt(re)}, {_fmt(im)}]")
    for e in c.elements:
        if isinstance(e, BeamSplitter):
            lines.append(f'bs {{"modes": [{e.mode_a}, {e.mode_b}], "theta": {_fmt(e.theta)}}}')
        else:
            lines.append(f'ps {{"mode": {e.mode}, "phi": {_fmt(e.phi)}}}')
    if c.measure is not None:
        body = f'"modes": [{", ".join(map(str, c.measure.modes))}]'
        if c.measure.postselect is not None:
            body += f', "postselect": [{", ".join(map(str, c.measure.postselect))}]'
        lines.append(f"measure {{{body}}}")
    return "\n".join(lines) + "\n"


def _reject_constant(name):
    raise ValueError(f"non-finite number {name} is not allowed")


class _Line:
    def __init__(self, lineno: int, keyword: str, value, path: str):
        self.lineno = lineno
        self.keyword = keyword
        self.value = value
        self.path = path


def _tokenize(text: str) -> list[_Line]:
    records = []
    counts: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        indent = len(raw) - len(raw.lstrip())
        keyword, _, rest = stripped.partition(" ")
        if keyword not in KEYWORDS:
            raise CircuitSyntaxError(f"unknown keyword {keyword!r}", lineno, indent + 1)
        value_col = indent + len(keyword) + 2 + (len(rest) - len(rest.lstrip()))
        rest = rest.strip()
        if not rest:
            raise CircuitSyntaxError(f"missing value after {keyword!r}", lineno, indent + len(keyword) + 1)
        try:
            value = json.loads(rest, parse_constant=_reject_constant)
        except json.JSONDecodeError as exc:
            raise CircuitSyntaxError(exc.msg, lineno, value_col + exc.colno - 1) from None
        except ValueError as exc:
            raise CircuitSyntaxError(str(exc), lineno, value_col) from None
        index = counts.get(keyword, 0)
        counts[keyword] = index + 1
        records.append(_Line(lineno, keyword, value, f"{keyword}[{index}] (line {lineno})"))
    if not records:
        raise CircuitSyntaxError("empty circuit description", 1, 1)
    return records


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _int_list(value, path: str, length: int | None = None) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(_is_int(v) and v >= 0 for v in value):
        raise CircuitSemanticError("expected a list of non-negative integers", path)
    if length is not None and len(value) != length:
        raise CircuitSemanticError(f"expected {length} entries, got {len(value)}", path)
    return tuple(value)


def _object(value, path: str, required: Sequence[str], optional: Sequence[str] = ()) -> dict:
    if not isinstance(value, dict):
        raise CircuitSemanticError("expected a JSON object", path)
    unknown = sorted(set(value) - set(required) - set(optional))
    if unknown:
        raise CircuitSemanticError(f"unknown key(s) {unknown}", path)
    missing = [k for k in required if k not in value]
    if missing:
        raise CircuitSemanticError(f"missing key(s) {missing}", path)
    return value


def _mode(value, path: str, mode_count: int) -> int:
    if not _is_int(value) or value < 0:
        raise CircuitSemanticError(f"mode index {value!r} is not a non-negative integer", path)
    if value >= mode_count:
        raise CircuitSemanticError(f"mode index {value} out of range for {mode_count} modes", path)
    return value


def _number(value, path: str) -> float:
    if not _is_number(value) or not math.isfinite(value):
        raise CircuitSemanticError(f"expected a finite number, got {value!r}", path)
    return float(value)


def parse_circuit(text: str) -> CircuitDescription:
    """Parse and validate a circuit description.

    Raises :class:`CircuitSyntaxError` (with line and column) for malformed text,
    :class:`CircuitSemanticError` (with a field path) for invalid content and
    :class:`ValidationError` for an unnormalized input without ``normalize true``.
    """
    records = _tokenize(text)
    by_kw: dict[str, list[_Line]] = {}
    for r in records:
        by_kw.setdefault(r.keyword, []).append(r)
    for kw in ("modes", "normalize", "measure"):
        if len(by_kw.get(kw, [])) > 1:
            raise CircuitSemanticError(f"{kw!r} may appear only once", by_kw[kw][1].path)
    if "modes" not in by_kw:
        raise CircuitSemanticError("missing 'modes' record", "modes")
    rec = by_kw["modes"][0]
    if not _is_int(rec.value) or rec.value < 1:
        raise CircuitSemanticError("mode count must be a positive integer", rec.path)
    mode_count = rec.value

    normalize = False
    if "normalize" in by_kw:
        rec = by_kw["normalize"][0]
        if not isinstance(rec.value, bool):
            raise CircuitSemanticError("expected true or false", rec.path)
        normalize = rec.value

    terms = []
    for rec in by_kw.get("input", []):
        v = rec.value
        if not isinstance(v, list) or len(v) != 3:
            raise CircuitSemanticError("expected [occupations, re, im]", rec.path)
        occ = _int_list(v[0], rec.path + ".occupations", mode_count)
        terms.append((occ, _number(v[1], rec.path + ".re"), _number(v[2], rec.path + ".im")))
    if not terms:
        raise CircuitSemanticError("at least one 'input' record is required", "input")

    elements: list[OpticalElement] = []
    for rec in records:
        if rec.keyword == "bs":
            obj = _object(rec.value, rec.path, ("modes", "theta"))
            modes = obj["modes"]
            if not isinstance(modes, list) or len(modes) != 2:
                raise CircuitSemanticError("expected two mode indices", rec.path + ".modes")
            a = _mode(modes[0], rec.path + ".modes[0]", mode_count)
            b = _mode(modes[1], rec.path + ".modes[1]", mode_count)
            if a == b:
                raise CircuitSemanticError("beam splitter modes must differ", rec.path + ".modes")
            elements.append(BeamSplitter(a, b, _number(obj["theta"], rec.path + ".theta")))
        elif rec.keyword == "ps":
            obj = _object(rec.value, rec.path, ("mode", "phi"))
            m = _mode(obj["mode"], rec.path + ".mode", mode_count)
            elements.append(PhaseShifter(m, _number(obj["phi"], rec.path + ".phi")))

    measure = None
    if "measure" in by_kw:
        rec = by_kw["measure"][0]
        obj = _object(rec.value, rec.path, ("modes",), ("postselect",))
        if not isinstance(obj["modes"], list) or not obj["modes"]:
            raise CircuitSemanticError("expected a non-empty list of modes", rec.path + ".modes")
        modes = tuple(_mode(m, f"{rec.path}.modes[{i}]", mode_count) for i, m in enumerate(obj["modes"]))
        if len(set(modes)) != len(modes):
            raise CircuitSemanticError(f"duplicate measure modes {list(modes)}", rec.path + ".modes")
        pattern = None
        if obj.get("postselect") is not None:
            pattern = _int_list(obj["postselect"], rec.path + ".postselect", len(modes))
        measure = MeasureRecord(modes, pattern)

    desc = CircuitDescription(mode_count, tuple(terms), tuple(elements), measure, normalize)
    state = make_state(mode_count, [(occ, complex(re, im)) for occ, re, im in terms])
    if not normalize and abs(state.norm_squared() - 1.0) > NORM_TOL:
        raise ValidationError(
            f"input norm^2 is {state.norm_squared():.12g}, not 1 within {NORM_TOL:g}; "
            "add 'normalize true' to normalize it"
        )
    if normalize and state.norm_squared() == 0.0:
        raise ValidationError("input state is zero and cannot be normalized")
    return desc


def load_circuit(path) -> CircuitDescription:
    with open(path, encoding="utf-8") as fh:
        return parse_circuit(fh.read())


def initial_state(c: CircuitDescription) -> StateVector:
    state = make_state(c.mode_count, [(occ, complex(re, im)) for occ, re, im in c.input_terms])
    return state.normalized() if c.normalize else state


def run_circuit(c: CircuitDescription) -> StateVector:
    """Final state after applying every element, before measurement."""
    return apply_elements(initial_state(c), c.elements)


def execute(c: CircuitDescription, pattern: Sequence[int] | None = None):
    """Run the circuit and measure it if it has a ``measure`` record.

    Returns the final :class:`StateVector` when there is no measurement, an
    :class:`OutcomeDistribution` when no post-selection pattern applies, or a
    ``(probability, residual)`` pair otherwise. ``pattern`` overrides the file's
    ``postselect``.
    """
    state = run_circuit(c)
    if c.measure is None:
        if pattern is not None:
            raise ValidationError("post-selection requested but the circuit has no 'measure' record")
        return state
    pattern = tuple(pattern) if pattern is not None else c.measure.postselect
    if pattern is None:
        return outcome_distribution(state, c.measure.spec)
    if len(pattern) != len(c.measure.modes):
        raise ValidationError(f"pattern {pattern} does not match the {len(c.measure.modes)} measured modes")
    return postselect(state, c.measure.spec, pattern)
