"""Ideal photon-number-resolving measurement on a subset of modes.

Outcome patterns are tuples of photon counts on the measured modes, reported
in lexicographic order. Sampling uses NumPy's ``default_rng`` (PCG64) seeded
with the caller's integer seed and inverts the cumulative distribution over
that ordering, so counts are reproducible for a fixed ``(state, spec, shots, seed)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

import numpy as np

from .errors import StructuralError
from .fock import StateVector

__all__ = [
    "PROBABILITY_FLOOR",
    "MeasurementSpec",
    "Outcome",
    "OutcomeDistribution",
    "outcome_distribution",
    "postselect",
    "sample_outcomes",
]

PROBABILITY_FLOOR = 1e-14

Pattern = tuple[int, ...]


@dataclass(frozen=True)
class MeasurementSpec:
    """Ordered detector modes; pattern entry ``i`` is the count seen on ``modes[i]``."""

    modes: tuple[int, ...]

    def __init__(self, modes: Sequence[int]):
        modes = tuple(modes)
        if not modes:
            raise StructuralError("a measurement needs at least one mode")
        for m in modes:
            if isinstance(m, bool) or not isinstance(m, int) or m < 0:
                raise StructuralError(f"invalid detector mode {m!r}")
        if len(set(modes)) != len(modes):
            raise StructuralError(f"detector modes must be distinct, got {modes}")
        object.__setattr__(self, "modes", modes)

    def validate(self, mode_count: int) -> None:
        bad = [m for m in self.modes if m >= mode_count]
        if bad:
            raise StructuralError(f"detector modes {bad} out of range for a {mode_count}-mode state")

    def unmeasured(self, mode_count: int) -> tuple[int, ...]:
        measured = set(self.modes)
        return tuple(m for m in range(mode_count) if m not in measured)


@dataclass(frozen=True)
class Outcome:
    probability: float
    residual: StateVector


class OutcomeDistribution(Mapping):
    """Read-only map from pattern to :class:`Outcome`, iterated in lexicographic order."""

    def __init__(self, spec: MeasurementSpec, entries: dict[Pattern, Outcome]):
        self.spec = spec
        self._entries = dict(sorted(entries.items()))

    def __getitem__(self, pattern) -> Outcome:
        return self._entries[tuple(pattern)]

    def __iter__(self) -> Iterator[Pattern]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    @property
    def entries(self) -> Mapping[Pattern, Outcome]:
        return self._entries

    def probabilities(self) -> dict[Pattern, float]:
        return {k: v.probability for k, v in self._entries.items()}

    def total_probability(self) -> float:
        return math.fsum(v.probability for v in self._entries.values())


def _split(s: StateVector, spec: MeasurementSpec) -> tuple[tuple[int, ...], dict]:
    spec.validate(s.mode_count)
    rest = spec.unmeasured(s.mode_count)
    groups: dict[Pattern, dict] = {}
    for key, amp in s.items():
        pattern = tuple(key[m] for m in spec.modes)
        groups.setdefault(pattern, {})[tuple(key[m] for m in rest)] = amp
    return rest, groups


def _outcome(rest: tuple[int, ...], amps: dict) -> Outcome | None:
    p = math.fsum(v.real * v.real + v.imag * v.imag for v in amps.values())
    if p < PROBABILITY_FLOOR:
        return None
    scale = 1.0 / math.sqrt(p)
    return Outcome(p, StateVector._trusted(len(rest), {k: v * scale for k, v in amps.items()}))


def outcome_distribution(s: StateVector, spec: MeasurementSpec) -> OutcomeDistribution:
    """Exact distribution of detector patterns with the conditional state of the other modes.

    Patterns below :data:`PROBABILITY_FLOOR` are omitted. Residuals are renormalized.
    """
    rest, groups = _split(s, spec)
    entries = {}
    for pattern, amps in groups.items():
        outcome = _outcome(rest, amps)
        if outcome is not None:
            entries[pattern] = outcome
    return OutcomeDistribution(spec, entries)


def postselect(s: StateVector, spec: MeasurementSpec, pattern: Sequence[int]) -> tuple[float, StateVector]:
    """Probability of ``pattern`` and the renormalized residual state.

    A pattern without support gives ``(0.0, <empty state>)`` rather than an error.
    """
    pattern = tuple(pattern)
    if len(pattern) != len(spec.modes):
        raise StructuralError(f"pattern {pattern} has {len(pattern)} entries, spec measures {len(spec.modes)} modes")
    if any(isinstance(n, bool) or not isinstance(n, int) or n < 0 for n in pattern):
        raise StructuralError(f"pattern {pattern} must contain non-negative integers")
    spec.validate(s.mode_count)
    rest = spec.unmeasured(s.mode_count)
    amps = {}
    for key, amp in s.items():
        if all(key[m] == n for m, n in zip(spec.modes, pattern)):
            amps[tuple(key[m] for m in rest)] = amp
    outcome = _outcome(rest, amps)
    if outcome is None:
        return 0.0, StateVector(len(rest))
    return outcome.probability, outcome.residual


def sample_outcomes(s: StateVector, spec: MeasurementSpec, shots: int, seed: int) -> dict[Pattern, int]:
    """Draw ``shots`` detector patterns; returns counts for every pattern in the distribution."""
    if isinstance(shots, bool) or not isinstance(shots, int) or shots < 1:
        raise StructuralError(f"shots must be a positive integer, got {shots!r}")
    dist = outcome_distribution(s, spec)
    patterns = list(dist)
    if not patterns:
        raise StructuralError("cannot sample from the zero state")
    cdf = np.cumsum([dist[p].probability for p in patterns])
    cdf /= cdf[-1]
    rng = np.random.default_rng(seed)
    idx = np.searchsorted(cdf, rng.random(shots), side="right")
    counts = np.bincount(np.minimum(idx, len(patterns) - 1), minlength=len(patterns))
    return {p: int(c) for p, c in zip(patterns, counts)}
