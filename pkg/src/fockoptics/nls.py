"""Teleportation-based nonlinear sign gate built from two beam splitters.

Mode layout (0-based): mode 0 carries the input qutrit, modes 1 and 2 carry the
``|1,1>`` ancilla. The ancilla beam splitter acts on ``(1, 2)``, the symmetric
beam splitter on ``(0, 1)``, detectors read modes ``(0, 1)`` and the output
emerges on mode 2. The herald ``(2, 0)`` leaves the target state directly; the
herald ``(0, 2)`` needs a π phase shift on mode 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import StructuralError
from .fock import InputQutrit, StateVector, make_state, tensor
from .linear_optics import (
    BeamSplitter,
    PhaseShifter,
    apply_beam_splitter,
    apply_phase_shifter,
    oracle_apply_beam_splitter,
)
from .measurement import MeasurementSpec, outcome_distribution

__all__ = [
    "CANONICAL_THETA",
    "HERALD_PATTERNS",
    "BranchState",
    "BranchReport",
    "NlsReport",
    "TeleportReport",
    "build_ancilla",
    "nls_circuit_elements",
    "nls_gate",
    "nls_branch_state",
    "teleport_vacuum_two_photon",
]

#: Ancilla angle with sin(2θ) = 2/√5, taken in (0, π/4) so that cos(2θ) = +1/√5.
CANONICAL_THETA = 0.5 * math.asin(2 / math.sqrt(5))

HERALD_PATTERNS = ((2, 0), (0, 2))
DETECTORS = MeasurementSpec((0, 1))
OUTPUT_MODE = 2
NLS_CORRECTION = PhaseShifter(OUTPUT_MODE, math.pi)
TELEPORT_CORRECTION = PhaseShifter(OUTPUT_MODE, math.pi / 2)


@dataclass(frozen=True)
class BranchState:
    """Post-selected output of one herald pattern, before any correction.

    ``raw`` holds the unnormalized projected amplitudes of ``|0>, |1>, |2>`` on the
    output mode; ``amplitudes`` the renormalized ones.
    """

    pattern: tuple[int, int]
    probability: float
    raw: tuple[complex, complex, complex]
    amplitudes: tuple[complex, complex, complex]


@dataclass(frozen=True)
class BranchReport:
    pattern: tuple[int, int]
    probability: float
    amplitudes: tuple[complex, complex, complex]
    correction: PhaseShifter | None

    @property
    def qutrit(self) -> InputQutrit:
        return InputQutrit(*self.amplitudes)


@dataclass(frozen=True)
class NlsReport:
    theta: float
    input: InputQutrit
    branch_2_0: BranchReport
    branch_0_2: BranchReport
    total_success_probability: float
    failure_probability: float

    @property
    def branches(self) -> tuple[BranchReport, BranchReport]:
        return (self.branch_2_0, self.branch_0_2)


@dataclass(frozen=True)
class TeleportReport:
    alpha: complex
    gamma: complex
    branch_2_0: BranchReport
    branch_0_2: BranchReport
    raw_2_0: tuple[complex, complex, complex]
    raw_0_2: tuple[complex, complex, complex]
    total_success_probability: float
    failure_probability: float

    @property
    def branches(self) -> tuple[BranchReport, BranchReport]:
        return (self.branch_2_0, self.branch_0_2)


def _bs(use_oracle: bool):
    return oracle_apply_beam_splitter if use_oracle else apply_beam_splitter


def build_ancilla(theta: float, *, use_oracle: bool = False) -> StateVector:
    """``|1,1>`` sent through a beam splitter of angle ``theta``: a two-mode state."""
    return _bs(use_oracle)(make_state(2, [((1, 1), 1.0)]), BeamSplitter(0, 1, theta))


def nls_circuit_elements(theta: float = CANONICAL_THETA) -> list[BeamSplitter]:
    return [BeamSplitter(1, 2, theta), BeamSplitter(0, 1, math.pi / 4)]


def _output_state(qutrit: InputQutrit, theta: float, use_oracle: bool) -> StateVector:
    qutrit.validate()
    apply = _bs(use_oracle)
    state = tensor(qutrit.to_state(), build_ancilla(theta, use_oracle=use_oracle))
    return apply(state, BeamSplitter(0, 1, math.pi / 4))


def _qutrit_amplitudes(s: StateVector) -> tuple[complex, complex, complex]:
    return tuple(s.amplitude((n,)) for n in range(3))


def _branch(out: StateVector, pattern) -> BranchState:
    raw = tuple(out.amplitude(tuple(pattern) + (n,)) for n in range(3))
    dist = outcome_distribution(out, DETECTORS)
    if pattern in dist:
        outcome = dist[pattern]
        return BranchState(pattern, outcome.probability, raw, _qutrit_amplitudes(outcome.residual))
    return BranchState(pattern, 0.0, raw, (0j, 0j, 0j))


def nls_branch_state(
    qutrit: InputQutrit, theta: float, pattern, *, use_oracle: bool = False
) -> BranchState:
    pattern = tuple(pattern)
    if pattern not in HERALD_PATTERNS:
        raise StructuralError(f"{pattern} is not a herald pattern; expected one of {HERALD_PATTERNS}")
    return _branch(_output_state(qutrit, theta, use_oracle), pattern)


def _corrected(branch: BranchState, correction: PhaseShifter | None) -> BranchReport:
    amps = branch.amplitudes
    if correction is not None and branch.probability > 0:
        residual = make_state(1, [((n,), c) for n, c in enumerate(amps)])
        amps = _qutrit_amplitudes(apply_phase_shifter(residual, PhaseShifter(0, correction.phi)))
    return BranchReport(branch.pattern, branch.probability, amps, correction)


def _failure(out: StateVector) -> float:
    dist = outcome_distribution(out, DETECTORS)
    return math.fsum(o.probability for p, o in dist.items() if p not in HERALD_PATTERNS)


def nls_gate(qutrit: InputQutrit, theta: float = CANONICAL_THETA, *, use_oracle: bool = False) -> NlsReport:
    """Run the heralded gate on ``qutrit`` and report both herald branches.

    At the canonical angle each branch fires with probability 1/10 whatever the
    input, and both corrected outputs equal ``(alpha, beta, -gamma)``.
    """
    out = _output_state(qutrit, theta, use_oracle)
    b20 = _corrected(_branch(out, (2, 0)), None)
    b02 = _corrected(_branch(out, (0, 2)), NLS_CORRECTION)
    return NlsReport(
        theta=theta,
        input=qutrit,
        branch_2_0=b20,
        branch_0_2=b02,
        total_success_probability=b20.probability + b02.probability,
        failure_probability=_failure(out),
    )


def teleport_vacuum_two_photon(alpha: complex, gamma: complex, *, use_oracle: bool = False) -> TeleportReport:
    """Teleport ``alpha|0> + gamma|2>`` through the circuit with a symmetric ancilla beam splitter.

    Both heralds leave ``alpha|0> - gamma|2>``, which a π/2 phase shift on the
    output mode turns back into the input.
    """
    qutrit = InputQutrit(alpha, 0, gamma)
    out = _output_state(qutrit, math.pi / 4, use_oracle)
    raw20, raw02 = _branch(out, (2, 0)), _branch(out, (0, 2))
    b20 = _corrected(raw20, TELEPORT_CORRECTION)
    b02 = _corrected(raw02, TELEPORT_CORRECTION)
    return TeleportReport(
        alpha=qutrit.alpha,
        gamma=qutrit.gamma,
        branch_2_0=b20,
        branch_0_2=b02,
        raw_2_0=raw20.amplitudes,
        raw_0_2=raw02.amplitudes,
        total_success_probability=b20.probability + b02.probability,
        failure_probability=_failure(out),
    )
