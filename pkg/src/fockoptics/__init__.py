"""Exact Fock-state simulation of linear-optical circuits with number-resolving detection."""

from .errors import (
    CapacityError,
    CircuitSemanticError,
    CircuitSyntaxError,
    FockOpticsError,
    StructuralError,
    ValidationError,
)
from .fock import (
    FockBasisState,
    InputQutrit,
    StateVector,
    equal_up_to_global_phase,
    make_state,
    norm_squared,
    tensor,
    vacuum,
)
from .linear_optics import (
    BeamSplitter,
    PhaseShifter,
    apply_beam_splitter,
    apply_element,
    apply_elements,
    apply_phase_shifter,
    oracle_apply_beam_splitter,
)
from .measurement import (
    MeasurementSpec,
    Outcome,
    OutcomeDistribution,
    outcome_distribution,
    postselect,
    sample_outcomes,
)
from .nls import (
    CANONICAL_THETA,
    NlsReport,
    build_ancilla,
    nls_branch_state,
    nls_gate,
    teleport_vacuum_two_photon,
)
from .circuit_io import CircuitDescription, MeasureRecord, load_circuit, parse_circuit, serialize_circuit

__version__ = "0.1.0"
