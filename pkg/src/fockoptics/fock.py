"""Sparse Fock-basis state vectors.

A state over ``m`` modes is stored as a map from occupation tuples to complex
amplitudes. Mode indices are 0-based. Amplitudes whose magnitude falls below
:data:`PRUNE_THRESHOLD` are dropped whenever a state is built, which keeps
floating-point cancellation residue out of the support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import StructuralError, ValidationError

PRUNE_THRESHOLD = 1e-15
NORMALIZED_TOL = 1e-12

__all__ = [
    "PRUNE_THRESHOLD",
    "FockBasisState",
    "StateVector",
    "InputQutrit",
    "make_state",
    "vacuum",
    "tensor",
    "norm_squared",
    "equal_up_to_global_phase",
]


class FockBasisState(tuple):
    """Occupation-number label of a basis ket, e.g. ``FockBasisState((2, 0))`` is |2,0>.

    Hashes and compares like the plain tuple, so plain tuples can be used for lookups.
    """

    def __new__(cls, occupations: Iterable[int]):
        occ = tuple(occupations)
        for n in occ:
            if isinstance(n, bool) or not isinstance(n, int):
                raise StructuralError(f"occupation {n!r} is not an integer")
            if n < 0:
                raise StructuralError(f"negative occupation {n} in {occ}")
        return super().__new__(cls, occ)

    @property
    def occupations(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def mode_count(self) -> int:
        return len(self)

    def total_photons(self) -> int:
        return sum(self)

    def __repr__(self):
        return "|" + ",".join(map(str, self)) + ">"


class StateVector:
    """Sparse complex-amplitude map over Fock basis states with a fixed mode count.

    Instances are treated as immutable; every operation returns a new state.
    A ``mode_count`` of zero is allowed and represents a scalar (the residual left
    after measuring every mode); its only possible key is the empty tuple.
    """

    __slots__ = ("_mode_count", "_amps")

    def __init__(self, mode_count: int, amplitudes: Mapping[Sequence[int], complex] | None = None):
        if isinstance(mode_count, bool) or not isinstance(mode_count, int) or mode_count < 0:
            raise StructuralError(f"mode_count must be a non-negative integer, got {mode_count!r}")
        amps: dict[FockBasisState, complex] = {}
        for occ, amp in (amplitudes or {}).items():
            key = FockBasisState(occ)
            if len(key) != mode_count:
                raise StructuralError(
                    f"basis label {tuple(key)} has {len(key)} modes, expected {mode_count}"
                )
            amps[key] = amps.get(key, 0j) + complex(amp)
        self._mode_count = mode_count
        self._amps = _prune(amps)

    @classmethod
    def _trusted(cls, mode_count: int, amps: dict) -> "StateVector":
        # Skips label validation; callers guarantee keys are well-formed tuples.
        obj = cls.__new__(cls)
        obj._mode_count = mode_count
        obj._amps = {
            k if type(k) is FockBasisState else tuple.__new__(FockBasisState, k): v
            for k, v in amps.items()
            if abs(v) >= PRUNE_THRESHOLD
        }
        return obj

    @property
    def mode_count(self) -> int:
        return self._mode_count

    @property
    def amplitudes(self) -> Mapping[FockBasisState, complex]:
        return MappingProxyType(self._amps)

    def amplitude(self, occupations: Sequence[int]) -> complex:
        return self._amps.get(tuple(occupations), 0j)

    def items(self):
        return self._amps.items()

    def keys(self):
        return self._amps.keys()

    def __iter__(self) -> Iterator[FockBasisState]:
        return iter(self._amps)

    def __len__(self) -> int:
        return len(self._amps)

    def __contains__(self, occupations) -> bool:
        return tuple(occupations) in self._amps

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return self._mode_count == other._mode_count and self._amps == other._amps

    __hash__ = None

    def __repr__(self):
        terms = " + ".join(f"({v:.6g}){k!r}" for k, v in self.sorted_items())
        return f"StateVector(modes={self._mode_count}, {terms or '0'})"

    def sorted_items(self) -> list[tuple[FockBasisState, complex]]:
        """Terms in lexicographic order of their occupation tuples."""
        return sorted(self._amps.items())

    def norm_squared(self) -> float:
        return math.fsum(v.real * v.real + v.imag * v.imag for v in self._amps.values())

    def is_normalized(self, tol: float = NORMALIZED_TOL) -> bool:
        return abs(self.norm_squared() - 1.0) <= tol

    def scaled(self, factor: complex) -> "StateVector":
        return StateVector._trusted(self._mode_count, {k: v * factor for k, v in self._amps.items()})

    def normalized(self) -> "StateVector":
        n2 = self.norm_squared()
        if n2 == 0.0:
            raise ValidationError("cannot normalize the zero state")
        return self.scaled(1.0 / math.sqrt(n2))

    def photon_numbers(self) -> set[int]:
        return {k.total_photons() for k in self._amps}


def _prune(amps: dict) -> dict:
    return {k: v for k, v in amps.items() if abs(v) >= PRUNE_THRESHOLD}


def make_state(mode_count: int, terms: Iterable[tuple[Sequence[int], complex]]) -> StateVector:
    """Build a state from ``(occupations, amplitude)`` pairs; repeated labels are summed.

    >>> make_state(2, [([1, 1], 1.0)]).amplitude((1, 1))
    (1+0j)
    """
    if isinstance(mode_count, bool) or not isinstance(mode_count, int) or mode_count < 1:
        raise StructuralError(f"mode_count must be a positive integer, got {mode_count!r}")
    amps: dict[FockBasisState, complex] = {}
    for occ, amp in terms:
        key = FockBasisState(occ)
        if len(key) != mode_count:
            raise StructuralError(f"basis label {tuple(key)} has {len(key)} modes, expected {mode_count}")
        amps[key] = amps.get(key, 0j) + complex(amp)
    return StateVector._trusted(mode_count, amps)


def vacuum(mode_count: int) -> StateVector:
    return StateVector._trusted(mode_count, {(0,) * mode_count: 1 + 0j})


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Tensor product; the modes of ``b`` are appended after those of ``a``."""
    amps = {ka + kb: va * vb for ka, va in a.items() for kb, vb in b.items()}
    return StateVector._trusted(a.mode_count + b.mode_count, amps)


def norm_squared(s: StateVector) -> float:
    return s.norm_squared()


def _alignment_phase(a: StateVector, b: StateVector) -> complex | None:
    if not len(b):
        return None
    # Largest |b|, ties broken by the lexicographically smallest label.
    k_star = min(b.keys(), key=lambda k: (-abs(b.amplitude(k)), k))
    ratio = a.amplitude(k_star) / b.amplitude(k_star)
    if ratio == 0:
        return None
    return ratio / abs(ratio)


def equal_up_to_global_phase(a: StateVector, b: StateVector, tol: float = 1e-10) -> bool:
    """Whether ``a ≈ λ·b`` for a unit complex ``λ``, to ``tol`` per amplitude.

    ``λ`` is fixed by the ket carrying the largest ``|b|`` amplitude rather than
    optimized, so the test is deterministic.
    """
    if a.mode_count != b.mode_count:
        raise StructuralError(f"mode_count mismatch: {a.mode_count} vs {b.mode_count}")
    if not len(a) and not len(b):
        return True
    lam = _alignment_phase(a, b)
    if lam is None:
        return False
    keys = set(a.keys()) | set(b.keys())
    return max(abs(a.amplitude(k) - lam * b.amplitude(k)) for k in keys) <= tol


@dataclass(frozen=True)
class InputQutrit:
    """Amplitudes of the 0-, 1- and 2-photon components of a single mode."""

    alpha: complex
    beta: complex
    gamma: complex

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def normalized_from(cls, alpha: complex, beta: complex, gamma: complex) -> "InputQutrit":
        n = math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2 + abs(gamma) ** 2)
        if n == 0:
            raise ValidationError("qutrit amplitudes are all zero")
        return cls(alpha / n, beta / n, gamma / n)

    @classmethod
    def from_state(cls, s: StateVector) -> "InputQutrit":
        if s.mode_count != 1:
            raise StructuralError(f"a qutrit lives on one mode, state has {s.mode_count}")
        if any(k[0] > 2 for k in s.keys()):
            raise StructuralError("state has components with more than two photons")
        return cls(s.amplitude((0,)), s.amplitude((1,)), s.amplitude((2,)))

    @property
    def amplitudes(self) -> tuple[complex, complex, complex]:
        return (self.alpha, self.beta, self.gamma)

    def norm_squared(self) -> float:
        return math.fsum(abs(c) ** 2 for c in self.amplitudes)

    def validate(self, tol: float = 1e-9) -> None:
        deficit = 1.0 - self.norm_squared()
        if abs(deficit) > tol:
            raise ValidationError(
                f"qutrit is not normalized: |alpha|^2+|beta|^2+|gamma|^2 = {self.norm_squared():.12g} "
                f"(deficit {deficit:+.3g}, tolerance {tol:g})"
            )

    def to_state(self) -> StateVector:
        return make_state(1, [((n,), c) for n, c in enumerate(self.amplitudes)])
