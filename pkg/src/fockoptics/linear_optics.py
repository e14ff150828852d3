"""Beam splitters and phase shifters acting on sparse Fock states.

Beam-splitter convention, for the ordered mode pair ``(A, B)`` and angle ``theta``::

    a_A^dag -> cos(theta) a_A^dag - sin(theta) a_B^dag
    a_B^dag -> sin(theta) a_A^dag + cos(theta) a_B^dag

so that ``|1,1>`` becomes ``(sin 2θ/√2)(|2,0> - |0,2>) + cos 2θ |1,1>``. On the
one-photon amplitude pair ``(c_10, c_01)`` this is the rotation
``[[cos θ, sin θ], [-sin θ, cos θ]]``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

import numpy as np
from scipy.linalg import expm

from .errors import CapacityError, StructuralError
from .fock import StateVector

__all__ = [
    "BeamSplitter",
    "PhaseShifter",
    "OpticalElement",
    "apply_beam_splitter",
    "apply_phase_shifter",
    "apply_element",
    "apply_elements",
    "oracle_apply_beam_splitter",
    "DEFAULT_SECTOR_CAP",
]

DEFAULT_SECTOR_CAP = 8


def _check_mode(mode, mode_count, what="mode"):
    if isinstance(mode, bool) or not isinstance(mode, int):
        raise StructuralError(f"{what} {mode!r} is not an integer")
    if not 0 <= mode < mode_count:
        raise StructuralError(f"{what} {mode} out of range for a {mode_count}-mode state")


@dataclass(frozen=True)
class BeamSplitter:
    mode_a: int
    mode_b: int
    theta: float

    def __post_init__(self):
        if self.mode_a == self.mode_b:
            raise StructuralError(f"beam splitter needs two distinct modes, got {self.mode_a} twice")
        if self.mode_a < 0 or self.mode_b < 0:
            raise StructuralError("mode indices must be non-negative")
        object.__setattr__(self, "theta", float(self.theta))

    @property
    def modes(self) -> tuple[int, int]:
        return (self.mode_a, self.mode_b)

    def reflectance(self) -> float:
        return math.sin(self.theta)

    def transmittance(self) -> float:
        return math.cos(self.theta)

    def inverse(self) -> "BeamSplitter":
        return BeamSplitter(self.mode_a, self.mode_b, -self.theta)


@dataclass(frozen=True)
class PhaseShifter:
    """Multiplies the n-photon component of ``mode`` by ``exp(i·phi·n)``."""

    mode: int
    phi: float

    def __post_init__(self):
        if self.mode < 0:
            raise StructuralError("mode index must be non-negative")
        object.__setattr__(self, "phi", float(self.phi))


OpticalElement = Union[BeamSplitter, PhaseShifter]


@lru_cache(maxsize=None)
def _expansion(m: int, n: int) -> tuple:
    """Integer skeleton of the expansion of ``|m, n>`` on the addressed pair.

    Each entry is ``(p, q, coeff, cos_power, sin_power)`` and contributes
    ``coeff * cos^cos_power * sin^sin_power`` to ``|p, q>``.
    """
    fm, fn = math.factorial(m), math.factorial(n)
    acc: dict[tuple[int, int, int, int], int] = {}
    for j in range(m + 1):
        for k in range(n + 1):
            p, q = m - j + n - k, j + k
            key = (p, q, m - j + k, j + n - k)
            acc[key] = acc.get(key, 0) + (-1) ** j * math.comb(m, j) * math.comb(n, k)
    out = []
    for (p, q, cpow, spow), c in acc.items():
        if c == 0:
            continue
        ratio = math.sqrt(math.factorial(p) * math.factorial(q) / (fm * fn))
        out.append((p, q, c * ratio, cpow, spow))
    return tuple(out)


def apply_beam_splitter(s: StateVector, bs: BeamSplitter) -> StateVector:
    """Apply ``bs`` to ``s`` by expanding the substituted creation operators."""
    _check_mode(bs.mode_a, s.mode_count, "mode_a")
    _check_mode(bs.mode_b, s.mode_count, "mode_b")
    a, b = bs.mode_a, bs.mode_b
    c, sn = math.cos(bs.theta), math.sin(bs.theta)
    out: dict[tuple, complex] = {}
    for key, amp in s.items():
        occ = list(key)
        for p, q, coeff, cpow, spow in _expansion(key[a], key[b]):
            occ[a], occ[b] = p, q
            t = tuple(occ)
            out[t] = out.get(t, 0j) + amp * (coeff * c**cpow * sn**spow)
    return StateVector._trusted(s.mode_count, out)


def _unit_phase(phi: float, n: int) -> complex:
    quarter = phi / (math.pi / 2)
    k = round(quarter)
    # Multiples of π/2 act exactly, so a π shift is an exact sign flip.
    if abs(quarter - k) <= 1e-15 * max(1.0, abs(quarter)):
        return (1, 1j, -1, -1j)[(k * n) % 4] * (1 + 0j)
    return cmath.exp(1j * phi * n)


def apply_phase_shifter(s: StateVector, ps: PhaseShifter) -> StateVector:
    _check_mode(ps.mode, s.mode_count)
    phases: dict[int, complex] = {}
    out = {}
    for key, amp in s.items():
        n = key[ps.mode]
        if n not in phases:
            phases[n] = _unit_phase(ps.phi, n)
        out[key] = amp * phases[n]
    return StateVector._trusted(s.mode_count, out)


def apply_element(s: StateVector, element: OpticalElement) -> StateVector:
    if isinstance(element, BeamSplitter):
        return apply_beam_splitter(s, element)
    if isinstance(element, PhaseShifter):
        return apply_phase_shifter(s, element)
    raise StructuralError(f"unknown optical element {element!r}")


def apply_elements(s: StateVector, elements: Iterable[OpticalElement]) -> StateVector:
    for element in elements:
        s = apply_element(s, element)
    return s


# --- independent oracle -------------------------------------------------------


def _generator(n: int, sign: int) -> np.ndarray:
    # sign * (a_A^dag a_B - a_A a_B^dag) on the sector basis |k, n-k>, k = 0..n.
    g = np.zeros((n + 1, n + 1))
    for k in range(n):
        # a_A^dag a_B |k, n-k> = sqrt((k+1)(n-k)) |k+1, n-k-1>
        w = math.sqrt((k + 1) * (n - k))
        g[k + 1, k] += sign * w
        g[k, k + 1] -= sign * w
    return g


@lru_cache(maxsize=1)
def _oracle_sign() -> int:
    """Pick the generator sign whose one-photon action is [[cos, sin], [-sin, cos]]."""
    theta = 0.3
    want = np.array([[math.cos(theta), math.sin(theta)], [-math.sin(theta), math.cos(theta)]])
    for sign in (1, -1):
        u = expm(theta * _generator(1, sign))
        # Sector basis is (|0,1>, |1,0>); reorder to the amplitude pair (c_10, c_01).
        u = u[::-1, ::-1]
        if np.allclose(u, want, atol=1e-14):
            return sign
    raise AssertionError("no generator sign reproduces the beam-splitter convention")


def oracle_apply_beam_splitter(
    s: StateVector, bs: BeamSplitter, sector_cap: int = DEFAULT_SECTOR_CAP
) -> StateVector:
    """Reference beam splitter built from per-sector matrix exponentials of the generator."""
    _check_mode(bs.mode_a, s.mode_count, "mode_a")
    _check_mode(bs.mode_b, s.mode_count, "mode_b")
    a, b = bs.mode_a, bs.mode_b
    sign = _oracle_sign()
    unitaries: dict[int, np.ndarray] = {}
    out: dict[tuple, complex] = {}
    for key, amp in s.items():
        total = sum(key)
        if total > sector_cap:
            raise CapacityError(f"ket {tuple(key)} has {total} photons, sector cap is {sector_cap}")
        n = key[a] + key[b]
        if n not in unitaries:
            unitaries[n] = expm(bs.theta * _generator(n, sign))
        col = unitaries[n][:, key[a]]
        occ = list(key)
        for k in range(n + 1):
            if col[k] == 0:
                continue
            occ[a], occ[b] = k, n - k
            t = tuple(occ)
            out[t] = out.get(t, 0j) + amp * col[k]
    return StateVector._trusted(s.mode_count, out)
