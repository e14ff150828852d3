# Sparse Fock states and the beam-splitter convention
#
# States are dictionaries from occupation tuples to complex amplitudes.
# Run: python demos/01_fock_states_and_beam_splitters.py

import math

from fockoptics import (
    BeamSplitter,
    PhaseShifter,
    apply_beam_splitter,
    apply_phase_shifter,
    make_state,
    oracle_apply_beam_splitter,
    tensor,
)

# One photon in each of two modes.
pair = make_state(2, [([1, 1], 1.0)])
print(pair)

# A beam splitter with reflectance sin(theta). Both photons bunch except for the
# cos(2 theta) component, and the |0,2> term picks up a minus sign.
theta = 0.3
out = apply_beam_splitter(pair, BeamSplitter(0, 1, theta))
for ket, amp in out.sorted_items():
    print(ket, f"{amp.real:+.6f}")
print("sin(2t)/sqrt2 =", math.sin(2 * theta) / math.sqrt(2), " cos(2t) =", math.cos(2 * theta))

# At theta = pi/4 the |1,1> term vanishes (two-photon interference).
print(apply_beam_splitter(pair, BeamSplitter(0, 1, math.pi / 4)))

# The generator-exponential reference agrees to rounding error.
ref = oracle_apply_beam_splitter(pair, BeamSplitter(0, 1, theta))
print("max deviation vs oracle:", max(abs(out.amplitude(k) - ref.amplitude(k)) for k in out))

# Tensor products append modes; a pi phase shift flips odd photon numbers.
three = tensor(make_state(1, [([0], 0.6), ([1], 0.8)]), pair)
print(apply_phase_shifter(three, PhaseShifter(0, math.pi)))
