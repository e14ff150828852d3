# The teleportation-based nonlinear sign gate
#
# Input qutrit on mode 0, a |1,1> ancilla on modes 1 and 2 mixed at the canonical
# angle (sin 2theta = 2/sqrt5), a 50:50 beam splitter on modes 0 and 1, then
# detectors on modes 0 and 1. Two detector patterns herald success.

import math

from fockoptics import CANONICAL_THETA, InputQutrit, build_ancilla, nls_gate

print("theta =", CANONICAL_THETA, " sin(2 theta) =", math.sin(2 * CANONICAL_THETA))
print("ancilla:", build_ancilla(CANONICAL_THETA))

q = InputQutrit.normalized_from(0.5, 0.5j, -0.7)
report = nls_gate(q)
print("input   ", [f"{c:.4f}" for c in q.amplitudes])
for branch in report.branches:
    corr = "none" if branch.correction is None else f"phase shift {branch.correction.phi:.4f}"
    print(branch.pattern, f"p = {branch.probability:.12f}", corr, [f"{c:.4f}" for c in branch.amplitudes])
print("total success", report.total_success_probability, " failure", report.failure_probability)

# The success probability does not depend on the input.
for amps in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
    print(amps, nls_gate(InputQutrit(*amps)).total_success_probability)

# Away from the canonical angle the branches are no longer the sign gate.
print(nls_gate(q, theta=0.4).branch_2_0.amplitudes)
