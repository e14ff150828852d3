# Teleporting superpositions of vacuum and two photons
#
# With a 50:50 ancilla beam splitter the ancilla becomes (|2,0> - |0,2>)/sqrt2,
# the one-photon channel closes, and alpha|0> + gamma|2> is teleported to mode 2
# up to a sign on |2>, removed by a pi/2 phase shift.

import cmath

from fockoptics import teleport_vacuum_two_photon

alpha, gamma = 0.6, 0.8 * cmath.exp(0.9j)
r = teleport_vacuum_two_photon(alpha, gamma)
print("raw (2,0) residual:", [f"{c:.4f}" for c in r.raw_2_0])
for branch in r.branches:
    print(branch.pattern, f"p = {branch.probability:.6f}", [f"{c:.4f}" for c in branch.amplitudes])
print("total success", r.total_success_probability)
