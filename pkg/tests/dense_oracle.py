"""Dense truncated-Fock-space reference simulator used only by the tests.

Builds ladder operators on a product space with a per-mode cutoff and applies
beam splitters as full matrix exponentials. It shares no code with the package.
Truncation is exact as long as the total photon number stays below ``cutoff``.
"""

import itertools

import numpy as np
from scipy.linalg import expm


class DenseSim:
    def __init__(self, modes, cutoff):
        self.modes = modes
        self.cutoff = cutoff
        self.dim = cutoff**modes
        a = np.diag(np.sqrt(np.arange(1, cutoff)), k=1)
        eye = np.eye(cutoff)
        self.a = []
        for m in range(modes):
            ops = [a if i == m else eye for i in range(modes)]
            full = ops[0]
            for op in ops[1:]:
                full = np.kron(full, op)
            self.a.append(full)

    def index(self, occ):
        i = 0
        for n in occ:
            i = i * self.cutoff + n
        return i

    def labels(self):
        return itertools.product(range(self.cutoff), repeat=self.modes)

    def vector(self, terms):
        v = np.zeros(self.dim, dtype=complex)
        for occ, amp in terms:
            v[self.index(occ)] += amp
        return v

    def beam_splitter(self, i, j, theta):
        # exp(theta (a_i^dag a_j - a_i a_j^dag)) maps a_i^dag -> cos a_i^dag - sin a_j^dag
        ai, aj = self.a[i], self.a[j]
        gen = ai.conj().T @ aj - ai @ aj.conj().T
        return expm(theta * gen)

    def phase(self, i, phi):
        n = self.a[i].conj().T @ self.a[i]
        return expm(1j * phi * n)

    def as_dict(self, v, tol=1e-13):
        return {occ: v[self.index(occ)] for occ in self.labels() if abs(v[self.index(occ)]) > tol}
