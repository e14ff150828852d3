# Estimating the gate's success rate by sampling detector clicks
#
# The bundled nls.circuit file describes the same circuit as demo 02 with the
# input (|0> + |1> + |2>)/sqrt3.

from importlib import resources

from fockoptics import outcome_distribution, sample_outcomes
from fockoptics.circuit_io import load_circuit, run_circuit

path = resources.files("fockoptics") / "data" / "nls.circuit"
circuit = load_circuit(path)
state = run_circuit(circuit)
spec = circuit.measure.spec

dist = outcome_distribution(state, spec)
for pattern, outcome in dist.items():
    print(pattern, f"{outcome.probability:.6f}")

for shots in (1_000, 100_000, 1_000_000):
    counts = sample_outcomes(state, spec, shots, seed=42)
    hits = counts[(2, 0)] + counts[(0, 2)]
    print(f"{shots:>9} shots: herald frequency {hits / shots:.5f}")

# Same as: fockoptics sample nls.circuit --shots 1000000 --seed 42
