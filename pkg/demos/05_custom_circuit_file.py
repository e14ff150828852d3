# Writing, parsing and running a circuit file
#
# A Hong-Ou-Mandel dip: two photons on a 50:50 beam splitter never exit on
# different ports.

from fockoptics import parse_circuit, serialize_circuit
from fockoptics.circuit_io import execute

text = """
modes 2
input [[1, 1], 1, 0]
bs {"modes": [0, 1], "theta": 0.78539816339744828}
measure {"modes": [0, 1]}
"""
circuit = parse_circuit(text)
print(serialize_circuit(circuit))
for pattern, outcome in execute(circuit).items():
    print(pattern, f"{outcome.probability:.6f}")

# post-selecting a pattern with no support gives probability 0
print(execute(circuit, (1, 1)))
