"""
Self-concatenation of the pentagon and Steane codes
===================================================

Concatenating [[5,1,3]] with itself gives a 25-qubit graph code whose
adjacency has the block form P (x) I + J (x) P, and distance 9.  The Steane
code concatenated with itself gives 49 qubits; its coset space is far too
large to scan, so the distance is bracketed instead.
"""

import numpy as np

from graphconcat import concat, distance, recipes

# [[25,1,9]]
pentagon = recipes.pentagon_code()
result = recipes.pentagon_self_concatenation()
code = result.code
print("n, K:", code.n, code.K)

# the closed form is written inner-major; the GLC pass produces copy-major order
closed = concat.concat_theorem1(pentagon.graph, [1, 1, 1, 1], pentagon.graph)
perm = concat.shuffle_permutation(5, 5)
print("GLC pass equals the closed form:", closed.permuted(np.argsort(perm)) == code.graph)
concat.check_concatenation_structure(code.graph, pentagon.graph, [1] * 5, pentagon.graph)

report = distance.stabilizer_distance_coset(code.matrices())
print(report, f"({report.examined:,} coset elements in {report.elapsed:.1f} s)")
print("witness:", distance.witness_to_label(report.witness))

# [[49,1,9]]
steane = recipes.steane_cube_code()
code = recipes.steane_self_concatenation().code
mats = code.matrices()
print("n, K:", code.n, code.K)
print("coset space size:", distance.coset_space_size(mats))

lower = distance.undetectable_weight_search(mats, 4)
print(lower, f"({lower.examined:,} Paulis of weight <= 4 in {lower.elapsed:.1f} s)")
upper = distance.logical_weight_upper_bound(steane.matrices(), steane.matrices(), mats)
print(upper, "witness:", distance.witness_to_label(upper.witness))
