"""
Concatenating a two-qubit code into the triangle code
=====================================================

The smallest example: the [[3,1,1]] triangle code as the outer code and a
[[2,1,1]] code on a single edge as the inner code.  We build the encoding
graph, eliminate the auxiliary vertices with generalized local
complementations, and check the result against a direct simulation of the
encoding circuit.
"""

import numpy as np

from graphconcat import codes, concat, graph, recipes, simulator
from graphconcat.oracle import concat_encoder_distance

# the outer code: triangle graph, classical code {000, 111}
outer = recipes.triangle_code()
print("outer:", outer.graph.edges(), outer.classical.word_set())

# the inner code: one edge, classical code {00, 11}
inner = recipes.two_qubit_inner_code()

# classical side first: every outer symbol becomes an inner codeword
c = concat.concat_classical(inner.classical, outer.classical)
print("concatenated classical code:", sorted(c.word_set()))

# the encoding graph has 1 input, 3 auxiliaries and 6 outputs
enc = codes.encoding_graph(inner, outer)
print("roles:", enc.roles)
print(graph.export_dot(enc.graph, enc.roles))

# one GLC per auxiliary, then the auxiliaries are deleted
steps = []
outcome = concat.concat_glc(enc, on_step=lambda v, a: steps.append((v, int(np.count_nonzero(a)) // 2)))
for v, edges in steps:
    print(f"after the move at auxiliary {v}: {edges} edges")
print("concatenated graph:", outcome.graph.edges())
print("input edges:", [e for e in outcome.retained_input_graph.graph.edges() if e[0] == 0])

# the single GLC move of the bipartite-complement figure
g, move = recipes.fig5_move()
print("before:", g.edges())
print("after: ", graph.glc(g, move).edges())
print("simulated sandwich matches the GLC graph:", simulator.theorem2_verify(g, move))

# finally the code space: encoder circuit vs span{Z^c |psi_Gc>}
result = concat.concat_codes(inner, outer)
dist = concat_encoder_distance(result.code, inner, [outer])
print(f"projector distance between the two code spaces: {dist:.1e}")
