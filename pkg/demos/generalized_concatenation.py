"""
Concatenation with a [[4,2,2]] inner code
=========================================

Two constructions on 16 qubits.  Plain concatenation with an outer code over
4-level symbols, written as two interleaved qubit [[4,2,2]] codes, gives
[[16,4,4]].  Splitting the inner code into two cosets of a [[4,1,2]] subcode
and protecting the levels separately gives the generalized concatenated
[[16,6,2]] code.
"""

from graphconcat import codes, concat, distance, recipes
from graphconcat.oracle import concat_encoder_distance

inner = recipes.star_422_code()
print("inner:", inner.graph.edges(), inner.classical.generators.tolist())

# [[16,4,4]]
outer = recipes.fig10_outer()
print("outer block size:", outer.block_size, "K:", outer.K)
result = concat.concat_codes(inner, outer)
print("n, K:", result.code.n, result.code.K)
print(distance.stabilizer_distance_coset(result.code.matrices()))

# [[16,6,2]]
chain = recipes.fig11_chain()
print("coset rows per level:", [r.tolist() for r in chain.coset_rows()])
outers = recipes.fig11_outers()
result = concat.gcqc(inner, chain, outers)
enc = result.encoding
print("encoding graph:", len(enc.inputs), "inputs,", len(enc.auxiliaries), "auxiliaries,", len(enc.outputs), "outputs")
print("n, K:", result.code.n, result.code.K)
print(distance.stabilizer_distance_coset(result.code.matrices()))

# the simulated level-by-level encoder produces the same 64-dimensional space
dist = concat_encoder_distance(result.code, inner, outers, chain)
print(f"projector distance: {dist:.1e}")

# the 64 classical words are distinct, as they must be for K = 64
words = concat.classical_gcc(chain, [o.classical for o in outers]).word_set()
print("distinct words:", len(words))
print("retained input vertices:", codes.INPUT in result.retained_input_graph.roles)
