"""Graph concatenation of CWS quantum codes over prime fields."""

from __future__ import annotations

from graphconcat.algebra import (
    FieldElement,
    FieldError,
    FpMatrix,
    inverse,
    rank,
    row_space_equal,
    rref,
)
from graphconcat.codes import (
    ClassicalCode,
    CodeError,
    CwsCode,
    EncodingGraph,
    code_graph,
    cws_parameters,
    encoding_graph,
    interleave_copies,
    standardize_graph_code,
)
from graphconcat.concat import (
    ConcatError,
    ConcatResult,
    PartitionChain,
    classical_gcc,
    concat_classical,
    concat_codes,
    concat_glc,
    concat_theorem1,
    gcqc,
    shuffle_permutation,
    theorem1_copy_major,
)
from graphconcat.graph import (
    GlcMove,
    GraphError,
    LabeledGraph,
    delete_vertex,
    export_dot,
    glc,
)
from graphconcat.stabilizer import (
    GraphCodeMatrices,
    PauliOperator,
    StabilizerMatrix,
    graph_code_matrices,
    graph_state_matrix,
    symplectic_product,
)

__all__ = [
    "ClassicalCode",
    "CodeError",
    "ConcatError",
    "ConcatResult",
    "CwsCode",
    "EncodingGraph",
    "FieldElement",
    "FieldError",
    "FpMatrix",
    "GlcMove",
    "GraphCodeMatrices",
    "GraphError",
    "LabeledGraph",
    "PartitionChain",
    "PauliOperator",
    "StabilizerMatrix",
    "classical_gcc",
    "code_graph",
    "concat_classical",
    "concat_codes",
    "concat_glc",
    "concat_theorem1",
    "cws_parameters",
    "delete_vertex",
    "encoding_graph",
    "export_dot",
    "gcqc",
    "glc",
    "graph_code_matrices",
    "graph_state_matrix",
    "interleave_copies",
    "inverse",
    "rank",
    "row_space_equal",
    "rref",
    "shuffle_permutation",
    "theorem1_copy_major",
    "standardize_graph_code",
    "symplectic_product",
]
