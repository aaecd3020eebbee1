"""Ready-made codes and constructions from the worked examples and figures."""

from __future__ import annotations

import itertools
from collections.abc import Iterator

import numpy as np

from graphconcat.codes import ClassicalCode, CwsCode, interleave_copies
from graphconcat.concat import ConcatResult, PartitionChain, concat_codes, gcqc
from graphconcat.distance import stabilizer_distance_coset
from graphconcat.graph import GlcMove, LabeledGraph


def cycle_graph(n: int, p: int = 2) -> LabeledGraph:
    return LabeledGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], p)


def complete_graph(n: int, p: int = 2) -> LabeledGraph:
    return LabeledGraph.from_edges(n, itertools.combinations(range(n), 2), p)


def triangle_code() -> CwsCode:
    """[[3,1,1]]: triangle with classical code {000, 111}."""
    return CwsCode(complete_graph(3), ClassicalCode.linear([[1, 1, 1]]))


def two_qubit_inner_code() -> CwsCode:
    """[[2,1,1]] inner code with classical code {00, 11}.

    The two output vertices are joined by an edge; the worked example leaves
    this open, and any choice yields a valid code.
    """
    return CwsCode(complete_graph(2), ClassicalCode.linear([[1, 1]]))


def pentagon_code() -> CwsCode:
    """[[5,1,3]]: pentagon with every output joined to the input."""
    return CwsCode(cycle_graph(5), ClassicalCode.linear([[1] * 5]))


def steane_cube_code() -> CwsCode:
    """[[7,1,3]]: cube graph with corner 000 as the input vertex.

    Outputs are the other seven corners in binary order 001..111; the input is
    joined to the three corners adjacent to it.
    """
    corners = range(1, 8)
    edges = [
        (a - 1, b - 1)
        for a, b in itertools.combinations(corners, 2)
        if bin(a ^ b).count("1") == 1
    ]
    generator = [1 if bin(v).count("1") == 1 else 0 for v in corners]
    return CwsCode(LabeledGraph.from_edges(7, edges), ClassicalCode.linear([generator]))


def star_422_code() -> CwsCode:
    """[[4,2,2]]: star centred at vertex 0 with generator rows 1011 and 0101.

    Each generator row on its own gives a [[4,1,2]] subcode, which is what the
    two-level partition chain needs.
    """
    graph = LabeledGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    return CwsCode(graph, ClassicalCode.linear([[1, 0, 1, 1], [0, 1, 0, 1]]))


def full_space_code(n: int, p: int = 2) -> CwsCode:
    """[[n,n,1]]: empty graph with every word allowed."""
    return CwsCode(LabeledGraph.empty(n, p), ClassicalCode.full_space(n, p))


def iter_standard_graph_codes(n: int, k: int, p: int = 2) -> Iterator[CwsCode]:
    """Every graph on n vertices with every generator (I_k A), in a fixed order."""
    pairs = list(itertools.combinations(range(n), 2))
    for labels in itertools.product(range(p), repeat=len(pairs)):
        graph = LabeledGraph.from_edges(
            n, [(u, v, c) for (u, v), c in zip(pairs, labels) if c], p
        )
        for entries in itertools.product(range(p), repeat=k * (n - k)):
            a = np.array(entries, dtype=np.int64).reshape(k, n - k)
            generator = np.hstack([np.eye(k, dtype=np.int64), a])
            yield CwsCode(graph, ClassicalCode(p, n, generators=generator))


def search_graph_code(n: int, k: int, d: int, p: int = 2, subcode_distance: int | None = None) -> CwsCode:
    """First standard-form graph code [[n,k,d]]_p found, optionally with a good one-row subcode.

    With `subcode_distance`, the last generator row alone must give a code of
    that distance (used for two-level partition chains).
    """
    for code in iter_standard_graph_codes(n, k, p):
        if stabilizer_distance_coset(code.matrices()).value != d:
            continue
        if subcode_distance is not None:
            row = code.classical.generators.array[-1:]  # type: ignore[union-attr]
            sub = CwsCode(code.graph, ClassicalCode(p, n, generators=row))
            if stabilizer_distance_coset(sub.matrices()).value != subcode_distance:
                continue
        return code
    raise LookupError(f"no [[{n},{k},{d}]]_{p} graph code found")


def fig5_move() -> tuple[LabeledGraph, GlcMove]:
    """The bipartite-complement example: vertex 1 with support {6, 7} (0-based 0 and {5, 6})."""
    graph = LabeledGraph.from_edges(7, [(0, 1), (0, 2), (0, 3), (2, 5), (3, 6)])
    return graph, GlcMove.from_set(0, [5, 6], 7)


def fig4_concatenation() -> ConcatResult:
    """[[2,1,1]] inside [[3,1,1]]: the six-qubit code with classical part {000000, 111111}."""
    return concat_codes(two_qubit_inner_code(), triangle_code())


def pentagon_self_concatenation() -> ConcatResult:
    """[[25,1,9]]."""
    code = pentagon_code()
    return concat_codes(code, code)


def steane_self_concatenation() -> ConcatResult:
    """[[49,1,9]]."""
    code = steane_cube_code()
    return concat_codes(code, code)


def fig10_outer() -> CwsCode:
    """[[4,2,2]] over 4-level symbols, written as two interleaved qubit [[4,2,2]] codes."""
    code = star_422_code()
    return interleave_copies([code, code])


def fig10_concatenation() -> ConcatResult:
    """[[16,4,4]]."""
    return concat_codes(star_422_code(), fig10_outer())


def fig11_chain() -> PartitionChain:
    """[[4,2,2]] split into two [[4,1,2]] cosets of its last generator row."""
    gen = star_422_code().classical.generators
    return PartitionChain([gen, gen.array[1:]], p=2)  # type: ignore[list-item, union-attr]


def fig11_outers() -> list[CwsCode]:
    """[[4,4,1]] on the top level and [[4,2,2]] on the subcode level."""
    return [full_space_code(4), star_422_code()]


def fig11_gcqc() -> ConcatResult:
    """[[16,6,2]]."""
    return gcqc(star_422_code(), fig11_chain(), fig11_outers())
