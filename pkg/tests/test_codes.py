from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphconcat.algebra import FieldError, FpMatrix, row_space_equal
from graphconcat.codes import (
    AUXILIARY,
    INPUT,
    OUTPUT,
    ClassicalCode,
    CodeError,
    CwsCode,
    EncodingGraph,
    code_graph,
    cws_parameters,
    encoding_graph,
    interleave_copies,
    is_standard,
    read_generator,
    standardize_graph_code,
    strip_inputs,
)
from graphconcat.graph import LabeledGraph
from graphconcat.oracle import code_space
from graphconcat.recipes import (
    complete_graph,
    cycle_graph,
    pentagon_code,
    star_422_code,
    triangle_code,
    two_qubit_inner_code,
)
from graphconcat.simulator import projector_distance

from helpers import random_full_rank, random_graph, random_linear_code, random_word_code


def permute_qupits(state: np.ndarray, perm: list[int], p: int) -> np.ndarray:
    """State with new qupit t carrying old qupit perm[t]."""
    n = len(perm)
    return np.transpose(state.reshape((p,) * n), perm).reshape(-1)


class TestClassicalCode:
    def test_needs_one_description(self):
        with pytest.raises(CodeError):
            ClassicalCode(2, 2)
        with pytest.raises(CodeError):
            ClassicalCode(2, 2, generators=[[1, 1]], words=[(0, 0)])

    def test_rejects_dependent_rows(self):
        with pytest.raises(CodeError, match="dependent"):
            ClassicalCode.linear([[1, 1], [1, 1]])

    def test_rejects_duplicate_words(self):
        with pytest.raises(CodeError, match="duplicates"):
            ClassicalCode.from_words([(0, 1), (0, 1)])

    def test_words_and_size(self):
        c = ClassicalCode.linear([[1, 2, 0]], p=3)
        assert c.size == 3 and c.word_set() == {(0, 0, 0), (1, 2, 0), (2, 1, 0)}
        assert ClassicalCode.full_space(4).size == 16

    def test_same_code(self):
        a = ClassicalCode.linear([[1, 1, 0], [0, 1, 1]])
        b = ClassicalCode.linear([[1, 0, 1], [0, 1, 1]])
        assert a.same_code(b) and a != b
        assert a.same_code(ClassicalCode.from_words(a.words()))

    def test_nonlinear_has_no_dimension(self):
        with pytest.raises(CodeError):
            _ = ClassicalCode.from_words([(0, 0, 0), (1, 1, 0)]).k


class TestCwsCode:
    def test_parameters(self):
        assert cws_parameters(triangle_code()) == (3, 2)
        assert cws_parameters(pentagon_code()) == (5, 2)
        empty = CwsCode(LabeledGraph.empty(4), ClassicalCode.full_space(4))
        assert cws_parameters(empty) == (4, 16)

    def test_mismatch(self):
        with pytest.raises(CodeError):
            CwsCode(complete_graph(3), ClassicalCode.linear([[1, 1]]))
        with pytest.raises(FieldError):
            CwsCode(complete_graph(2, 3), ClassicalCode.linear([[1, 1]]))
        with pytest.raises(CodeError, match="block size"):
            CwsCode(complete_graph(3), ClassicalCode.linear([[1, 1, 1]]), block_size=2)

    @given(st.sampled_from([2, 3]), st.integers(2, 4), st.integers(0, 2**32 - 1), st.data())
    def test_matrices_stabilize_code_in_original_order(self, p, n, seed, data):
        rng = np.random.default_rng(seed)
        k = data.draw(st.integers(1, n))
        code = CwsCode(random_graph(n, p, rng), ClassicalCode(p, n, generators=random_full_rank(k, n, p, rng)))
        mats = code.matrices()
        mats.check()
        assert mats.k == k and mats.stabilizer.k == n - k
        # Z-part of logical Z spans the classical code
        assert row_space_equal(FpMatrix(mats.logical_z.array[:, n:], p), code.classical.generators)


class TestStandardForm:
    def test_already_standard(self):
        std, perm, _ = standardize_graph_code(pentagon_code())
        assert perm == list(range(5)) and std == pentagon_code()

    def test_pivot_swap(self):
        path = LabeledGraph.from_edges(3, [(0, 1), (1, 2)])
        std, perm, _ = standardize_graph_code(CwsCode(path, ClassicalCode.linear([[0, 1, 1]])))
        assert perm[0] == 1 and std.classical.generators.tolist() == [[1, 0, 1]]
        assert is_standard(std) and std.graph == path.permuted(perm)

    def test_nonlinear_rejected(self):
        with pytest.raises(CodeError):
            standardize_graph_code(CwsCode(complete_graph(2), ClassicalCode.from_words([(0, 0), (1, 0)])))

    @given(st.integers(2, 5), st.integers(0, 2**32 - 1), st.data())
    def test_row_space_and_basis_change(self, n, seed, data):
        p = 3
        rng = np.random.default_rng(seed)
        k = data.draw(st.integers(1, n))
        gen = random_full_rank(k, n, p, rng)
        code = CwsCode(random_graph(n, p, rng), ClassicalCode(p, n, generators=gen))
        std, perm, change = standardize_graph_code(code)
        assert is_standard(std)
        unpermuted = std.classical.generators.array[:, np.argsort(perm)]
        assert row_space_equal(FpMatrix(unpermuted, p), FpMatrix(gen, p))
        assert np.array_equal((change.array @ gen) % p, unpermuted)

    @given(st.sampled_from([2, 3]), st.integers(2, 4), st.integers(0, 2**32 - 1))
    def test_code_space_is_permuted(self, p, n, seed):
        rng = np.random.default_rng(seed)
        k = int(rng.integers(1, n + 1))
        code = CwsCode(random_graph(n, p, rng), ClassicalCode(p, n, generators=random_full_rank(k, n, p, rng)))
        std, perm, _ = standardize_graph_code(code)
        moved = [permute_qupits(s, perm, p) for s in code_space(code)]
        assert projector_distance(moved, code_space(std)) < 1e-9


class TestCodeGraph:
    def test_triangle(self):
        enc = code_graph(triangle_code())
        assert enc.inputs == [0] and enc.outputs == [1, 2, 3]
        assert enc.graph.neighbors(0) == [1, 2, 3] and len(enc.graph.edges()) == 6

    def test_pentagon_wheel(self):
        enc = code_graph(pentagon_code())
        assert enc.graph.neighbors(0) == [1, 2, 3, 4, 5]
        assert strip_inputs(enc) == cycle_graph(5)

    def test_partial_generator(self):
        enc = code_graph(CwsCode(complete_graph(3), ClassicalCode.linear([[1, 0, 0]])))
        assert enc.graph.neighbors(0) == [1]

    @given(st.sampled_from([2, 3, 5]), st.integers(1, 5), st.integers(0, 2**32 - 1), st.data())
    def test_round_trip(self, p, n, seed, data):
        k = data.draw(st.integers(1, n))
        code = random_linear_code(n, k, p, np.random.default_rng(seed))
        enc = code_graph(code)
        assert strip_inputs(enc) == code.graph
        assert read_generator(enc) == code.classical.generators


class TestEncodingGraph:
    def test_six_qubit_encoding_graph(self):
        enc = encoding_graph(two_qubit_inner_code(), triangle_code())
        assert enc.graph.n == 10
        assert (len(enc.inputs), len(enc.auxiliaries), len(enc.outputs)) == (1, 3, 6)
        assert enc.graph.neighbors(0) == [1, 2, 3]
        for copy, aux in enumerate(enc.auxiliaries):
            assert set(enc.graph.neighbors(aux)) - set(enc.auxiliaries) - {0} == set(enc.copy_outputs(copy))

    def test_trivial_inner(self):
        inner = CwsCode(LabeledGraph.empty(1), ClassicalCode.linear([[1]]))
        enc = encoding_graph(inner, pentagon_code())
        aux, outs = enc.auxiliaries, enc.outputs
        assert enc.graph.induced([0] + aux) == code_graph(pentagon_code()).graph
        for a, o in zip(aux, outs):
            assert [v for v in enc.graph.neighbors(o)] == [a]

    def test_pentagon_standard(self):
        enc = encoding_graph(pentagon_code(), pentagon_code())
        assert (len(enc.inputs), len(enc.auxiliaries), len(enc.outputs)) == (1, 5, 25)

    def test_nonlinear_outer_has_no_inputs(self, rng):
        outer = random_word_code(3, 3, 2, rng)
        enc = encoding_graph(two_qubit_inner_code(), outer)
        assert enc.inputs == [] and len(enc.auxiliaries) == 3

    def test_block_size_mismatch(self):
        with pytest.raises(CodeError, match="block size"):
            encoding_graph(star_422_code(), triangle_code())

    def test_structure_violations(self):
        g = LabeledGraph.from_edges(3, [(0, 2)])
        with pytest.raises(CodeError, match="input-output"):
            EncodingGraph(g, (INPUT, AUXILIARY, OUTPUT), (-1, -1, 0), {1: (0, 0, 0)})
        g = LabeledGraph.from_edges(2, [(0, 1)])
        with pytest.raises(CodeError, match="different copies"):
            EncodingGraph(g, (OUTPUT, OUTPUT), (0, 1))
        with pytest.raises(CodeError, match="role"):
            EncodingGraph(g, ("bogus", OUTPUT), (-1, 0))


class TestInterleave:
    def test_two_422_blocks(self):
        code = interleave_copies([star_422_code(), star_422_code()])
        assert code.n == 8 and code.block_size == 2 and code.K == 16
        assert code.graph.neighbors(0) == [2, 4, 6] and code.graph.neighbors(1) == [3, 5, 7]

    def test_nonlinear(self, rng):
        a = random_word_code(3, 3, 2, rng)
        code = interleave_copies([a, triangle_code()])
        assert code.K == 6 and not code.classical.is_linear
