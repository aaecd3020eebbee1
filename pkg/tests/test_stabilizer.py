from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphconcat.algebra import FieldElement, FieldError, FpMatrix
from graphconcat.graph import LabeledGraph
from graphconcat.recipes import complete_graph, cycle_graph
from graphconcat.simulator import (
    ControlledZ,
    Hadamard,
    HadamardDagger,
    MeasurePostselectZero,
    cws_codeword_state,
    graph_state_circuit,
    graph_state_vector,
    hadamard_matrix,
    simulate,
)
from graphconcat.stabilizer import (
    PauliOperator,
    StabilizerError,
    StabilizerMatrix,
    cz_transform,
    graph_code_matrices,
    graph_state_matrix,
    hadamard_dagger_transform,
    hadamard_transform,
    measurement_vertex_deletion,
    standard_form_split,
    symplectic_gram,
    symplectic_product,
)

from helpers import random_graph, random_standard_generator


def dense_pauli(vector: np.ndarray, p: int) -> np.ndarray:
    """X^a Z^b as a dense matrix, qupit 0 most significant."""
    n = len(vector) // 2
    w = np.exp(2j * np.pi / p)
    x = np.roll(np.eye(p), 1, axis=0)
    z = np.diag(w ** np.arange(p))
    out = np.ones((1, 1), dtype=np.complex128)
    for a, b in zip(vector[:n], vector[n:]):
        out = np.kron(out, np.linalg.matrix_power(x, int(a)) @ np.linalg.matrix_power(z, int(b)))
    return out


def equal_up_to_phase(a: np.ndarray, b: np.ndarray) -> bool:
    idx = np.unravel_index(np.argmax(abs(b)), b.shape)
    if abs(a[idx]) < 1e-12:
        return False
    return np.allclose(a * (b[idx] / a[idx]), b, atol=1e-9)


def one_qupit_gate(matrix: np.ndarray, i: int, n: int) -> np.ndarray:
    p = matrix.shape[0]
    return np.kron(np.kron(np.eye(p**i), matrix), np.eye(p ** (n - i - 1)))


def cz_dense(i: int, j: int, weight: int, n: int, p: int) -> np.ndarray:
    digits = np.indices((p,) * n).reshape(n, -1)
    return np.diag(np.exp(2j * np.pi * weight * digits[i] * digits[j] / p))


def pauli_matrix(rows: list[list[int]], p: int) -> StabilizerMatrix:
    return StabilizerMatrix(FpMatrix(np.array(rows), p), validate=False)


def assert_stabilizes(rows: np.ndarray, states: list[np.ndarray], p: int) -> None:
    """Every row maps the span of `states` to itself with one common eigenvalue."""
    q, _ = np.linalg.qr(np.column_stack(states))
    for row in rows:
        image = dense_pauli(row, p) @ q
        lam = np.vdot(q[:, 0], image[:, 0])
        assert abs(abs(lam) - 1) < 1e-9
        assert np.allclose(image, lam * q, atol=1e-9)


class TestPauli:
    def test_symplectic_examples(self):
        x = PauliOperator((1,), (0,), 2)
        z = PauliOperator((0,), (1,), 2)
        assert symplectic_product(x, z) == FieldElement(1, 2)
        assert symplectic_product(x, x) == FieldElement(0, 2)
        assert symplectic_product(PauliOperator((1,), (0,), 3), PauliOperator((0,), (1,), 3)) != 0

    def test_mixed_moduli(self):
        with pytest.raises(FieldError):
            symplectic_product(PauliOperator((1,), (0,), 2), PauliOperator((1,), (0,), 3))

    def test_from_label(self):
        op = PauliOperator.from_label("XYZI")
        assert op.x == (1, 1, 0, 0) and op.z == (0, 1, 1, 0) and op.weight == 3

    @given(st.sampled_from([2, 3, 5]), st.integers(1, 3), st.data())
    def test_symplectic_matches_dense_commutation(self, p, n, data):
        u = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=2 * n, max_size=2 * n)))
        v = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=2 * n, max_size=2 * n)))
        pu, pv = dense_pauli(u, p), dense_pauli(v, p)
        s = int(symplectic_product(PauliOperator.from_vector(u, p), PauliOperator.from_vector(v, p)))
        # X^a Z^b X^a' Z^b' = w^(a'.b - a.b') X^a' Z^b' X^a Z^b
        w = np.exp(2j * np.pi / p)
        assert np.allclose(pu @ pv, w ** (-s) * (pv @ pu))

    def test_stabilizer_matrix_validation(self):
        with pytest.raises(StabilizerError, match="commute"):
            StabilizerMatrix(FpMatrix(np.array([[1, 0], [0, 1]]), 2))
        with pytest.raises(StabilizerError, match="independent"):
            StabilizerMatrix(FpMatrix(np.array([[1, 0], [1, 0]]), 2))


class TestColumnRules:
    def test_hadamard_examples(self):
        assert hadamard_transform(pauli_matrix([[0, 1]], 3), 0).array.tolist() == [[2, 0]]
        assert hadamard_transform(pauli_matrix([[1, 0]], 3), 0).array.tolist() == [[0, 1]]

    def test_cz_examples(self):
        assert cz_transform(pauli_matrix([[1, 0, 0, 0]], 2), 0, 1).array.tolist() == [[1, 0, 0, 1]]
        assert cz_transform(pauli_matrix([[0, 0, 1, 0]], 2), 0, 1).array.tolist() == [[0, 0, 1, 0]]

    def test_cz_rejects_mixed_weight(self):
        with pytest.raises(FieldError):
            cz_transform(pauli_matrix([[1, 0, 0, 0]], 3), 0, 1, FieldElement(1, 5))

    @given(st.sampled_from([2, 3, 5]), st.integers(1, 3), st.data())
    def test_hadamard_inverse(self, p, n, data):
        rows = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=2 * n, max_size=2 * n)))
        m = pauli_matrix([list(rows)], p)
        i = data.draw(st.integers(0, n - 1))
        assert hadamard_dagger_transform(hadamard_transform(m, i), i) == m

    @given(st.sampled_from([2, 3]), st.data())
    def test_dense_conjugation(self, p, data):
        n = 2
        v = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=2 * n, max_size=2 * n)))
        weight = data.draw(st.integers(1, p - 1))
        m = pauli_matrix([list(v)], p)
        pv = dense_pauli(v, p)
        u = cz_dense(0, 1, weight, n, p)
        assert equal_up_to_phase(u @ pv @ u.conj().T, dense_pauli(cz_transform(m, 0, 1, weight).array[0], p))
        h = one_qupit_gate(hadamard_matrix(p), 1, n)
        assert equal_up_to_phase(h @ pv @ h.conj().T, dense_pauli(hadamard_transform(m, 1).array[0], p))
        hd = h.conj().T
        assert equal_up_to_phase(hd @ pv @ h, dense_pauli(hadamard_dagger_transform(m, 1).array[0], p))

    @given(st.sampled_from([2, 3]), st.integers(2, 4), st.integers(0, 2**32 - 1))
    def test_gate_sequence_keeps_state_stabilized(self, p, n, seed):
        rng = np.random.default_rng(seed)
        g = random_graph(n, p, rng)
        c = graph_state_circuit(g)
        m = graph_state_matrix(g)
        for _ in range(4):
            if rng.random() < 0.5:
                i = int(rng.integers(n))
                c.append(Hadamard(i) if rng.random() < 0.5 else HadamardDagger(i))
                m = hadamard_transform(m, i) if isinstance(c.gates[-1], Hadamard) else hadamard_dagger_transform(m, i)
            else:
                i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
                w = int(rng.integers(1, p))
                c.append(ControlledZ(i, j, w))
                m = cz_transform(m, i, j, w)
        state = simulate(c).vector()
        assert_stabilizes(m.array, [state], p)


class TestGraphStates:
    def test_examples(self):
        assert graph_state_matrix(LabeledGraph.empty(2)).array.tolist() == [[1, 0, 0, 0], [0, 1, 0, 0]]
        assert graph_state_matrix(complete_graph(2)).array.tolist() == [[1, 0, 0, 1], [0, 1, 1, 0]]
        tri = graph_state_matrix(complete_graph(3)).array
        assert np.array_equal(tri[:, 3:], complete_graph(3).array)

    @given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.integers(0, 2**32 - 1))
    def test_graph_state_stabilized(self, p, n, seed):
        g = random_graph(n, p, np.random.default_rng(seed))
        assert_stabilizes(graph_state_matrix(g).array, [graph_state_vector(g)], p)


class TestGraphCodeMatrices:
    def test_triangle(self):
        g = complete_graph(3)
        mats = graph_code_matrices(g, FpMatrix(np.array([[1, 1, 1]]), 2))
        states = [cws_codeword_state(g, w) for w in ([0, 0, 0], [1, 1, 1])]
        assert_stabilizes(mats.stabilizer.array, states, 2)
        assert mats.stabilizer.k == 2 and mats.k == 1

    def test_pentagon_logical_z(self):
        mats = graph_code_matrices(cycle_graph(5), FpMatrix(np.ones((1, 5), dtype=np.int64), 2))
        assert mats.logical_z.array.tolist() == [[0] * 5 + [1] * 5]

    def test_requires_standard_form(self):
        with pytest.raises(StabilizerError, match="standard form"):
            standard_form_split(FpMatrix(np.array([[0, 1, 1]]), 2))

    @given(st.sampled_from([2, 3]), st.integers(2, 4), st.integers(0, 2**32 - 1), st.data())
    def test_random_codes(self, p, n, seed, data):
        rng = np.random.default_rng(seed)
        k = data.draw(st.integers(1, n))
        g = random_graph(n, p, rng)
        gen = random_standard_generator(k, n, p, rng)
        mats = graph_code_matrices(g, FpMatrix(gen, p))
        gram = symplectic_gram(mats.logical_x.array, mats.logical_z.array, p)
        assert np.array_equal(gram, np.eye(k, dtype=np.int64))
        words = (np.array(list(np.ndindex(*(p,) * k)), dtype=np.int64).reshape(-1, k) @ gen) % p
        states = [cws_codeword_state(g, w) for w in words]
        assert_stabilizes(mats.stabilizer.array, states, p)
        # logical operators preserve the code space
        q, _ = np.linalg.qr(np.column_stack(states))
        proj = q @ q.conj().T
        for row in np.vstack([mats.logical_x.array, mats.logical_z.array]):
            image = dense_pauli(row, p) @ q
            assert np.allclose(proj @ image, image, atol=1e-9)
        assert_stabilizes(mats.zero_state_stabilizer.array, [np.sum(states, axis=0)], p)


class TestMeasurement:
    def test_examples(self):
        assert measurement_vertex_deletion(complete_graph(2), 1) == LabeledGraph.empty(1)
        assert measurement_vertex_deletion(complete_graph(3), 2) == complete_graph(2)
        path = LabeledGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        assert measurement_vertex_deletion(cycle_graph(5), 4) == path
        assert measurement_vertex_deletion(cycle_graph(5), 0) == path

    @given(st.sampled_from([2, 3, 5]), st.integers(2, 5), st.integers(0, 2**32 - 1), st.data())
    def test_postselection_oracle(self, p, n, seed, data):
        g = random_graph(n, p, np.random.default_rng(seed))
        i = data.draw(st.integers(0, n - 1))
        c = graph_state_circuit(g)
        c.append(MeasurePostselectZero(i))
        got = simulate(c).vector()
        want = graph_state_vector(measurement_vertex_deletion(g, i))
        assert equal_up_to_phase(got, want)
