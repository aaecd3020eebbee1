from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphconcat.algebra import (
    FieldElement,
    FieldError,
    FpMatrix,
    all_vectors,
    in_row_space,
    inverse,
    invert_matrix,
    kron,
    nullspace,
    rank,
    row_space_equal,
    rref,
    span_elements,
)

from helpers import random_full_rank

PRIMES = [2, 3, 5, 7]


def span_set(m: np.ndarray, p: int) -> set[tuple[int, ...]]:
    """Row span by brute-force enumeration of coefficient vectors."""
    coeffs = all_vectors(m.shape[0], p)
    return {tuple(int(x) for x in row) for row in (coeffs @ m) % p}


@st.composite
def matrices(draw, max_rows: int = 4, max_cols: int = 5, primes=(2, 3, 5)):
    p = draw(st.sampled_from(primes))
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return FpMatrix(np.array(entries).reshape(r, c), p)


class TestFieldElement:
    @pytest.mark.parametrize(("a", "p", "expected"), [(1, 2, 1), (2, 5, 3), (3, 7, 5)])
    def test_inverse_examples(self, a, p, expected):
        assert inverse(FieldElement(a, p)).value == expected

    def test_zero_has_no_inverse(self):
        with pytest.raises(ZeroDivisionError, match="no inverse"):
            inverse(FieldElement(0, 5))

    def test_non_prime_modulus_rejected(self):
        with pytest.raises(FieldError):
            FieldElement(1, 4)

    def test_mixed_moduli_rejected(self):
        with pytest.raises(FieldError):
            FieldElement(1, 3) + FieldElement(1, 5)

    @given(st.sampled_from(PRIMES), st.integers(1, 1000))
    def test_inverse_is_involution(self, p, a):
        x = FieldElement(a % p or 1, p)
        assert inverse(inverse(x)) == x
        assert (x * inverse(x)).value == 1

    @given(st.sampled_from(PRIMES), st.integers(-50, 50), st.integers(-50, 50))
    def test_arithmetic_closed(self, p, a, b):
        x, y = FieldElement(a, p), FieldElement(b, p)
        for z in (x + y, x - y, x * y, -x):
            assert 0 <= z.value < p
        assert (x + y).value == (a + b) % p
        assert (x * y).value == (a * b) % p


class TestFpMatrix:
    def test_entries_reduced_and_read_only(self):
        m = FpMatrix([[3, -1]], 3)
        assert m.tolist() == [[0, 2]]
        with pytest.raises(ValueError):
            m.array[0, 0] = 1

    def test_mixed_moduli_rejected(self):
        with pytest.raises(FieldError):
            FpMatrix([[1]], 2) + FpMatrix([[1]], 3)

    def test_slicing_keeps_matrix_shape(self):
        m = FpMatrix(np.arange(6).reshape(2, 3), 7)
        assert m[:, 1:].shape == (2, 2)
        with pytest.raises(TypeError):
            m[0]

    def test_matmul_and_kron(self):
        a = FpMatrix([[1, 2], [0, 1]], 3)
        assert (a @ a).tolist() == [[1, 1], [0, 1]]
        assert kron(FpMatrix([[1, 1]], 2), FpMatrix([[1, 0]], 2)).tolist() == [[1, 0, 1, 0]]

    def test_invert(self, rng):
        for p in (2, 3, 5):
            m = FpMatrix(random_full_rank(4, 4, p, rng), p)
            assert invert_matrix(m) @ m == FpMatrix.identity(4, p)


class TestRref:
    def test_identity(self):
        reduced, r, pivots = rref(FpMatrix.identity(3, 2))
        assert reduced == FpMatrix.identity(3, 2) and r == 3 and pivots == [0, 1, 2]

    def test_duplicate_rows(self):
        reduced, r, pivots = rref(FpMatrix([[1, 1], [1, 1]], 2))
        assert reduced.tolist() == [[1, 1], [0, 0]] and r == 1 and pivots == [0]

    def test_pivot_scaled_to_one(self):
        reduced, _, _ = rref(FpMatrix([[0, 2, 4], [3, 0, 1]], 5))
        assert reduced.tolist() == [[1, 0, 2], [0, 1, 2]]

    def test_rank_matches_span_size(self, rng):
        for _ in range(20):
            m = rng.integers(0, 3, size=(3, 5))
            size = len(span_set(m, 3))
            assert 3 ** rank(m, 3) == size

    @given(matrices())
    def test_idempotent(self, m):
        reduced, _, _ = rref(m)
        assert rref(reduced)[0] == reduced

    @given(matrices())
    def test_row_space_preserved(self, m):
        reduced, r, _ = rref(m)
        assert span_set(m.array, m.p) == span_set(reduced.array[:r] if r else reduced.array[:1] * 0, m.p)

    @given(matrices())
    def test_nullspace(self, m):
        ns = nullspace(m)
        assert ns.rows == m.cols - rank(m)
        if ns.rows:
            assert not np.any((m.array @ ns.array.T) % m.p)


class TestRowSpaceEqual:
    def test_invertible_mix(self, rng):
        for p in (2, 3, 5):
            m = FpMatrix(rng.integers(0, p, size=(3, 6)), p)
            u = FpMatrix(random_full_rank(3, 3, p, rng), p)
            assert row_space_equal(m, u @ m)

    def test_extra_independent_row(self):
        m = FpMatrix([[1, 0, 0]], 2)
        assert not row_space_equal(m, FpMatrix([[1, 0, 0], [0, 1, 0]], 2))

    def test_shape_mismatch(self):
        with pytest.raises(FieldError):
            row_space_equal(FpMatrix([[1, 0]], 2), FpMatrix([[1, 0, 0]], 2))

    def test_agrees_with_enumeration(self, rng):
        for _ in range(200):
            n = int(rng.integers(1, 5))
            a = rng.integers(0, 2, size=(int(rng.integers(1, 4)), n))
            b = rng.integers(0, 2, size=(int(rng.integers(1, 4)), n))
            expected = span_set(a, 2) == span_set(b, 2)
            assert row_space_equal(FpMatrix(a, 2), FpMatrix(b, 2)) == expected

    @given(matrices(max_rows=3, max_cols=3, primes=(2,)), matrices(max_rows=3, max_cols=3, primes=(2,)),
           matrices(max_rows=3, max_cols=3, primes=(2,)))
    def test_equivalence_relation(self, a, b, c):
        assert row_space_equal(a, a)
        if a.cols == b.cols:
            assert row_space_equal(a, b) == row_space_equal(b, a)
            if b.cols == c.cols and row_space_equal(a, b) and row_space_equal(b, c):
                assert row_space_equal(a, c)

    def test_in_row_space(self):
        m = FpMatrix([[1, 1, 0], [0, 1, 1]], 2)
        assert in_row_space([1, 0, 1], m)
        assert not in_row_space([1, 0, 0], m)

    def test_span_elements_count(self):
        m = FpMatrix([[1, 0, 2], [0, 1, 1]], 3)
        assert len({tuple(r) for r in span_elements(m)}) == 9
