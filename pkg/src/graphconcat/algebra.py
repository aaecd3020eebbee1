"""Scalars and dense matrices over the prime field F_p."""

from __future__ import annotations

import functools
from collections.abc import Iterable, Sequence
from typing import Any

import numpy as np
import numpy.typing as npt

IntArray = npt.NDArray[np.int64]


class FieldError(ValueError):
    """Raised for invalid moduli, mixed moduli, or undefined field operations."""


@functools.lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    factor = 2
    while factor * factor <= p:
        if p % factor == 0:
            return False
        factor += 1
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise FieldError(f"modulus must be prime, got {p!r}")
    return int(p)


def _check_same_field(p: int, q: int) -> None:
    if p != q:
        raise FieldError(f"cannot mix moduli {p} and {q}")


class FieldElement:
    """An element of F_p, stored as its canonical representative in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int) -> None:
        p = check_prime(p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", int(value) % p)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other: FieldElement | int) -> int:
        if isinstance(other, FieldElement):
            _check_same_field(self.p, other.p)
            return other.value
        return int(other)

    def __add__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self) -> FieldElement:
        return FieldElement(-self.value, self.p)

    def __truediv__(self, other: FieldElement | int) -> FieldElement:
        return self * inverse(FieldElement(self._coerce(other), self.p))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"FieldElement({self.value}, p={self.p})"


def inverse(a: FieldElement) -> FieldElement:
    """Multiplicative inverse in F_p."""
    if a.value == 0:
        raise ZeroDivisionError(f"no inverse for 0 in F_{a.p}")
    return FieldElement(pow(a.value, -1, a.p), a.p)


def inverse_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"no inverse for 0 in F_{p}")
    return pow(a, -1, p)


class FpMatrix:
    """Immutable dense matrix over F_p.

    Entries are stored as a read-only int64 numpy array reduced into [0, p).
    Arithmetic between matrices of different moduli raises FieldError.
    """

    __slots__ = ("_array", "p")

    def __init__(self, entries: npt.ArrayLike | FpMatrix, p: int) -> None:
        p = check_prime(p)
        if isinstance(entries, FpMatrix):
            _check_same_field(entries.p, p)
            array = entries._array
        else:
            array = np.array(entries, dtype=np.int64)
            if array.ndim == 1 and array.size == 0:
                array = array.reshape(0, 0)
            if array.ndim != 2:
                raise FieldError(f"FpMatrix needs a 2D array, got shape {array.shape}")
            array = np.mod(array, p)
            array.flags.writeable = False
        object.__setattr__(self, "_array", array)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("FpMatrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> FpMatrix:
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, size: int, p: int) -> FpMatrix:
        return cls(np.eye(size, dtype=np.int64), p)

    @property
    def array(self) -> IntArray:
        """Read-only view of the entries."""
        return self._array

    @property
    def shape(self) -> tuple[int, int]:
        return self._array.shape  # type: ignore[return-value]

    @property
    def rows(self) -> int:
        return self._array.shape[0]

    @property
    def cols(self) -> int:
        return self._array.shape[1]

    @property
    def T(self) -> FpMatrix:
        return FpMatrix(self._array.T, self.p)

    def copy_array(self) -> IntArray:
        """Writable copy of the entries."""
        return self._array.copy()

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(int(self._array[i, j]), self.p)

    def __getitem__(self, index: Any) -> FpMatrix:
        sub = self._array[index]
        if np.ndim(sub) != 2:
            raise TypeError("index must keep both axes; use .entry(i, j) or .array")
        return FpMatrix(sub, self.p)

    def __array__(self, dtype: Any = None, copy: Any = None) -> IntArray:
        if dtype is None:
            return self._array.copy()
        return self._array.astype(dtype)

    def _other(self, other: FpMatrix | npt.ArrayLike) -> IntArray:
        if isinstance(other, FpMatrix):
            _check_same_field(self.p, other.p)
            return other._array
        return np.asarray(other, dtype=np.int64)

    def __add__(self, other: FpMatrix | npt.ArrayLike) -> FpMatrix:
        return FpMatrix(self._array + self._other(other), self.p)

    def __sub__(self, other: FpMatrix | npt.ArrayLike) -> FpMatrix:
        return FpMatrix(self._array - self._other(other), self.p)

    def __neg__(self) -> FpMatrix:
        return FpMatrix(-self._array, self.p)

    def __mul__(self, scalar: int | FieldElement) -> FpMatrix:
        if isinstance(scalar, FieldElement):
            _check_same_field(self.p, scalar.p)
        return FpMatrix(self._array * int(scalar), self.p)

    __rmul__ = __mul__

    def __matmul__(self, other: FpMatrix | npt.ArrayLike) -> FpMatrix:
        right = self._other(other)
        if self.cols != right.shape[0]:
            raise FieldError(f"shape mismatch {self.shape} @ {right.shape}")
        return FpMatrix(matmul_mod(self._array, right, self.p), self.p)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self._array, other._array)

    def __hash__(self) -> int:
        return hash((self.p, self.shape, self._array.tobytes()))

    def __repr__(self) -> str:
        body = np.array2string(self._array, separator=", ")
        return f"FpMatrix({body}, p={self.p})"

    def tolist(self) -> list[list[int]]:
        return self._array.tolist()


def matmul_mod(a: IntArray, b: IntArray, p: int) -> IntArray:
    """Matrix product reduced mod p; entries stay < p so int64 never overflows here."""
    return np.mod(np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64), p)


def hstack(blocks: Sequence[FpMatrix]) -> FpMatrix:
    p = _common_modulus(blocks)
    return FpMatrix(np.hstack([b.array for b in blocks]), p)


def vstack(blocks: Sequence[FpMatrix]) -> FpMatrix:
    p = _common_modulus(blocks)
    return FpMatrix(np.vstack([b.array for b in blocks]), p)


def kron(a: FpMatrix, b: FpMatrix) -> FpMatrix:
    _check_same_field(a.p, b.p)
    return FpMatrix(np.kron(a.array, b.array), a.p)


def _common_modulus(blocks: Iterable[FpMatrix]) -> int:
    moduli = {b.p for b in blocks}
    if len(moduli) != 1:
        raise FieldError(f"expected one common modulus, got {sorted(moduli)}")
    return moduli.pop()


def rref_array(array: npt.ArrayLike, p: int) -> tuple[IntArray, int, list[int]]:
    """Reduced row echelon form of an integer array over F_p.

    Pivots are chosen as the first nonzero entry (top to bottom) in each column,
    then scaled to 1.
    """
    m = np.mod(np.array(array, dtype=np.int64), p)
    if m.ndim != 2:
        raise FieldError(f"rref needs a 2D array, got shape {m.shape}")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(m[r:, c])
        if nonzero.size == 0:
            continue
        pivot_row = r + int(nonzero[0])
        if pivot_row != r:
            m[[r, pivot_row]] = m[[pivot_row, r]]
        m[r] = (m[r] * inverse_mod(int(m[r, c]), p)) % p
        factors = m[:, c].copy()
        factors[r] = 0
        nz = np.flatnonzero(factors)
        if nz.size:
            m[nz] = (m[nz] - np.outer(factors[nz], m[r])) % p
        pivots.append(c)
        r += 1
    return m, r, pivots


def rref(m: FpMatrix) -> tuple[FpMatrix, int, list[int]]:
    """Return (reduced matrix, rank, pivot columns)."""
    reduced, rank_, pivots = rref_array(m.array, m.p)
    return FpMatrix(reduced, m.p), rank_, pivots


def rank(m: FpMatrix | npt.ArrayLike, p: int | None = None) -> int:
    if isinstance(m, FpMatrix):
        return rref_array(m.array, m.p)[1]
    if p is None:
        raise FieldError("rank of a raw array needs an explicit modulus")
    return rref_array(m, p)[1]


def row_basis(m: FpMatrix) -> FpMatrix:
    """Nonzero rows of the reduced row echelon form."""
    reduced, rank_, _ = rref(m)
    return FpMatrix(reduced.array[:rank_], m.p) if rank_ else FpMatrix.zeros(0, m.cols, m.p)


def row_space_equal(m1: FpMatrix, m2: FpMatrix) -> bool:
    """True iff the two matrices have the same F_p row space."""
    _check_same_field(m1.p, m2.p)
    if m1.cols != m2.cols:
        raise FieldError(f"column count mismatch: {m1.cols} vs {m2.cols}")
    r1, rank1, _ = rref(m1)
    r2, rank2, _ = rref(m2)
    return rank1 == rank2 and np.array_equal(r1.array[:rank1], r2.array[:rank2])


def in_row_space(vector: npt.ArrayLike, m: FpMatrix) -> bool:
    v = np.mod(np.asarray(vector, dtype=np.int64).reshape(1, -1), m.p)
    base = rank(m)
    return rank(FpMatrix(np.vstack([m.array, v]), m.p)) == base


def nullspace(m: FpMatrix) -> FpMatrix:
    """Basis (as rows) of {x : m x = 0}."""
    reduced, rank_, pivots = rref(m)
    cols = m.cols
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for i, pc in enumerate(pivots):
            basis[row, pc] = -reduced.array[i, f]
    return FpMatrix(basis, m.p) if free else FpMatrix.zeros(0, cols, m.p)


def invert_matrix(m: FpMatrix) -> FpMatrix:
    if m.rows != m.cols:
        raise FieldError("only square matrices can be inverted")
    n = m.rows
    augmented = np.hstack([m.array, np.eye(n, dtype=np.int64)])
    reduced, rank_, pivots = rref_array(augmented, m.p)
    if pivots[:n] != list(range(n)):
        raise FieldError("matrix is singular")
    return FpMatrix(reduced[:, n:], m.p)


def span_elements(m: FpMatrix) -> IntArray:
    """All p^rows linear combinations of the rows, as an array of shape (p^rows, cols)."""
    coeffs = all_vectors(m.rows, m.p)
    return matmul_mod(coeffs, m.array, m.p)


def all_vectors(length: int, p: int) -> IntArray:
    """Every vector of F_p^length, lexicographic, shape (p^length, length)."""
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((p,) * length).reshape(length, -1).T
    return grids.astype(np.int64)
