"""Symplectic representation of generalized Pauli operators and stabilizer groups.

A Pauli operator w^c X^a Z^b on n qupits is stored as the row vector (a | b) of
length 2n over F_p plus the phase exponent c.  Clifford gates act on whole
stabilizer matrices by column operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from graphconcat.algebra import (
    FieldElement,
    FieldError,
    FpMatrix,
    IntArray,
    check_prime,
    hstack,
    matmul_mod,
    rank,
    vstack,
)
from graphconcat.graph import LabeledGraph, delete_vertex


class StabilizerError(ValueError):
    """Raised when a generator matrix is not a valid stabilizer description."""


@dataclass(frozen=True)
class PauliOperator:
    """w^phase X^x Z^z on len(x) qupits."""

    x: tuple[int, ...]
    z: tuple[int, ...]
    p: int = 2
    phase: int = 0

    def __post_init__(self) -> None:
        check_prime(self.p)
        if len(self.x) != len(self.z):
            raise StabilizerError("x and z parts must have equal length")
        object.__setattr__(self, "x", tuple(int(v) % self.p for v in self.x))
        object.__setattr__(self, "z", tuple(int(v) % self.p for v in self.z))
        object.__setattr__(self, "phase", int(self.phase) % self.p)

    @classmethod
    def from_vector(cls, vector: npt.ArrayLike, p: int, phase: int = 0) -> PauliOperator:
        v = np.asarray(vector, dtype=np.int64).ravel()
        if v.size % 2:
            raise StabilizerError("symplectic vector must have even length")
        n = v.size // 2
        return cls(tuple(v[:n]), tuple(v[n:]), p, phase)

    @classmethod
    def from_label(cls, label: str) -> PauliOperator:
        """Binary Pauli from a string such as "XZZXI" (phases dropped)."""
        x = [int(c in "XY") for c in label]
        z = [int(c in "ZY") for c in label]
        if any(c not in "IXYZ" for c in label):
            raise StabilizerError(f"bad Pauli label {label!r}")
        return cls(tuple(x), tuple(z), 2)

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def vector(self) -> IntArray:
        return np.array(self.x + self.z, dtype=np.int64)

    @property
    def weight(self) -> int:
        return sum(1 for a, b in zip(self.x, self.z) if a or b)

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        """Product up to the commutation phase, which is tracked in `phase`."""
        if other.p != self.p or other.n != self.n:
            raise StabilizerError("operators act on different spaces")
        # Z^b X^a' = w^(a'.b) X^a' Z^b
        extra = int(np.dot(other.x, self.z))
        return PauliOperator(
            tuple(a + b for a, b in zip(self.x, other.x)),
            tuple(a + b for a, b in zip(self.z, other.z)),
            self.p,
            self.phase + other.phase + extra,
        )


def symplectic_product(u: PauliOperator, v: PauliOperator) -> FieldElement:
    """a.b' - a'.b, zero iff the two operators commute."""
    if u.p != v.p:
        raise FieldError(f"cannot mix moduli {u.p} and {v.p}")
    if u.n != v.n:
        raise StabilizerError(f"operators act on {u.n} and {v.n} qupits")
    value = int(np.dot(u.x, v.z)) - int(np.dot(v.x, u.z))
    return FieldElement(value, u.p)


def symplectic_gram(a: npt.ArrayLike, b: npt.ArrayLike, p: int) -> IntArray:
    """Matrix of pairwise symplectic products between the rows of a and b."""
    a = np.atleast_2d(np.asarray(a, dtype=np.int64))
    b = np.atleast_2d(np.asarray(b, dtype=np.int64))
    n = a.shape[1] // 2
    if a.shape[1] != b.shape[1] or a.shape[1] % 2:
        raise StabilizerError(f"incompatible symplectic shapes {a.shape} and {b.shape}")
    return np.mod(a[:, :n] @ b[:, n:].T - a[:, n:] @ b[:, :n].T, p)


class StabilizerMatrix:
    """Full-rank, self-orthogonal k x 2n generator matrix (A | B)."""

    __slots__ = ("generators",)

    def __init__(self, generators: FpMatrix, validate: bool = True) -> None:
        if generators.cols % 2:
            raise StabilizerError("generator matrix must have an even number of columns")
        if validate:
            if rank(generators) != generators.rows:
                raise StabilizerError("generators are not linearly independent")
            gram = symplectic_gram(generators.array, generators.array, generators.p)
            if np.any(gram):
                raise StabilizerError("generators do not pairwise commute")
        object.__setattr__(self, "generators", generators)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("StabilizerMatrix is immutable")

    @property
    def n(self) -> int:
        return self.generators.cols // 2

    @property
    def k(self) -> int:
        """Number of generators (not the number of logical qupits)."""
        return self.generators.rows

    @property
    def p(self) -> int:
        return self.generators.p

    @property
    def array(self) -> IntArray:
        return self.generators.array

    def rows(self) -> list[PauliOperator]:
        return [PauliOperator.from_vector(r, self.p) for r in self.array]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StabilizerMatrix):
            return NotImplemented
        return self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __repr__(self) -> str:
        return f"StabilizerMatrix(n={self.n}, rows={self.k}, p={self.p})"


def _check_qupit(n: int, i: int) -> None:
    if not 0 <= i < n:
        raise StabilizerError(f"qupit {i} out of range for {n} qupits")


def hadamard_columns(array: IntArray, i: int, p: int) -> IntArray:
    """H on qupit i: swap columns i and n+i, then negate column i."""
    out = np.array(array, dtype=np.int64, copy=True)
    n = out.shape[1] // 2
    _check_qupit(n, i)
    x, z = out[:, i].copy(), out[:, n + i].copy()
    out[:, i] = np.mod(-z, p)
    out[:, n + i] = x
    return out


def hadamard_dagger_columns(array: IntArray, i: int, p: int) -> IntArray:
    """Inverse of hadamard_columns: (a, b) -> (b, -a) on qupit i."""
    out = np.array(array, dtype=np.int64, copy=True)
    n = out.shape[1] // 2
    _check_qupit(n, i)
    x, z = out[:, i].copy(), out[:, n + i].copy()
    out[:, i] = z
    out[:, n + i] = np.mod(-x, p)
    return out


def cz_columns(array: IntArray, i: int, j: int, weight: int, p: int) -> IntArray:
    """C_z^weight on qupits (i, j): column n+j += w col i, column n+i += w col j."""
    out = np.array(array, dtype=np.int64, copy=True)
    n = out.shape[1] // 2
    _check_qupit(n, i)
    _check_qupit(n, j)
    if i == j:
        raise StabilizerError("controlled-Z needs two distinct qupits")
    xi, xj = out[:, i].copy(), out[:, j].copy()
    out[:, n + j] = np.mod(out[:, n + j] + weight * xi, p)
    out[:, n + i] = np.mod(out[:, n + i] + weight * xj, p)
    return out


def hadamard_transform(m: StabilizerMatrix, i: int) -> StabilizerMatrix:
    return StabilizerMatrix(FpMatrix(hadamard_columns(m.array, i, m.p), m.p), validate=False)


def hadamard_dagger_transform(m: StabilizerMatrix, i: int) -> StabilizerMatrix:
    return StabilizerMatrix(
        FpMatrix(hadamard_dagger_columns(m.array, i, m.p), m.p), validate=False
    )


def cz_transform(
    m: StabilizerMatrix, i: int, j: int, weight: FieldElement | int = 1
) -> StabilizerMatrix:
    if isinstance(weight, FieldElement) and weight.p != m.p:
        raise FieldError(f"cannot mix moduli {m.p} and {weight.p}")
    return StabilizerMatrix(
        FpMatrix(cz_columns(m.array, i, j, int(weight), m.p), m.p), validate=False
    )


def graph_state_matrix(g: LabeledGraph) -> StabilizerMatrix:
    """Stabilizer generators (I_n | G) of the graph state."""
    return StabilizerMatrix(hstack([FpMatrix.identity(g.n, g.p), g.adjacency]), validate=False)


@dataclass(frozen=True)
class GraphCodeMatrices:
    """Stabilizer and logical operators of a graph code with generator (I_k A).

    `stabilizer` holds the n - k generators of the code space; `logical_z` and
    `logical_x` hold one row per encoded qupit.
    """

    stabilizer: StabilizerMatrix
    logical_z: FpMatrix
    logical_x: FpMatrix
    n: int = field(init=False)
    k: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "n", self.stabilizer.n)
        object.__setattr__(self, "k", self.logical_z.rows)

    @property
    def p(self) -> int:
        return self.stabilizer.p

    @property
    def zero_state_stabilizer(self) -> StabilizerMatrix:
        """Logical Z rows stacked on the code stabilizer.

        Z^c shifts the codeword Z^w |psi_G> to Z^(w+c) |psi_G>, so the fixed
        state is the uniform superposition of all codeword states.
        """
        return StabilizerMatrix(vstack([self.logical_z, self.stabilizer.generators]))

    def check(self) -> None:
        """Assert commutation relations; raises StabilizerError on failure."""
        p = self.p
        s = self.stabilizer.array
        if np.any(symplectic_gram(s, s, p)):
            raise StabilizerError("stabilizer rows do not commute")
        for name, logical in (("Z", self.logical_z.array), ("X", self.logical_x.array)):
            if np.any(symplectic_gram(s, logical, p)):
                raise StabilizerError(f"logical {name} does not commute with the stabilizer")
        if not np.array_equal(
            symplectic_gram(self.logical_x.array, self.logical_z.array, p),
            np.eye(self.k, dtype=np.int64),
        ):
            raise StabilizerError("logical X/Z pairing is not the identity")
        if np.any(symplectic_gram(self.logical_z.array, self.logical_z.array, p)) or np.any(
            symplectic_gram(self.logical_x.array, self.logical_x.array, p)
        ):
            raise StabilizerError("logical operators of one type do not commute")


def standard_form_split(generator: FpMatrix) -> FpMatrix:
    """Return A for a generator (I_k A); raise if the leading block is not I_k."""
    k = generator.rows
    if k > generator.cols or not np.array_equal(
        generator.array[:, :k], np.eye(k, dtype=np.int64)
    ):
        raise StabilizerError("classical generator is not in standard form (I_k A)")
    return FpMatrix(generator.array[:, k:], generator.p)


def graph_code_matrices(g: LabeledGraph, generator: FpMatrix) -> GraphCodeMatrices:
    """Stabilizer, logical Z and logical X of the graph code (g, span(generator))."""
    if generator.p != g.p:
        raise FieldError(f"cannot mix moduli {g.p} and {generator.p}")
    n, k = g.n, generator.rows
    if generator.cols != n:
        raise StabilizerError(f"generator has length {generator.cols}, graph has {n} vertices")
    p = g.p
    a = standard_form_split(generator).array
    adj = g.array
    g1, b, g2 = adj[:k, :k], adj[:k, k:], adj[k:, k:]
    at = a.T
    eye_k = np.eye(k, dtype=np.int64)
    eye_r = np.eye(n - k, dtype=np.int64)
    stab = np.hstack(
        [
            -at,
            eye_r,
            -matmul_mod(at, g1, p) + b.T,
            -matmul_mod(at, b, p) + g2,
        ]
    )
    logical_z = np.hstack([np.zeros((k, n), dtype=np.int64), eye_k, a])
    logical_x = np.hstack([eye_k, np.zeros((k, n - k), dtype=np.int64), g1, b])
    mats = GraphCodeMatrices(
        StabilizerMatrix(FpMatrix(stab, p)),
        FpMatrix(logical_z, p),
        FpMatrix(logical_x, p),
    )
    mats.check()
    return mats


def measurement_vertex_deletion(g: LabeledGraph, i: int) -> LabeledGraph:
    """Graph of the post-measurement state after outcome 0 on qupit i."""
    return delete_vertex(g, i)
