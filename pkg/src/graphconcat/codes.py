"""Classical codes, CWS codes, graph codes and their encoding graphs."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from graphconcat.algebra import (
    FieldError,
    FpMatrix,
    IntArray,
    check_prime,
    matmul_mod,
    rank,
    row_space_equal,
    rref_array,
    span_elements,
)
from graphconcat.graph import LabeledGraph
from graphconcat.stabilizer import (
    GraphCodeMatrices,
    StabilizerMatrix,
    graph_code_matrices,
)

MAX_WORDS = 2**20

INPUT = "input"
AUXILIARY = "auxiliary"
OUTPUT = "output"


class CodeError(ValueError):
    """Raised for inconsistent code descriptions."""


class ClassicalCode:
    """Code over F_p given either by a generator matrix or an explicit word list."""

    __slots__ = ("p", "n", "generators", "_words")

    def __init__(
        self,
        p: int,
        n: int,
        generators: FpMatrix | npt.ArrayLike | None = None,
        words: Iterable[Sequence[int]] | None = None,
    ) -> None:
        p = check_prime(p)
        if (generators is None) == (words is None):
            raise CodeError("give exactly one of generators or words")
        gens = None
        word_tuple = None
        if generators is not None:
            gens = generators if isinstance(generators, FpMatrix) else FpMatrix(
                np.asarray(generators, dtype=np.int64).reshape(-1, n), p
            )
            if gens.p != p:
                raise FieldError(f"cannot mix moduli {p} and {gens.p}")
            if gens.cols != n:
                raise CodeError(f"generator has {gens.cols} columns, expected {n}")
            if rank(gens) != gens.rows:
                raise CodeError("generator rows are linearly dependent")
        else:
            word_tuple = tuple(tuple(int(x) % p for x in w) for w in words)  # type: ignore[union-attr]
            if any(len(w) != n for w in word_tuple):
                raise CodeError(f"all words must have length {n}")
            if len(set(word_tuple)) != len(word_tuple):
                raise CodeError("word list contains duplicates")
            if not word_tuple:
                raise CodeError("word list is empty")
            if len(word_tuple) > MAX_WORDS:
                raise CodeError(f"more than {MAX_WORDS} words")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_words", word_tuple)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ClassicalCode is immutable")

    @classmethod
    def linear(cls, generators: npt.ArrayLike, p: int = 2) -> ClassicalCode:
        g = np.atleast_2d(np.asarray(generators, dtype=np.int64))
        return cls(p, g.shape[1], generators=g)

    @classmethod
    def from_words(cls, words: Iterable[Sequence[int]], p: int = 2, n: int | None = None) -> ClassicalCode:
        words = [tuple(w) for w in words]
        return cls(p, len(words[0]) if n is None else n, words=words)

    @classmethod
    def full_space(cls, n: int, p: int = 2) -> ClassicalCode:
        return cls(p, n, generators=np.eye(n, dtype=np.int64))

    @property
    def is_linear(self) -> bool:
        return self.generators is not None

    @property
    def k(self) -> int:
        """Dimension of a linear code."""
        if self.generators is None:
            raise CodeError("dimension is only defined for linear codes")
        return self.generators.rows

    @property
    def size(self) -> int:
        if self.generators is not None:
            return self.p**self.generators.rows
        return len(self._words)  # type: ignore[arg-type]

    def words(self) -> IntArray:
        """All codewords as rows; linear codes are enumerated from their span."""
        if self.generators is not None:
            if self.size > MAX_WORDS:
                raise CodeError(f"code has {self.size} words, more than {MAX_WORDS}")
            return span_elements(self.generators)
        return np.array(self._words, dtype=np.int64).reshape(-1, self.n)

    def word_set(self) -> set[tuple[int, ...]]:
        return {tuple(int(x) for x in w) for w in self.words()}

    def same_code(self, other: ClassicalCode) -> bool:
        if self.p != other.p or self.n != other.n or self.size != other.size:
            return False
        if self.is_linear and other.is_linear:
            return row_space_equal(self.generators, other.generators)  # type: ignore[arg-type]
        return self.word_set() == other.word_set()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassicalCode):
            return NotImplemented
        if self.is_linear != other.is_linear or self.p != other.p or self.n != other.n:
            return False
        if self.is_linear:
            return self.generators == other.generators
        return self._words == other._words

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.generators, self._words))

    def __repr__(self) -> str:
        if self.is_linear:
            return f"ClassicalCode(p={self.p}, n={self.n}, generators={self.generators.tolist()})"  # type: ignore[union-attr]
        return f"ClassicalCode(p={self.p}, n={self.n}, words={len(self._words)})"  # type: ignore[arg-type]


@dataclass(frozen=True)
class CwsCode:
    """The CWS code spanned by Z^c |psi_G> for c in the classical code.

    `block_size` > 1 marks an outer code over p^block_size symbols written as
    blocks of consecutive F_p vertices.
    """

    graph: LabeledGraph
    classical: ClassicalCode
    block_size: int = 1

    def __post_init__(self) -> None:
        if self.graph.p != self.classical.p:
            raise FieldError(f"graph over p={self.graph.p}, classical code over p={self.classical.p}")
        if self.graph.n != self.classical.n:
            raise CodeError(f"graph has {self.graph.n} vertices, code length {self.classical.n}")
        if self.block_size < 1 or self.graph.n % self.block_size:
            raise CodeError(f"block size {self.block_size} does not divide length {self.graph.n}")

    @property
    def p(self) -> int:
        return self.graph.p

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def K(self) -> int:
        return self.classical.size

    @property
    def is_graph_code(self) -> bool:
        return self.classical.is_linear

    def matrices(self) -> GraphCodeMatrices:
        """Stabilizer and logical matrices, columns in this code's own vertex order."""
        std, perm, _ = standardize_graph_code(self)
        mats = graph_code_matrices(std.graph, std.classical.generators)  # type: ignore[arg-type]
        # standardized column t is original vertex perm[t], in both halves
        inverse = np.argsort(perm)
        cols = np.concatenate([inverse, inverse + self.n])

        def back(m: FpMatrix) -> FpMatrix:
            return FpMatrix(m.array[:, cols], m.p)

        return GraphCodeMatrices(
            StabilizerMatrix(back(mats.stabilizer.generators), validate=False),
            back(mats.logical_z),
            back(mats.logical_x),
        )


def cws_parameters(q: CwsCode) -> tuple[int, int]:
    """(n, K) of a CWS code."""
    return q.n, q.K


def standardize_graph_code(q: CwsCode) -> tuple[CwsCode, list[int], FpMatrix]:
    """Bring the classical generator to the form (I_k A) by row operations and a vertex reordering.

    Returns (code, permutation, basis_change) where new vertex t is old vertex
    permutation[t] and basis_change @ old_generator is the reduced generator
    before the columns are reordered.
    """
    gen = q.classical.generators
    if gen is None:
        raise CodeError("standard form needs a linear classical code")
    k, n, p = gen.rows, gen.cols, gen.p
    augmented = np.hstack([gen.array, np.eye(k, dtype=np.int64)])
    reduced, r, pivots = rref_array(augmented, p)
    pivots = [c for c in pivots if c < n]
    if len(pivots) != k:
        raise CodeError("classical generator is rank deficient")
    perm = pivots + [c for c in range(n) if c not in pivots]
    new_gen = FpMatrix(reduced[:, :n][:, perm], p)
    basis_change = FpMatrix(reduced[:, n:], p)
    std = CwsCode(q.graph.permuted(perm), ClassicalCode(p, n, generators=new_gen), q.block_size)
    return std, perm, basis_change


def is_standard(q: CwsCode) -> bool:
    gen = q.classical.generators
    if gen is None:
        return False
    k = gen.rows
    return np.array_equal(gen.array[:, :k], np.eye(k, dtype=np.int64))


@dataclass(frozen=True)
class EncodingGraph:
    """Graph with per-vertex roles.

    copy_of[v] is the inner-code copy of an output vertex (-1 otherwise);
    aux_block[v] is (copy, level, position) for an auxiliary vertex. Level is
    0 for ordinary concatenation and indexes the partition level otherwise.
    """

    graph: LabeledGraph
    roles: tuple[str, ...]
    copy_of: tuple[int, ...]
    aux_block: dict[int, tuple[int, int, int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.roles) != self.graph.n or len(self.copy_of) != self.graph.n:
            raise CodeError("role/copy tables do not match the vertex count")
        for v, role in enumerate(self.roles):
            if role not in (INPUT, AUXILIARY, OUTPUT):
                raise CodeError(f"unknown role {role!r}")
            if (role == OUTPUT) != (self.copy_of[v] >= 0):
                raise CodeError(f"vertex {v}: only outputs carry a copy index")
            if (role == AUXILIARY) != (v in self.aux_block):
                raise CodeError(f"vertex {v}: only auxiliaries carry a block position")
        self.check_structure()

    def vertices(self, role: str) -> list[int]:
        return [v for v, r in enumerate(self.roles) if r == role]

    @property
    def inputs(self) -> list[int]:
        return self.vertices(INPUT)

    @property
    def auxiliaries(self) -> list[int]:
        return self.vertices(AUXILIARY)

    @property
    def outputs(self) -> list[int]:
        return self.vertices(OUTPUT)

    def copy_outputs(self, copy: int) -> list[int]:
        return [v for v, c in enumerate(self.copy_of) if c == copy]

    def check_structure(self) -> None:
        # G^C of a plain graph code has no auxiliaries and keeps its input-output edges
        concatenated = bool(self.aux_block)
        for u, v, _ in self.graph.edges():
            ru, rv = self.roles[u], self.roles[v]
            pair = {ru, rv}
            if concatenated and pair == {INPUT, OUTPUT}:
                raise CodeError(f"input-output edge ({u}, {v}) in an encoding graph")
            if ru == rv == OUTPUT and self.copy_of[u] != self.copy_of[v]:
                raise CodeError(f"edge ({u}, {v}) joins outputs of different copies")
            if pair == {AUXILIARY, OUTPUT}:
                aux, out = (u, v) if ru == AUXILIARY else (v, u)
                if self.aux_block[aux][0] != self.copy_of[out]:
                    raise CodeError(f"auxiliary {aux} touches output {out} of another copy")


def code_graph(q: CwsCode) -> EncodingGraph:
    """The graph G^C: k input vertices joined to the code graph with labels alpha_ij.

    Input vertices come first, followed by the n output vertices in code order.
    Any full-rank generator is accepted; standard form only fixes which basis is drawn.
    """
    gen = q.classical.generators
    if gen is None:
        raise CodeError("code_graph needs a linear classical code")
    k, n, p = gen.rows, q.n, q.p
    a = np.zeros((k + n, k + n), dtype=np.int64)
    a[k:, k:] = q.graph.array
    a[:k, k:] = gen.array
    a[k:, :k] = gen.array.T
    roles = (INPUT,) * k + (OUTPUT,) * n
    return EncodingGraph(LabeledGraph(FpMatrix(a, p)), roles, (-1,) * k + (0,) * n)


def read_generator(enc: EncodingGraph) -> FpMatrix:
    """Generator rows read off the input-to-output edge labels."""
    ins, outs = enc.inputs, enc.outputs
    return FpMatrix(enc.graph.array[np.ix_(ins, outs)], enc.graph.p)


def strip_inputs(enc: EncodingGraph) -> LabeledGraph:
    return enc.graph.induced(enc.outputs)


@dataclass(frozen=True)
class Level:
    """One block of auxiliaries: an outer code and the inner rows its symbols drive."""

    outer: CwsCode
    rows: IntArray  # shape (block size, n)


def build_encoding_graph(inner_graph: LabeledGraph, levels: Sequence[Level]) -> EncodingGraph:
    """Assemble inputs, auxiliaries and n' copies of the inner graph.

    Vertex order: inputs of every linear outer code (level by level), then the
    auxiliaries of every level (outer vertex order), then outputs copy-major.
    Inputs are only emitted when every outer code is linear.
    """
    p, n = inner_graph.p, inner_graph.n
    if not levels:
        raise CodeError("at least one level is required")
    copies = {lvl.outer.n // lvl.outer.block_size for lvl in levels}
    if len(copies) != 1:
        raise CodeError(f"outer codes disagree on the number of blocks: {sorted(copies)}")
    n_out = copies.pop()
    for lvl in levels:
        if lvl.outer.p != p:
            raise FieldError(f"inner over p={p}, outer over p={lvl.outer.p}")
        m = lvl.outer.block_size
        if lvl.rows.shape != (m, n):
            raise CodeError(
                f"outer block size {m} needs {m} inner rows of length {n}, got shape {lvl.rows.shape}"
            )
        if np.any(np.all(np.mod(lvl.rows, p) == 0, axis=1)):
            raise CodeError("an inner generator row is zero")
    with_inputs = all(lvl.outer.classical.is_linear for lvl in levels)
    n_in = sum(lvl.outer.classical.k for lvl in levels) if with_inputs else 0
    n_aux = sum(lvl.outer.n for lvl in levels)
    total = n_in + n_aux + n * n_out
    a = np.zeros((total, total), dtype=np.int64)
    roles = [INPUT] * n_in + [AUXILIARY] * n_aux + [OUTPUT] * (n * n_out)
    copy_of = [-1] * (n_in + n_aux) + [i for i in range(n_out) for _ in range(n)]
    aux_block: dict[int, tuple[int, int, int]] = {}
    out0 = n_in + n_aux
    for i in range(n_out):
        sl = slice(out0 + i * n, out0 + (i + 1) * n)
        a[sl, sl] = inner_graph.array
    in_pos, aux_pos = 0, n_in
    for level_index, lvl in enumerate(levels):
        outer, m = lvl.outer, lvl.outer.block_size
        aux = list(range(aux_pos, aux_pos + outer.n))
        a[np.ix_(aux, aux)] = outer.graph.array
        if with_inputs:
            gen = outer.classical.generators.array  # type: ignore[union-attr]
            ins = list(range(in_pos, in_pos + gen.shape[0]))
            a[np.ix_(ins, aux)] = gen
            a[np.ix_(aux, ins)] = gen.T
            in_pos += gen.shape[0]
        for local, v in enumerate(aux):
            copy, t = divmod(local, m)
            aux_block[v] = (copy, level_index, t)
            outs = list(range(out0 + copy * n, out0 + (copy + 1) * n))
            a[v, outs] = lvl.rows[t]
            a[outs, v] = lvl.rows[t]
        aux_pos += outer.n
    a = np.mod(a, p)
    return EncodingGraph(LabeledGraph(FpMatrix(a, p)), tuple(roles), tuple(copy_of), aux_block)


def encoding_graph(inner: CwsCode, outer: CwsCode) -> EncodingGraph:
    """Encoding graph of inner (.) outer; the outer block size must equal the inner dimension."""
    gen = inner.classical.generators
    if gen is None:
        raise CodeError("the inner code must be a graph code (linear classical part)")
    if outer.block_size != gen.rows:
        raise CodeError(
            f"outer block size {outer.block_size} differs from inner dimension {gen.rows}"
        )
    return build_encoding_graph(inner.graph, [Level(outer, gen.array)])


def interleave_copies(codes: Sequence[CwsCode]) -> CwsCode:
    """Combine m codes of equal length n' into one code over p^m written as n' blocks of m.

    Block i holds vertex i of every constituent, in the given order.
    """
    if not codes:
        raise CodeError("nothing to interleave")
    m, n_out, p = len(codes), codes[0].n, codes[0].p
    if any(c.n != n_out or c.p != p for c in codes):
        raise CodeError("constituent codes must share length and modulus")
    size = m * n_out
    a = np.zeros((size, size), dtype=np.int64)
    for t, c in enumerate(codes):
        idx = [i * m + t for i in range(n_out)]
        a[np.ix_(idx, idx)] = c.graph.array
    graph = LabeledGraph(FpMatrix(a, p))
    if all(c.classical.is_linear for c in codes):
        rows = []
        for t, c in enumerate(codes):
            for row in c.classical.generators.array:  # type: ignore[union-attr]
                full = np.zeros(size, dtype=np.int64)
                full[[i * m + t for i in range(n_out)]] = row
                rows.append(full)
        classical = ClassicalCode(p, size, generators=np.array(rows))
    else:
        words = []
        for combo in itertools.product(*(c.classical.words() for c in codes)):
            full = np.zeros(size, dtype=np.int64)
            for t, w in enumerate(combo):
                full[[i * m + t for i in range(n_out)]] = w
            words.append(tuple(full))
        classical = ClassicalCode(p, size, words=words)
    return CwsCode(graph, classical, block_size=m)


def apply_generator(rows: IntArray, symbols: npt.ArrayLike, p: int) -> IntArray:
    """Blockwise encoding: symbols (n' x m) -> concatenated word of length n' * n."""
    sym = np.asarray(symbols, dtype=np.int64)
    return matmul_mod(sym, rows, p).reshape(-1)
