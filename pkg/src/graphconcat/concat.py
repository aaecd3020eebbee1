"""Graph concatenation of CWS codes.

Two independent routes produce the concatenated graph:

* `concat_glc` runs the auxiliary-vertex elimination on an encoding graph:
  detach each auxiliary from its inner copy, apply a generalized local
  complementation with the detached labels as support, then delete the
  auxiliaries.
* `concat_theorem1` evaluates the closed form
  G_c = G_in (x) I_n' + (1 b)^T (1 b) (x) G_out for single-qupit inner codes.

The GLC route emits outputs copy-major (vertex copy * n + j); the closed form
is inner-major.  `shuffle_permutation` maps between them.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from graphconcat.algebra import (
    FieldError,
    FpMatrix,
    IntArray,
    rank,
    row_space_equal,
    rref_array,
)
from graphconcat.codes import (
    AUXILIARY,
    INPUT,
    ClassicalCode,
    CwsCode,
    EncodingGraph,
    Level,
    apply_generator,
    build_encoding_graph,
    read_generator,
)
from graphconcat.graph import GraphError, LabeledGraph, glc_array


class ConcatError(ValueError):
    """Raised when a concatenation cannot be formed or a structural check fails."""


@dataclass(frozen=True)
class GlcOutcome:
    """Graph on the output vertices, and inputs + outputs when the encoding graph had inputs."""

    graph: LabeledGraph
    retained_input_graph: EncodingGraph | None


@dataclass(frozen=True)
class ConcatResult:
    """The concatenated code (G_c, C_c).

    `retained_input_graph` is G_c^{C_c} (inputs first, then outputs) and is
    only present when every outer classical code is linear.
    """

    code: CwsCode
    retained_input_graph: EncodingGraph | None = None
    encoding: EncodingGraph | None = None


# -- classical side ----------------------------------------------------------------


def concat_classical(inner: ClassicalCode, outer: ClassicalCode, block_size: int | None = None) -> ClassicalCode:
    """Blockwise classical concatenation, copy-major.

    Each outer word is read as n' blocks (r_1..r_k); block i becomes
    sum_t r_t * alpha_t where alpha_t are the inner generator rows.
    """
    if inner.generators is None:
        raise ConcatError("the inner classical code must be linear")
    if inner.p != outer.p:
        raise FieldError(f"cannot mix moduli {inner.p} and {outer.p}")
    rows = inner.generators.array
    k = rows.shape[0]
    if block_size is not None and block_size != k:
        raise ConcatError(f"outer block size {block_size} differs from inner dimension {k}")
    if outer.n % k:
        raise ConcatError(f"outer length {outer.n} is not a multiple of the inner dimension {k}")
    return _blockwise([outer], [rows], inner.p)


def _blockwise(outers: Sequence[ClassicalCode], rows: Sequence[IntArray], p: int) -> ClassicalCode:
    """Sum over levels of the blockwise images of the outer words."""
    n = rows[0].shape[1]
    n_out = outers[0].n // rows[0].shape[0]
    length = n_out * n
    if all(o.is_linear for o in outers):
        mapped = [
            apply_generator(r, g.reshape(n_out, r.shape[0]), p)
            for o, r in zip(outers, rows)
            for g in o.generators.array  # type: ignore[union-attr]
        ]
        gens = np.array(mapped, dtype=np.int64).reshape(-1, length)
        return ClassicalCode(p, length, generators=gens)
    images = [
        [apply_generator(r, w.reshape(n_out, r.shape[0]), p) for w in o.words()]
        for o, r in zip(outers, rows)
    ]
    words = [tuple(np.mod(np.sum(combo, axis=0), p)) for combo in itertools.product(*images)]
    return ClassicalCode(p, length, words=words)


def kronecker_generator(b: npt.ArrayLike, outer_generator: npt.ArrayLike, p: int) -> FpMatrix:
    """(1 b) (x) C_out: the inner-major generator of the concatenated classical code."""
    row = np.concatenate([[1], np.asarray(b, dtype=np.int64)]).reshape(1, -1)
    return FpMatrix(np.kron(row, np.atleast_2d(np.asarray(outer_generator, dtype=np.int64))), p)


# -- graph side --------------------------------------------------------------------


def shuffle_permutation(n: int, n_out: int) -> list[int]:
    """perm[inner-major index j * n' + i] = copy-major index i * n + j."""
    return [i * n + j for j in range(n) for i in range(n_out)]


def aux_supports(enc: EncodingGraph) -> dict[int, IntArray]:
    """Labeled edge vector from each auxiliary into the outputs of its own copy."""
    a = enc.graph.array
    supports = {}
    for v in enc.auxiliaries:
        own = enc.copy_outputs(enc.aux_block[v][0])
        s = np.zeros(enc.graph.n, dtype=np.int64)
        s[own] = a[v, own]
        if not np.any(s):
            raise ConcatError(f"auxiliary {v} has no edges into its inner copy")
        supports[v] = s
    return supports


def concat_glc(
    enc: EncodingGraph,
    order: Sequence[int] | None = None,
    on_step: Callable[[int, IntArray], None] | None = None,
) -> GlcOutcome:
    """Eliminate the auxiliary vertices of an encoding graph.

    `order` lists the auxiliaries in processing order (default ascending).
    `on_step(aux, adjacency)` sees the full adjacency after each move.
    """
    g = enc.graph
    p = g.p
    auxiliaries = enc.auxiliaries
    if order is None:
        order = auxiliaries
    elif sorted(order) != sorted(auxiliaries):
        raise ConcatError("processing order must be a permutation of the auxiliary vertices")
    supports = aux_supports(enc)
    a = g.array.copy()
    for v, s in supports.items():
        nz = np.flatnonzero(s)
        a[v, nz] = 0
        a[nz, v] = 0
    for v in order:
        s = supports[v]
        if np.any((s != 0) & (a[v] != 0)):
            raise GraphError(f"GLC precondition violated at auxiliary {v}")
        glc_array(a, v, s, p)
        if on_step is not None:
            on_step(v, a.copy())
    outs = enc.outputs
    graph = LabeledGraph(FpMatrix(a[np.ix_(outs, outs)], p))
    retained = None
    if enc.inputs:
        keep = [u for u in range(g.n) if enc.roles[u] != AUXILIARY]
        retained = EncodingGraph(
            LabeledGraph(FpMatrix(a[np.ix_(keep, keep)], p)),
            tuple(enc.roles[u] for u in keep),
            tuple(-1 if enc.roles[u] == INPUT else 0 for u in keep),
        )
    return GlcOutcome(graph, retained)


def concat_theorem1(g_in: LabeledGraph, b: npt.ArrayLike, g_out: LabeledGraph) -> LabeledGraph:
    """G_in (x) I_n' + (1 b)^T (1 b) (x) G_out, inner-major."""
    if g_in.p != g_out.p:
        raise FieldError(f"cannot mix moduli {g_in.p} and {g_out.p}")
    row = np.concatenate([[1], np.asarray(b, dtype=np.int64)])
    if row.size != g_in.n:
        raise ConcatError(f"b has length {row.size - 1}, expected {g_in.n - 1}")
    n_out = g_out.n
    adj = np.kron(g_in.array, np.eye(n_out, dtype=np.int64)) + np.kron(np.outer(row, row), g_out.array)
    return LabeledGraph(FpMatrix(adj, g_in.p))


def theorem1_copy_major(inner: CwsCode, outer: CwsCode) -> LabeledGraph:
    """Closed-form concatenated graph, reindexed copy-major.

    The inner generator must be a single row of the form (1 b).  Rescaling a
    row with another leading entry would describe the same inner code but a
    different concatenated graph, so it is rejected instead.
    """
    gen = inner.classical.generators
    if gen is None or gen.rows != 1 or outer.block_size != 1:
        raise ConcatError("the closed form needs a one-row inner generator and a qupit outer code")
    row = gen.array[0]
    if row[0] != 1:
        raise ConcatError("the closed form needs the inner generator in the form (1 b)")
    inner_major = concat_theorem1(inner.graph, row[1:], outer.graph)
    perm = shuffle_permutation(inner.n, outer.n)
    # copy-major vertex c is inner-major vertex perm^{-1}[c]
    return inner_major.permuted(np.argsort(perm))


def concat_codes(inner: CwsCode, outer: CwsCode) -> ConcatResult:
    """Q_in (.) Q_out as a CWS code (G_c, C_c), built by auxiliary elimination."""
    gen = inner.classical.generators
    if gen is None:
        raise ConcatError("the inner code must be a graph code")
    if outer.block_size != gen.rows:
        raise ConcatError(f"outer block size {outer.block_size} differs from inner dimension {gen.rows}")
    enc = build_encoding_graph(inner.graph, [Level(outer, gen.array)])
    outcome = concat_glc(enc)
    classical = concat_classical(inner.classical, outer.classical, outer.block_size)
    _check_readoff(outcome, classical)
    return ConcatResult(CwsCode(outcome.graph, classical), outcome.retained_input_graph, enc)


def _check_readoff(outcome: GlcOutcome, classical: ClassicalCode) -> None:
    if outcome.retained_input_graph is None:
        return
    read = read_generator(outcome.retained_input_graph)
    if classical.generators is None or read != classical.generators:
        raise ConcatError("input-vertex labels disagree with the concatenated classical generator")


def check_concatenation_structure(
    g_c: LabeledGraph, g_in: LabeledGraph, alpha: npt.ArrayLike, g_out: LabeledGraph
) -> None:
    """Assert the three-part structure of a k = 1 concatenated graph (copy-major).

    1. each copy induces G_in;
    2. no edges between copies outside the inner supports;
    3. v in S_i and w in S_j are joined with label alpha_v alpha_w G_out[i, j].
    """
    p, n, n_out = g_c.p, g_in.n, g_out.n
    alpha = np.mod(np.asarray(alpha, dtype=np.int64).ravel(), p)
    if g_c.n != n * n_out:
        raise ConcatError(f"expected {n * n_out} vertices, got {g_c.n}")
    a = g_c.array
    for i in range(n_out):
        block = a[i * n:(i + 1) * n, i * n:(i + 1) * n]
        if not np.array_equal(block, g_in.array):
            raise ConcatError(f"copy {i} does not induce the inner graph")
    expected = np.mod(np.outer(alpha, alpha), p)
    for i in range(n_out):
        for j in range(n_out):
            if i == j:
                continue
            block = a[i * n:(i + 1) * n, j * n:(j + 1) * n]
            want = np.mod(expected * g_out.array[i, j], p)
            outside = (alpha == 0)
            if np.any(block[:, outside]) or np.any(block[outside, :]):
                raise ConcatError(f"edges between copies {i} and {j} leave the inner supports")
            if not np.array_equal(block, want):
                raise ConcatError(f"support block ({i}, {j}) does not follow the outer graph")


# -- generalized concatenation -----------------------------------------------------


class PartitionChain:
    """Nested linear codes C^(0) > C^(1) > ... > C^(r-1) > {0}.

    Level j (1-based) splits C^(j-1) into cosets of C^(j); its coset
    representatives extend an rref basis of C^(j) with rref rows of C^(j-1).
    """

    def __init__(self, levels: Sequence[FpMatrix | npt.ArrayLike], p: int | None = None) -> None:
        mats = []
        for lvl in levels:
            if isinstance(lvl, FpMatrix):
                mats.append(lvl)
            else:
                if p is None:
                    raise ConcatError("a modulus is needed for raw level matrices")
                mats.append(FpMatrix(np.atleast_2d(np.asarray(lvl, dtype=np.int64)), p))
        if not mats:
            raise ConcatError("a partition chain needs at least one level")
        moduli = {m.p for m in mats}
        widths = {m.cols for m in mats}
        if len(moduli) != 1 or len(widths) != 1:
            raise ConcatError("all levels must share modulus and length")
        self.p = moduli.pop()
        self.n = widths.pop()
        self.levels = tuple(mats)
        dims = [rank(m) for m in mats]
        for m, d in zip(mats, dims):
            if d != m.rows:
                raise ConcatError("level generators must be linearly independent")
        for j in range(1, len(mats)):
            if dims[j] >= dims[j - 1] or rank(FpMatrix(np.vstack([mats[j - 1].array, mats[j].array]), self.p)) != dims[j - 1]:
                raise ConcatError(f"level {j} is not a proper subcode of level {j - 1}")
        self.dims = tuple(dims)

    @property
    def r(self) -> int:
        return len(self.levels)

    @property
    def drops(self) -> tuple[int, ...]:
        """Dimension drop at each level; the arity of level j is p ** drops[j]."""
        return tuple(d - e for d, e in zip(self.dims, self.dims[1:] + (0,)))

    @property
    def level_arities(self) -> tuple[int, ...]:
        return tuple(self.p**d for d in self.drops)

    def coset_rows(self) -> list[IntArray]:
        """Representative rows driving each level, shape (drop_j, n)."""
        out = []
        for j in range(self.r):
            below = self.levels[j + 1].array if j + 1 < self.r else np.zeros((0, self.n), dtype=np.int64)
            basis = rref_array(below, self.p)[0][: below.shape[0]] if below.shape[0] else below
            current, _, _ = rref_array(self.levels[j].array, self.p)
            chosen = []
            stack = basis
            for row in current[: self.dims[j]]:
                trial = np.vstack([stack, row])
                if rank(trial, self.p) > stack.shape[0]:
                    chosen.append(row)
                    stack = trial
            out.append(np.array(chosen, dtype=np.int64).reshape(-1, self.n))
        return out


def classical_gcc(chain: PartitionChain, outers: Sequence[ClassicalCode]) -> ClassicalCode:
    """Classical generalized concatenation, copy-major."""
    if len(outers) != chain.r:
        raise ConcatError(f"{chain.r} levels but {len(outers)} outer codes")
    rows = chain.coset_rows()
    n_outs = set()
    for j, (o, r) in enumerate(zip(outers, rows)):
        if o.p != chain.p:
            raise FieldError(f"cannot mix moduli {chain.p} and {o.p}")
        if o.n % r.shape[0]:
            raise ConcatError(f"outer code {j} length {o.n} is not a multiple of its block size {r.shape[0]}")
        n_outs.add(o.n // r.shape[0])
    if len(n_outs) != 1:
        raise ConcatError(f"outer codes disagree on the number of blocks: {sorted(n_outs)}")
    return _blockwise(outers, rows, chain.p)


def gcqc(inner: CwsCode, chain: PartitionChain, outers: Sequence[CwsCode]) -> ConcatResult:
    """Generalized concatenated code: one outer code per partition level."""
    gen = inner.classical.generators
    if gen is None:
        raise ConcatError("the inner code must be a graph code")
    if chain.p != inner.p or chain.n != inner.n:
        raise ConcatError("partition chain does not match the inner code")
    if not row_space_equal(chain.levels[0], gen):
        raise ConcatError("the top level of the chain must span the inner classical code")
    if len(outers) != chain.r:
        raise ConcatError(f"{chain.r} levels but {len(outers)} outer codes")
    rows = chain.coset_rows()
    for j, (o, r) in enumerate(zip(outers, rows)):
        if o.block_size != r.shape[0]:
            raise ConcatError(f"outer code {j} has block size {o.block_size}, level needs {r.shape[0]}")
    enc = build_encoding_graph(inner.graph, [Level(o, r) for o, r in zip(outers, rows)])
    outcome = concat_glc(enc)
    classical = classical_gcc(chain, [o.classical for o in outers])
    _check_readoff(outcome, classical)
    return ConcatResult(CwsCode(outcome.graph, classical), outcome.retained_input_graph, enc)
