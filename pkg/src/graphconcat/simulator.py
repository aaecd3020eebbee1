"""Dense qupit state-vector simulation of graph-state and encoding circuits.

Qupits are allocated lazily: a circuit declares which qupits exist at the start
(its inputs); every other qupit enters through PrepareZero and leaves through
MeasurePostselectZero, so the amplitude tensor only ever holds live qupits.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import numpy.typing as npt

from graphconcat.algebra import check_prime
from graphconcat.graph import GlcMove, LabeledGraph, glc

DEFAULT_MAX_AMPLITUDES = 2**22
STATE_TOL = 1e-9
PROJECTOR_TOL = 1e-8


class SimulationError(RuntimeError):
    """Raised for impossible postselection, oversize states or malformed circuits."""


class RankDeficientBasis(SimulationError):
    """Raised when a list of states spans fewer dimensions than its length."""


@dataclass(frozen=True)
class PrepareZero:
    qupit: int


@dataclass(frozen=True)
class Hadamard:
    qupit: int


@dataclass(frozen=True)
class HadamardDagger:
    qupit: int


@dataclass(frozen=True)
class ControlledZ:
    control: int
    target: int
    weight: int = 1


@dataclass(frozen=True)
class PauliX:
    qupit: int
    power: int = 1


@dataclass(frozen=True)
class PauliZ:
    qupit: int
    power: int = 1


@dataclass(frozen=True)
class MeasurePostselectZero:
    qupit: int


Gate = PrepareZero | Hadamard | HadamardDagger | ControlledZ | PauliX | PauliZ | MeasurePostselectZero


@dataclass
class Circuit:
    """Gate list over qupits 0..qupit_count-1; `inputs` are live at the start."""

    p: int
    qupit_count: int
    inputs: tuple[int, ...] = ()
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self) -> None:
        check_prime(self.p)
        self.inputs = tuple(self.inputs)

    def append(self, gate: Gate) -> Circuit:
        self.gates.append(gate)
        return self

    def extend(self, gates: Iterable[Gate]) -> Circuit:
        self.gates.extend(gates)
        return self

    def validate(self) -> None:
        live = set(self.inputs)
        for gate in self.gates:
            touched = _gate_qupits(gate)
            for q in touched:
                if not 0 <= q < self.qupit_count:
                    raise SimulationError(f"{gate} touches qupit {q} outside 0..{self.qupit_count - 1}")
            if isinstance(gate, PrepareZero):
                if gate.qupit in live:
                    raise SimulationError(f"qupit {gate.qupit} prepared while already live")
                live.add(gate.qupit)
                continue
            for q in touched:
                if q not in live:
                    raise SimulationError(f"{gate} acts on qupit {q} which is not live")
            if isinstance(gate, ControlledZ) and gate.control == gate.target:
                raise SimulationError("controlled-Z needs two distinct qupits")
            if isinstance(gate, MeasurePostselectZero):
                live.discard(gate.qupit)


def _gate_qupits(gate: Gate) -> tuple[int, ...]:
    if isinstance(gate, ControlledZ):
        return (gate.control, gate.target)
    return (gate.qupit,)


@lru_cache(maxsize=None)
def omega(p: int) -> complex:
    return complex(np.exp(2j * np.pi / p))


@lru_cache(maxsize=None)
def hadamard_matrix(p: int) -> npt.NDArray[np.complex128]:
    """H with H|r^> = |r>, i.e. H[r, s] = w^(rs) / sqrt(p)."""
    r = np.arange(p)
    m = np.exp(2j * np.pi * np.outer(r, r) / p) / np.sqrt(p)
    m.flags.writeable = False
    return m


class DenseState:
    """Amplitude tensor with one axis per live qupit.

    `qupits[a]` is the circuit qupit id carried by axis a.
    """

    def __init__(self, amplitudes: npt.ArrayLike, p: int, qupits: Sequence[int] | None = None) -> None:
        p = check_prime(p)
        amps = np.asarray(amplitudes, dtype=np.complex128)
        m = int(round(np.log(amps.size) / np.log(p))) if amps.size > 1 else 0
        if p**m != amps.size:
            raise SimulationError(f"{amps.size} amplitudes is not a power of {p}")
        self.p = p
        self.amplitudes = amps.reshape((p,) * m) if m else amps.reshape(())
        self.qupits = list(range(m)) if qupits is None else list(qupits)
        if len(self.qupits) != m:
            raise SimulationError("qupit labels do not match the amplitude tensor")

    @classmethod
    def zero(cls, m: int, p: int, qupits: Sequence[int] | None = None) -> DenseState:
        amps = np.zeros(p**m, dtype=np.complex128)
        amps[0] = 1.0
        return cls(amps, p, qupits)

    @classmethod
    def basis(cls, digits: Sequence[int], p: int, qupits: Sequence[int] | None = None) -> DenseState:
        amps = np.zeros((p,) * len(digits), dtype=np.complex128)
        amps[tuple(int(d) % p for d in digits)] = 1.0
        return cls(amps.ravel(), p, qupits)

    @property
    def num_qupits(self) -> int:
        return len(self.qupits)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def vector(self, order: Sequence[int] | None = None) -> npt.NDArray[np.complex128]:
        """Flat amplitudes with axes arranged as `order` (default: ascending qupit id)."""
        order = sorted(self.qupits) if order is None else list(order)
        if sorted(order) != sorted(self.qupits):
            raise SimulationError(f"order {order} does not match live qupits {self.qupits}")
        axes = [self.qupits.index(q) for q in order]
        return np.transpose(self.amplitudes, axes).reshape(-1) if axes else self.amplitudes.reshape(1)

    def axis(self, qupit: int) -> int:
        try:
            return self.qupits.index(qupit)
        except ValueError:
            raise SimulationError(f"qupit {qupit} is not live") from None


def _apply_single(state: DenseState, qupit: int, matrix: npt.NDArray[np.complex128]) -> None:
    ax = state.axis(qupit)
    moved = np.tensordot(matrix, state.amplitudes, axes=([1], [ax]))
    state.amplitudes = np.moveaxis(moved, 0, ax)


def _diag_phase(state: DenseState, qupits: Sequence[int], exponent: npt.NDArray[np.int64]) -> None:
    """Multiply by w^exponent[digits of `qupits`]."""
    p = state.p
    shape = [1] * state.num_qupits
    axes = [state.axis(q) for q in qupits]
    phases = np.exp(2j * np.pi * np.mod(exponent, p) / p)
    # reorder phase tensor axes to match state axis order
    order = np.argsort(axes)
    phases = np.transpose(phases, order)
    for a in axes:
        shape[a] = p
    state.amplitudes = state.amplitudes * phases.reshape(shape)


def apply_gate(state: DenseState, gate: Gate, max_amplitudes: int = DEFAULT_MAX_AMPLITUDES) -> None:
    p = state.p
    r = np.arange(p)
    if isinstance(gate, PrepareZero):
        if gate.qupit in state.qupits:
            raise SimulationError(f"qupit {gate.qupit} is already live")
        if state.amplitudes.size * p > max_amplitudes:
            raise SimulationError(
                f"state would exceed {max_amplitudes} amplitudes ({state.num_qupits + 1} qupits)"
            )
        ket = np.zeros(p, dtype=np.complex128)
        ket[0] = 1.0
        state.amplitudes = np.multiply.outer(state.amplitudes, ket)
        state.qupits.append(gate.qupit)
    elif isinstance(gate, Hadamard):
        _apply_single(state, gate.qupit, hadamard_matrix(p))
    elif isinstance(gate, HadamardDagger):
        _apply_single(state, gate.qupit, hadamard_matrix(p).conj().T)
    elif isinstance(gate, PauliX):
        ax = state.axis(gate.qupit)
        state.amplitudes = np.roll(state.amplitudes, gate.power % p, axis=ax)
    elif isinstance(gate, PauliZ):
        _diag_phase(state, [gate.qupit], gate.power * r)
    elif isinstance(gate, ControlledZ):
        if gate.control == gate.target:
            raise SimulationError("controlled-Z needs two distinct qupits")
        _diag_phase(state, [gate.control, gate.target], gate.weight * np.outer(r, r))
    elif isinstance(gate, MeasurePostselectZero):
        ax = state.axis(gate.qupit)
        projected = np.take(state.amplitudes, 0, axis=ax)
        prob = float(np.vdot(projected, projected).real)
        total = float(np.vdot(state.amplitudes, state.amplitudes).real)
        if total == 0 or prob / total < 1e-12:
            raise SimulationError(f"impossible outcome 0 on qupit {gate.qupit} (probability {prob / max(total, 1e-300):.3g})")
        state.amplitudes = projected / np.sqrt(prob)
        state.qupits.pop(ax)
    else:
        raise SimulationError(f"unknown gate {gate!r}")


def simulate(
    c: Circuit,
    input: DenseState | None = None,
    max_amplitudes: int = DEFAULT_MAX_AMPLITUDES,
) -> DenseState:
    """Run the circuit; `input` covers c.inputs (default: all |0>)."""
    c.validate()
    if input is None:
        state = DenseState.zero(len(c.inputs), c.p, c.inputs)
    else:
        if input.p != c.p:
            raise SimulationError(f"input state is over p={input.p}, circuit over p={c.p}")
        if sorted(input.qupits) != sorted(c.inputs):
            raise SimulationError(f"input qupits {input.qupits} differ from circuit inputs {c.inputs}")
        state = DenseState(input.amplitudes.copy(), c.p, input.qupits)
    if state.amplitudes.size > max_amplitudes:
        raise SimulationError(f"input exceeds {max_amplitudes} amplitudes")
    for gate in c.gates:
        apply_gate(state, gate, max_amplitudes)
    return state


def circuit_image(
    c: Circuit, order: Sequence[int] | None = None, max_amplitudes: int = DEFAULT_MAX_AMPLITUDES
) -> list[npt.NDArray[np.complex128]]:
    """Output vectors for every computational-basis state of the circuit inputs."""
    out = []
    for digits in itertools.product(range(c.p), repeat=len(c.inputs)):
        state = simulate(c, DenseState.basis(digits, c.p, c.inputs), max_amplitudes)
        out.append(state.vector(order))
    return out


# -- states and circuits for graphs ------------------------------------------------


def graph_state_circuit(
    g: LabeledGraph, qupits: Sequence[int] | None = None, qupit_count: int | None = None
) -> Circuit:
    """Prepare |0>, apply H^dagger everywhere, then C_z^{g_ij} on every edge."""
    qupits = list(range(g.n)) if qupits is None else list(qupits)
    if len(qupits) != g.n:
        raise SimulationError("qupit map length differs from the vertex count")
    count = max(qupits, default=-1) + 1 if qupit_count is None else qupit_count
    c = Circuit(g.p, count)
    c.extend(PrepareZero(q) for q in qupits)
    c.extend(HadamardDagger(q) for q in qupits)
    for u, v, label in g.edges():
        c.append(ControlledZ(qupits[u], qupits[v], label))
    return c


def graph_state_vector(g: LabeledGraph) -> npt.NDArray[np.complex128]:
    """Closed form p^(-n/2) sum_x w^(sum_{i<j} g_ij x_i x_j) |x>, vertex 0 most significant."""
    p, n = g.p, g.n
    if n == 0:
        return np.ones(1, dtype=np.complex128)
    digits = np.indices((p,) * n).reshape(n, -1)
    upper = np.triu(g.array, 1)
    exponent = np.einsum("ia,ij,ja->a", digits, upper, digits) % p
    return np.exp(2j * np.pi * exponent / p) / np.sqrt(float(p) ** n)


def z_phase_vector(word: npt.ArrayLike, p: int) -> npt.NDArray[np.complex128]:
    """Diagonal of Z^word over the computational basis."""
    word = np.asarray(word, dtype=np.int64)
    n = word.size
    if n == 0:
        return np.ones(1, dtype=np.complex128)
    digits = np.indices((p,) * n).reshape(n, -1)
    return np.exp(2j * np.pi * (word @ digits % p) / p)


def cws_codeword_state(g: LabeledGraph, word: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """Z^word |psi_G>."""
    word = np.asarray(word, dtype=np.int64)
    if word.size != g.n:
        raise SimulationError(f"word of length {word.size} for a graph on {g.n} vertices")
    return z_phase_vector(word, g.p) * graph_state_vector(g)


def cws_code_basis(g: LabeledGraph, words: Iterable[npt.ArrayLike]) -> list[npt.NDArray[np.complex128]]:
    return [cws_codeword_state(g, w) for w in words]


def graph_code_encoder_circuit(g: LabeledGraph, generator: npt.ArrayLike) -> Circuit:
    """Graph-code encoder: k input qupits (ids 0..k-1) and n outputs (ids k..k+n-1)."""
    gen = np.mod(np.atleast_2d(np.asarray(generator, dtype=np.int64)), g.p)
    if gen.size == 0:
        gen = gen.reshape(0, g.n)
    k, n = gen.shape
    if n != g.n:
        raise SimulationError("generator length differs from the vertex count")
    inputs = list(range(k))
    outputs = list(range(k, k + n))
    c = Circuit(g.p, k + n, tuple(inputs))
    c.extend(graph_state_circuit(g, outputs).gates)
    _attach_encoder(c, inputs, outputs, gen)
    c.extend(MeasurePostselectZero(q) for q in inputs)
    return c


def _attach_encoder(c: Circuit, controls: Sequence[int], targets: Sequence[int], rows: np.ndarray) -> None:
    """H^dagger on controls, C_z^{rows[t, j]} control t -> target j, then H on controls."""
    c.extend(HadamardDagger(q) for q in controls)
    for t, q in enumerate(controls):
        for j, label in enumerate(rows[t]):
            if label:
                c.append(ControlledZ(q, targets[j], int(label)))
    c.extend(Hadamard(q) for q in controls)


def glc_circuit(f: LabeledGraph, move: GlcMove) -> Circuit:
    """Graph-state circuit of f followed by H^dagger_i, C_z^{v_j}(i, j), H_i."""
    move.validate(f)
    c = graph_state_circuit(f)
    v = move.vector(f.p)
    c.append(HadamardDagger(move.vertex))
    for j in np.flatnonzero(v):
        c.append(ControlledZ(move.vertex, int(j), int(v[j])))
    c.append(Hadamard(move.vertex))
    return c


def states_equal_up_to_phase(
    a: npt.NDArray[np.complex128], b: npt.NDArray[np.complex128], tol: float = STATE_TOL
) -> bool:
    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    if a.shape != b.shape:
        return False
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        return na == nb
    overlap = abs(np.vdot(a, b)) / (na * nb)
    return bool(1.0 - overlap <= tol)


def theorem2_verify(
    f: LabeledGraph, move: GlcMove, tol: float = STATE_TOL, max_amplitudes: int = DEFAULT_MAX_AMPLITUDES
) -> bool:
    """Check by simulation that the H^dagger / C_z / H sandwich at `move` prepares the GLC graph state."""
    if f.p**f.n > max_amplitudes:
        raise SimulationError(f"{f.n} qupits over p={f.p} exceed the amplitude cap")
    state = simulate(glc_circuit(f, move), max_amplitudes=max_amplitudes)
    return states_equal_up_to_phase(state.vector(), graph_state_vector(glc(f, move)), tol)


# -- subspace comparison -----------------------------------------------------------


def orthonormal_basis(
    vectors: Sequence[npt.ArrayLike], rank_tol: float = 1e-9, allow_deficient: bool = False
) -> npt.NDArray[np.complex128]:
    """Columns spanning the same space; raises RankDeficientBasis unless allowed."""
    if len(vectors) == 0:
        raise SimulationError("empty basis")
    m = np.column_stack([np.asarray(v, dtype=np.complex128).ravel() for v in vectors])
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    r = int(np.sum(s > rank_tol * max(s[0], 1e-300)))
    if r < m.shape[1] and not allow_deficient:
        raise RankDeficientBasis(f"{m.shape[1]} vectors span only {r} dimensions")
    return u[:, :r]


def projector_distance(
    basis_a: Sequence[npt.ArrayLike], basis_b: Sequence[npt.ArrayLike], allow_deficient: bool = False
) -> float:
    qa = orthonormal_basis(basis_a, allow_deficient=allow_deficient)
    qb = orthonormal_basis(basis_b, allow_deficient=allow_deficient)
    if qa.shape[0] != qb.shape[0]:
        raise SimulationError(f"ambient dimensions differ: {qa.shape[0]} vs {qb.shape[0]}")
    # ||P_a - P_b||_F^2 = ||(I - P_b) Q_a||_F^2 + ||(I - P_a) Q_b||_F^2; the residual form
    # avoids forming dim x dim projectors and the cancellation in r_a + r_b - 2 ||Q_a^H Q_b||^2
    res_a = qa - qb @ (qb.conj().T @ qa)
    res_b = qb - qa @ (qa.conj().T @ qb)
    return float(np.sqrt(np.linalg.norm(res_a) ** 2 + np.linalg.norm(res_b) ** 2))


def subspace_equal(
    basis_a: Sequence[npt.ArrayLike],
    basis_b: Sequence[npt.ArrayLike],
    tol: float = PROJECTOR_TOL,
    allow_deficient: bool = False,
) -> bool:
    """True iff both lists span the same subspace (projector Frobenius distance <= tol)."""
    return projector_distance(basis_a, basis_b, allow_deficient) <= tol


# -- concatenated encoders ---------------------------------------------------------


@dataclass(frozen=True)
class EncoderLevel:
    """One outer code and the inner rows its auxiliary qupits drive.

    `rows` has one row per qupit of an outer block (block size x inner length).
    """

    outer_graph: LabeledGraph
    outer_generator: npt.NDArray[np.int64] | None
    rows: npt.NDArray[np.int64]


@dataclass(frozen=True)
class EncoderLayout:
    """Qupit ids of a concatenated encoder: inputs, auxiliaries per level, outputs copy-major."""

    inputs: tuple[int, ...]
    auxiliaries: tuple[tuple[int, ...], ...]
    outputs: tuple[int, ...]


def concat_encoder_circuit(
    inner_graph: LabeledGraph,
    levels: Sequence[EncoderLevel],
    words: Sequence[npt.ArrayLike | None] | None = None,
) -> tuple[Circuit, EncoderLayout]:
    """Encoder of a (generalized) concatenated code built from the constituent circuits.

    Linear levels get input qupits and the graph-code encoder onto their
    auxiliaries.  A level without a generator is a nonlinear CWS outer code; its
    auxiliaries are prepared in Z^word |psi_G_out> for the given word.  Every
    auxiliary is then attached to its own inner copy with the H^dagger / C_z / H
    sandwich and measured.  Gates on different copies commute, so each copy is
    completed before the next one is prepared.
    """
    p, n = inner_graph.p, inner_graph.n
    words = [None] * len(levels) if words is None else list(words)
    if len(words) != len(levels):
        raise SimulationError("one word slot per level is required")
    n_out = {lvl.outer_graph.n // lvl.rows.shape[0] for lvl in levels}
    if len(n_out) != 1:
        raise SimulationError("levels disagree on the number of inner copies")
    copies = n_out.pop()
    k_in = [0 if lvl.outer_generator is None else lvl.outer_generator.shape[0] for lvl in levels]
    n_in = sum(k_in)
    aux_ids, pos = [], n_in
    for lvl in levels:
        aux_ids.append(tuple(range(pos, pos + lvl.outer_graph.n)))
        pos += lvl.outer_graph.n
    outputs = tuple(range(pos, pos + copies * n))
    c = Circuit(p, pos + copies * n, tuple(range(n_in)))
    in_pos = 0
    for lvl, aux, word in zip(levels, aux_ids, words):
        c.extend(graph_state_circuit(lvl.outer_graph, aux).gates)
        if lvl.outer_generator is None:
            if word is None:
                raise SimulationError("a nonlinear level needs an outer word")
            for q, power in zip(aux, np.mod(np.asarray(word, dtype=np.int64), p)):
                if power:
                    c.append(PauliZ(q, int(power)))
        else:
            ins = list(range(in_pos, in_pos + lvl.outer_generator.shape[0]))
            _attach_encoder(c, ins, aux, np.mod(lvl.outer_generator, p))
            c.extend(MeasurePostselectZero(q) for q in ins)
            in_pos += len(ins)
    # auxiliaries only touch their own copy, so copies are finished one at a time
    # to keep the number of live qupits low
    for i in range(copies):
        block = outputs[i * n:(i + 1) * n]
        c.extend(graph_state_circuit(inner_graph, block).gates)
        for lvl, aux in zip(levels, aux_ids):
            m = lvl.rows.shape[0]
            for t in range(m):
                _attach_encoder(c, [aux[i * m + t]], block, np.mod(lvl.rows[t:t + 1], p))
        for lvl, aux in zip(levels, aux_ids):
            m = lvl.rows.shape[0]
            c.extend(MeasurePostselectZero(q) for q in aux[i * m:(i + 1) * m])
    return c, EncoderLayout(tuple(range(n_in)), tuple(aux_ids), outputs)


def concat_encoder_image(
    inner_graph: LabeledGraph,
    levels: Sequence[EncoderLevel],
    outer_words: Sequence[Sequence[npt.ArrayLike] | None] | None = None,
    max_amplitudes: int = DEFAULT_MAX_AMPLITUDES,
) -> list[npt.NDArray[np.complex128]]:
    """States spanning the encoder image: basis inputs x every word of each nonlinear level."""
    outer_words = [None] * len(levels) if outer_words is None else list(outer_words)
    choices = [[None] if ws is None else list(ws) for ws in outer_words]
    out = []
    for combo in itertools.product(*choices):
        c, layout = concat_encoder_circuit(inner_graph, levels, combo)
        out.extend(circuit_image(c, layout.outputs, max_amplitudes))
    return out
