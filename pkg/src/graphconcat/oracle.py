"""Simulator cross-checks that tie the graph-level constructions to encoding circuits."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from graphconcat.codes import CwsCode
from graphconcat.concat import PartitionChain
from graphconcat.simulator import (
    DEFAULT_MAX_AMPLITUDES,
    EncoderLevel,
    SimulationError,
    circuit_image,
    concat_encoder_image,
    cws_code_basis,
    graph_code_encoder_circuit,
    orthonormal_basis,
    projector_distance,
)


def code_space(code: CwsCode, max_amplitudes: int = DEFAULT_MAX_AMPLITUDES) -> list[np.ndarray]:
    """Codeword states Z^c |psi_G> for every classical word c."""
    if code.p**code.n > max_amplitudes:
        raise SimulationError(f"{code.n} qupits over p={code.p} exceed the amplitude cap")
    return cws_code_basis(code.graph, code.classical.words())


def check_codeword_independence(code: CwsCode, max_amplitudes: int = DEFAULT_MAX_AMPLITUDES) -> int:
    """Rank of the codeword states; raises RankDeficientBasis if below K."""
    return orthonormal_basis(code_space(code, max_amplitudes)).shape[1]


def graph_code_encoder_distance(code: CwsCode, max_amplitudes: int = DEFAULT_MAX_AMPLITUDES) -> float:
    """Projector distance between the graph-code encoder image and the codeword span."""
    gen = code.classical.generators
    if gen is None:
        raise ValueError("the encoder circuit needs a linear classical code")
    c = graph_code_encoder_circuit(code.graph, gen.array)
    outputs = list(range(gen.rows, gen.rows + code.n))
    image = circuit_image(c, outputs, max_amplitudes)
    return projector_distance(code_space(code, max_amplitudes), image)


def encoder_levels(outers: Sequence[CwsCode], rows: Sequence[np.ndarray]) -> list[EncoderLevel]:
    return [
        EncoderLevel(
            o.graph,
            None if o.classical.generators is None else o.classical.generators.array,
            np.asarray(r, dtype=np.int64),
        )
        for o, r in zip(outers, rows)
    ]


def concat_encoder_distance(
    result_code: CwsCode,
    inner: CwsCode,
    outers: Sequence[CwsCode],
    chain: PartitionChain | None = None,
    max_amplitudes: int = DEFAULT_MAX_AMPLITUDES,
) -> float:
    """Projector distance between the simulated concatenated encoder and span{Z^c |psi_Gc>}.

    Without a chain there is one outer code driven by the inner generator rows.
    """
    if chain is None:
        if len(outers) != 1 or inner.classical.generators is None:
            raise ValueError("plain concatenation needs one outer code and a linear inner code")
        rows = [inner.classical.generators.array]
    else:
        rows = chain.coset_rows()
    levels = encoder_levels(outers, rows)
    words = [None if o.classical.is_linear else list(o.classical.words()) for o in outers]
    image = concat_encoder_image(inner.graph, levels, words, max_amplitudes)
    return projector_distance(code_space(result_code, max_amplitudes), image)
