"""Random instance generators shared by the test modules."""

from __future__ import annotations

import itertools

import numpy as np

from graphconcat.algebra import all_vectors, rank
from graphconcat.codes import ClassicalCode, CwsCode
from graphconcat.graph import GlcMove, LabeledGraph
from graphconcat.stabilizer import GraphCodeMatrices, symplectic_gram


def random_graph(n: int, p: int, rng: np.random.Generator, density: float = 0.5) -> LabeledGraph:
    upper = np.triu(rng.integers(1, p, size=(n, n)) * (rng.random((n, n)) < density), 1)
    return LabeledGraph(upper + upper.T, p)


def random_full_rank(k: int, n: int, p: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        m = rng.integers(0, p, size=(k, n))
        if rank(m, p) == k:
            return m


def random_standard_generator(k: int, n: int, p: int, rng: np.random.Generator) -> np.ndarray:
    return np.hstack([np.eye(k, dtype=np.int64), rng.integers(0, p, size=(k, n - k))])


def random_inner(n: int, p: int, rng: np.random.Generator) -> CwsCode:
    """k = 1 inner code with generator (1 b)."""
    row = rng.integers(0, p, size=n)
    row[0] = 1
    return CwsCode(random_graph(n, p, rng), ClassicalCode(p, n, generators=row.reshape(1, -1)))


def random_linear_code(n: int, k: int, p: int, rng: np.random.Generator, standard: bool = True) -> CwsCode:
    gen = random_standard_generator(k, n, p, rng) if standard else random_full_rank(k, n, p, rng)
    return CwsCode(random_graph(n, p, rng), ClassicalCode(p, n, generators=gen))


def random_word_code(n: int, size: int, p: int, rng: np.random.Generator, block_size: int = 1) -> CwsCode:
    """Nonlinear classical code: `size` distinct random words, always containing 0."""
    pool = [w for w in itertools.product(range(p), repeat=n) if any(w)]
    picks = rng.choice(len(pool), size=size - 1, replace=False)
    words = [tuple([0] * n)] + [pool[i] for i in picks]
    return CwsCode(random_graph(n, p, rng), ClassicalCode(p, n, words=words), block_size)


def random_move(g: LabeledGraph, rng: np.random.Generator) -> GlcMove:
    """A valid GLC move: random labels on vertices outside {i} and N(i)."""
    i = int(rng.integers(g.n))
    v = rng.integers(0, g.p, size=g.n)
    v[i] = 0
    v[g.array[i] != 0] = 0
    return GlcMove(i, tuple(int(x) for x in v))


def brute_force_distance(mats: GraphCodeMatrices) -> int:
    """Minimum weight over every Pauli commuting with S but outside S (full 4^n scan)."""
    p, n = mats.p, mats.n
    stab = mats.stabilizer.array
    vectors = all_vectors(2 * n, p)[1:]
    commuting = vectors[~np.any(symplectic_gram(vectors, stab, p), axis=1)]
    base = rank(stab, p)
    best = None
    for v in commuting:
        if rank(np.vstack([stab, v]), p) == base:
            continue
        w = int(np.count_nonzero((v[:n] != 0) | (v[n:] != 0)))
        best = w if best is None else min(best, w)
    return best
