"""Minimum-distance certification for stabilizer and CWS codes.

* `stabilizer_distance_coset` scans every element of S * (nontrivial logical
  classes).  The scan is split in two tables: all combinations of a prefix of
  the stabilizer rows (built in reflected Gray-code order, one generator step per
  entry), and all remaining combinations with a nonzero logical part.  Each pair
  is one element of the coset space, and its weight is computed vectorized;
  for p = 2 with n <= 64 vectors are bit-packed and weights are popcounts.
* `undetectable_weight_search` certifies d > w by matching stabilizer syndromes
  of half-weight errors.
* `logical_weight_upper_bound` substitutes inner logical operators into outer
  ones and keeps the lightest product that is verified to be a nontrivial logical.
* `kl_verify` checks the Knill-Laflamme conditions on dense codeword states.
"""

from __future__ import annotations

import itertools
import math
import time
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from graphconcat.algebra import IntArray, all_vectors, in_row_space, matmul_mod
from graphconcat.stabilizer import GraphCodeMatrices, symplectic_gram

DEFAULT_BUDGET = 2**28
KL_TOL = 1e-8

# largest first-half table and largest block of pair weights held at once
_TABLE_CAP = 2**20
_BLOCK_CAP = 2**22

EXACT = "exact"
LOWER = "lower"
UPPER = "upper"


class DistanceBudgetError(RuntimeError):
    """Raised when a search would exceed its element budget."""


@dataclass(frozen=True)
class DistanceReport:
    """Outcome of a distance computation.

    `kind` is "exact" (d = value), "lower" (d > value) or "upper" (d <= value).
    `witness` is a symplectic vector (x | z) of a nontrivial logical operator.
    """

    method: str
    value: int
    kind: str
    witness: IntArray | None = None
    elapsed: float = 0.0
    examined: int = 0

    def __str__(self) -> str:
        sign = {EXACT: "=", LOWER: ">", UPPER: "<="}[self.kind]
        return f"d {sign} {self.value}"


# -- helpers -----------------------------------------------------------------------


def pauli_weight(vectors: npt.ArrayLike, n: int) -> IntArray:
    """Number of qupits on which each (x | z) row acts nontrivially."""
    v = np.atleast_2d(np.asarray(vectors))
    return np.count_nonzero((v[:, :n] != 0) | (v[:, n:] != 0), axis=1)


def is_nontrivial_logical(vector: npt.ArrayLike, mats: GraphCodeMatrices) -> bool:
    """Commutes with the stabilizer but is not a stabilizer element (up to phase)."""
    p = mats.p
    v = np.mod(np.asarray(vector, dtype=np.int64).reshape(1, -1), p)
    if np.any(symplectic_gram(v, mats.stabilizer.array, p)):
        return False
    return not in_row_space(v, mats.stabilizer.generators)


def coset_space_size(mats: GraphCodeMatrices) -> int:
    p, r, k = mats.p, mats.stabilizer.k, mats.k
    return p**r * (p ** (2 * k) - 1)


def gray_code_span(rows: npt.ArrayLike, p: int) -> tuple[IntArray, IntArray]:
    """All combinations of `rows` in reflected p-ary Gray-code order.

    Returns (elements, coefficients); consecutive entries differ by +-1 times a
    single generator.
    """
    rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
    m, length = rows.shape
    elems = np.zeros((1, length), dtype=np.int64)
    coeffs = np.zeros((1, m), dtype=np.int64)
    for t in range(m):
        elem_blocks, coeff_blocks = [], []
        for c in range(p):
            e, k = (elems, coeffs) if c % 2 == 0 else (elems[::-1], coeffs[::-1])
            elem_blocks.append(np.mod(e + c * rows[t], p))
            k = k.copy()
            k[:, t] = c
            coeff_blocks.append(k)
        elems = np.concatenate(elem_blocks)
        coeffs = np.concatenate(coeff_blocks)
    return elems, coeffs


def _pack_bits(vectors: IntArray) -> npt.NDArray[np.uint64]:
    """Rows of 0/1 entries (at most 64 columns) packed into one uint64 each."""
    weights = np.left_shift(np.uint64(1), np.arange(vectors.shape[1], dtype=np.uint64))
    return (vectors.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)


# -- exact distance ----------------------------------------------------------------


def stabilizer_distance_coset(
    mats: GraphCodeMatrices, budget: int = DEFAULT_BUDGET, threads: int = 1
) -> DistanceReport:
    """Exact distance: minimum weight over S * (nontrivial logical classes)."""
    start = time.perf_counter()
    p, n, k = mats.p, mats.n, mats.k
    if k == 0:
        raise ValueError("the coset distance needs at least one logical qupit")
    total = coset_space_size(mats)
    if total > budget:
        raise DistanceBudgetError(
            f"{total} coset elements exceed the budget of {budget}; try undetectable_weight_search"
        )
    stab = mats.stabilizer.array
    logicals = np.vstack([mats.logical_x.array, mats.logical_z.array])
    r = stab.shape[0]
    h = r
    while p**h > _TABLE_CAP:
        h -= 1
    first, _ = gray_code_span(stab[:h], p)
    rest, _ = gray_code_span(stab[h:], p) if h < r else (np.zeros((1, 2 * n), dtype=np.int64), None)
    logical_part = gray_code_span(logicals, p)[0][1:]  # drop the trivial class
    second = np.mod(rest[:, None, :] + logical_part[None, :, :], p).reshape(-1, 2 * n)

    if p == 2 and n <= 64:
        a_x, a_z = _pack_bits(first[:, :n]), _pack_bits(first[:, n:])
        b_x, b_z = _pack_bits(second[:, :n]), _pack_bits(second[:, n:])

        def block_weights(lo: int, hi: int) -> IntArray:
            x = a_x[None, :] ^ b_x[lo:hi, None]
            z = a_z[None, :] ^ b_z[lo:hi, None]
            return np.bitwise_count(x | z)

    else:

        def block_weights(lo: int, hi: int) -> IntArray:
            s = np.mod(first[None, :, :] + second[lo:hi, None, :], p)
            return np.count_nonzero((s[..., :n] != 0) | (s[..., n:] != 0), axis=2)

    step = max(1, _BLOCK_CAP // (first.shape[0] * (1 if p == 2 else 2 * n)))
    blocks = [(lo, min(lo + step, second.shape[0])) for lo in range(0, second.shape[0], step)]

    def scan(block: tuple[int, int]) -> tuple[int, int]:
        lo, hi = block
        w = block_weights(lo, hi)
        flat = int(np.argmin(w))
        return int(w.reshape(-1)[flat]), lo * first.shape[0] + flat

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(scan, blocks))
    else:
        results = [scan(b) for b in blocks]
    # ties resolve to the earliest enumeration index, so the shard count never matters
    weight, index = min(results)
    ib, ia = divmod(index, first.shape[0])
    witness = np.mod(first[ia] + second[ib], p)
    if int(pauli_weight(witness, n)[0]) != weight or not is_nontrivial_logical(witness, mats):
        raise AssertionError("coset search produced an invalid witness")
    return DistanceReport("coset", weight, EXACT, witness, time.perf_counter() - start, total)


# -- lower bound by syndrome matching ----------------------------------------------


def _single_qupit_paulis(p: int) -> IntArray:
    return all_vectors(2, p)[1:]


def _errors_up_to(n: int, w: int, p: int) -> tuple[IntArray, list[tuple[int, ...]]]:
    """All Paulis of weight <= w as (x | z) rows, with their supports."""
    letters = _single_qupit_paulis(p)
    rows, supports = [np.zeros(2 * n, dtype=np.int64)], [()]
    for t in range(1, w + 1):
        for support in itertools.combinations(range(n), t):
            for choice in itertools.product(range(len(letters)), repeat=t):
                v = np.zeros(2 * n, dtype=np.int64)
                for q, c in zip(support, choice):
                    v[q], v[n + q] = letters[c]
                rows.append(v)
                supports.append(support)
    return np.array(rows), supports


def candidate_count(n: int, w: int, p: int) -> int:
    return sum(math.comb(n, t) * (p * p - 1) ** t for t in range(w + 1))


def undetectable_weight_search(
    mats: GraphCodeMatrices, max_weight: int, budget: int = DEFAULT_BUDGET
) -> DistanceReport:
    """Certify d > max_weight, or return a lightest nontrivial logical of weight <= max_weight.

    Every Pauli E of weight <= w splits as E1 E2 with weight(E1) <= ceil(w/2) and
    weight(E2) <= floor(w/2).  E is a nontrivial logical exactly when the
    stabilizer syndromes of E1 and -E2 agree and the logical syndromes do not.
    """
    start = time.perf_counter()
    p, n = mats.p, mats.n
    covered = candidate_count(n, max_weight, p)
    if covered > budget:
        raise DistanceBudgetError(f"{covered} candidates exceed the budget of {budget}")
    if max_weight <= 0:
        return DistanceReport("weight_search", 0, LOWER, None, time.perf_counter() - start, 1)
    stab = mats.stabilizer.array
    logicals = np.vstack([mats.logical_x.array, mats.logical_z.array])
    big = (max_weight + 1) // 2
    errors, _ = _errors_up_to(n, big, p)
    stab_syn = symplectic_gram(errors, stab, p)
    log_syn = symplectic_gram(errors, logicals, p)
    small = pauli_weight(errors, n) <= max_weight // 2
    table: dict[bytes, list[int]] = {}
    for idx in np.flatnonzero(small):
        key = np.mod(-stab_syn[idx], p).astype(np.uint8).tobytes()
        table.setdefault(key, []).append(int(idx))
    best: tuple[int, IntArray] | None = None
    for i in range(errors.shape[0]):
        partners = table.get(stab_syn[i].astype(np.uint8).tobytes())
        if not partners:
            continue
        part = np.array(partners)
        nontrivial = np.any(np.mod(log_syn[part] + log_syn[i], p) != 0, axis=1)
        if not np.any(nontrivial):
            continue
        combos = np.mod(errors[part[nontrivial]] + errors[i], p)
        weights = pauli_weight(combos, n)
        j = int(np.argmin(weights))
        if best is None or weights[j] < best[0]:
            best = (int(weights[j]), combos[j])
    elapsed = time.perf_counter() - start
    if best is None:
        return DistanceReport("weight_search", max_weight, LOWER, None, elapsed, covered)
    if not is_nontrivial_logical(best[1], mats):
        raise AssertionError("syndrome search produced an invalid witness")
    return DistanceReport("weight_search", best[0], UPPER, best[1], elapsed, covered)


# -- upper bound from concatenated logicals ----------------------------------------


def min_weight_logicals(mats: GraphCodeMatrices, budget: int = DEFAULT_BUDGET) -> dict[tuple[int, ...], IntArray]:
    """A minimum-weight representative of every nontrivial logical class.

    Keys are the coefficient vectors over (logical_x rows, logical_z rows).
    """
    p, n = mats.p, mats.n
    size = p ** (mats.stabilizer.k + 2 * mats.k)
    if size > budget:
        raise DistanceBudgetError(f"{size} normalizer elements exceed the budget of {budget}")
    group = gray_code_span(mats.stabilizer.array, p)[0]
    logicals = np.vstack([mats.logical_x.array, mats.logical_z.array])
    reps = {}
    for coeffs in all_vectors(logicals.shape[0], p)[1:]:
        coset = np.mod(group + matmul_mod(coeffs.reshape(1, -1), logicals, p), p)
        reps[tuple(int(c) for c in coeffs)] = coset[int(np.argmin(pauli_weight(coset, n)))]
    return reps


def _letter_maps(p: int) -> list[IntArray]:
    """Every invertible 2 x 2 matrix over F_p."""
    out = []
    for entries in itertools.product(range(p), repeat=4):
        m = np.array(entries, dtype=np.int64).reshape(2, 2)
        if (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]) % p:
            out.append(m)
    return out


def logical_weight_upper_bound(
    inner: GraphCodeMatrices,
    outer: GraphCodeMatrices,
    concatenated: GraphCodeMatrices,
    budget: int = DEFAULT_BUDGET,
) -> DistanceReport:
    """d <= weight of the lightest substituted logical that is a verified nontrivial logical.

    The inner code must encode one qupit.  Since the correspondence between outer
    Pauli letters and inner logical classes is fixed only up to a single-qupit
    Clifford, every invertible letter map is tried and each product is checked
    against the concatenated stabilizer.
    """
    start = time.perf_counter()
    if inner.k != 1:
        raise ValueError("logical substitution needs a single-qupit inner code")
    p = inner.p
    inner_reps = min_weight_logicals(inner, budget)
    outer_reps = min_weight_logicals(outer, budget)
    best: tuple[int, IntArray] | None = None
    tried = 0
    for m in _letter_maps(p):
        for rep in outer_reps.values():
            op = substitute_logicals(rep, inner_reps, m, inner.n, p)
            tried += 1
            if not is_nontrivial_logical(op, concatenated):
                continue
            w = int(pauli_weight(op, concatenated.n)[0])
            if best is None or w < best[0]:
                best = (w, op)
    elapsed = time.perf_counter() - start
    if best is None:
        raise AssertionError("no substituted operator is a nontrivial logical of the concatenated code")
    return DistanceReport("logical_bound", best[0], UPPER, best[1], elapsed, tried)


def substitute_logicals(
    outer_op: IntArray, inner_reps: dict[tuple[int, ...], IntArray], letter_map: IntArray, n_in: int, p: int
) -> IntArray:
    """Replace the letter X^a Z^b on outer qupit i by the inner rep of class letter_map (a, b) on copy i."""
    n_out = outer_op.size // 2
    x = np.zeros(n_out * n_in, dtype=np.int64)
    z = np.zeros(n_out * n_in, dtype=np.int64)
    for i in range(n_out):
        letter = np.array([outer_op[i], outer_op[n_out + i]], dtype=np.int64)
        if not letter.any():
            continue
        cls = np.mod(letter_map @ letter, p)
        local = inner_reps[(int(cls[0]), int(cls[1]))]
        x[i * n_in:(i + 1) * n_in] = local[:n_in]
        z[i * n_in:(i + 1) * n_in] = local[n_in:]
    return np.concatenate([x, z])


# -- Knill-Laflamme ----------------------------------------------------------------


def apply_pauli(states: npt.ArrayLike, vector: npt.ArrayLike, p: int) -> npt.NDArray[np.complex128]:
    """X^a Z^b applied to each column of `states` (qupit 0 most significant)."""
    states = np.asarray(states, dtype=np.complex128)
    v = np.asarray(vector, dtype=np.int64)
    n = v.size // 2
    a, b = v[:n], v[n:]
    digits = np.indices((p,) * n).reshape(n, -1)
    phase = np.exp(2j * np.pi * np.mod(b @ digits, p) / p)
    target = np.ravel_multi_index(tuple(np.mod(digits + a[:, None], p)), (p,) * n)
    out = np.empty_like(states)
    out[target] = states * phase[:, None]
    return out


def kl_verify(
    codewords: Sequence[npt.ArrayLike], claimed_d: int, p: int, tol: float = KL_TOL, budget: int = 2**22
) -> bool:
    """Knill-Laflamme: <c_i|E|c_j> = lambda_E delta_ij for every Pauli E of weight < claimed_d."""
    basis = np.column_stack([np.asarray(c, dtype=np.complex128).ravel() for c in codewords])
    n = int(round(math.log(basis.shape[0], p)))
    if p**n != basis.shape[0]:
        raise ValueError(f"state dimension {basis.shape[0]} is not a power of {p}")
    q, _ = np.linalg.qr(basis)
    if claimed_d <= 0:
        return True
    count = candidate_count(n, claimed_d - 1, p)
    if count > budget:
        raise DistanceBudgetError(f"{count} Paulis exceed the budget of {budget}")
    letters = _single_qupit_paulis(p)
    eye = np.eye(q.shape[1])
    for t in range(claimed_d):
        for support in itertools.combinations(range(n), t):
            for choice in itertools.product(range(len(letters)), repeat=t):
                v = np.zeros(2 * n, dtype=np.int64)
                for s, c in zip(support, choice):
                    v[s], v[n + s] = letters[c]
                m = q.conj().T @ apply_pauli(q, v, p)
                lam = np.trace(m) / m.shape[0]
                if np.max(np.abs(m - lam * eye)) > tol:
                    return False
    return True


def kl_distance(codewords: Sequence[npt.ArrayLike], p: int, max_d: int | None = None) -> int:
    """Largest d such that kl_verify holds (scanning upward)."""
    n = int(round(math.log(len(np.asarray(codewords[0]).ravel()), p)))
    limit = n + 1 if max_d is None else max_d
    d = 1
    while d < limit and kl_verify(codewords, d + 1, p):
        d += 1
    return d


def witness_to_label(witness: npt.ArrayLike, p: int = 2) -> str:
    """Readable form such as "XIZY" (p = 2) or "X1Z2.I.." style pairs otherwise."""
    v = np.asarray(witness, dtype=np.int64)
    n = v.size // 2
    if p == 2:
        return "".join("IZXY"[2 * int(v[i]) + int(v[n + i])] for i in range(n))
    return " ".join(f"({int(v[i])},{int(v[n + i])})" for i in range(n))
