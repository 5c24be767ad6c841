"""Quantum memory of a unifilar machine: signal-state overlaps and C_q.

Each state is assigned a pure signal state whose amplitudes are square
roots of the conditional length-L word probabilities, tagged with the
unifilar end state.  The stationary mixture of these signal states has a
von Neumann entropy, computed here from the state-count-sized Gram matrix
whose nonzero spectrum equals that of the full density operator.  A
brute-force construction of the explicit density matrix in the product
space (words x states) is kept as an independent oracle.

At encoding length zero every signal state is the same empty encoding, so
overlaps are all ones and the quantum memory is zero.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import fsum

import numpy as np

from .linalg import jacobi_eigenvalues
from .machine import (
    DEFAULT_WORD_BUDGET,
    EpsilonMachine,
    entropy_bits,
    require_valid,
    stationary_distribution,
    _check_word_budget,
)

__all__ = [
    "SignalEnsemble",
    "CqPoint",
    "signal_overlaps",
    "gram_matrix",
    "gram_spectrum",
    "quantum_complexity",
    "brute_force_spectrum",
    "brute_force_cq",
    "cq_convergence",
    "EIGENVALUE_CLAMP",
    "BRUTE_FORCE_DIM_CAP",
]

# Eigenvalues this far below zero are rounding noise and clamp to zero;
# anything more negative is an error.
EIGENVALUE_CLAMP = 1e-12
BRUTE_FORCE_DIM_CAP = 4096


@dataclass(frozen=True)
class SignalEnsemble:
    """Stationary weights and pairwise signal-state overlaps at length L."""

    machine: EpsilonMachine
    L: int
    weights: tuple[float, ...]
    overlaps: np.ndarray

    def __post_init__(self) -> None:
        self.overlaps.setflags(write=False)


def signal_overlaps(
    m: EpsilonMachine, length: int, max_words: int = DEFAULT_WORD_BUDGET
) -> SignalEnsemble:
    """Pairwise overlaps c[i][j] of the length-L signal states.

    c[i][j] sums sqrt(P(w|state_i) P(w|state_j)) over words whose unifilar
    end state from state_i equals the end state from state_j.  The sum is
    evaluated by a backward recursion over shared suffixes (c_0 = identity
    on end states), which is exactly the word enumeration with end-state
    tracking, organized so shared suffixes are computed once.
    """
    require_valid(m)
    _check_word_budget(m, length, max_words)
    n = m.n_states
    pi = stationary_distribution(m)
    weights = tuple(pi[s] for s in m.states)
    if length == 0:
        c = np.ones((n, n), dtype=float)
        return SignalEnsemble(machine=m, L=0, weights=weights, overlaps=c)

    index = {s: i for i, s in enumerate(m.states)}
    # per symbol, per state: (successor index, probability) or None
    edges: list[list[tuple[int, float] | None]] = [
        [
            (None if (nxt := m.successor(s, a)) is None or nxt[1] == 0.0 else (index[nxt[0]], nxt[1]))
            for s in m.states
        ]
        for a in m.alphabet
    ]
    prev = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    for _ in range(length):
        cur = [[0.0] * n for _ in range(n)]
        for i in range(n):
            cur[i][i] = 1.0  # per-state word probabilities are normalized
            for j in range(i + 1, n):
                terms = []
                for per_state in edges:
                    ei = per_state[i]
                    ej = per_state[j]
                    if ei is None or ej is None:
                        continue
                    base = prev[ei[0]][ej[0]]
                    if base != 0.0:
                        terms.append(math.sqrt(ei[1] * ej[1]) * base)
                val = min(fsum(terms), 1.0)
                cur[i][j] = cur[j][i] = val
        prev = cur
    return SignalEnsemble(machine=m, L=length, weights=weights, overlaps=np.array(prev))


def gram_matrix(ens: SignalEnsemble) -> np.ndarray:
    """G[i][j] = sqrt(pi_i pi_j) c[i][j]; trace one, positive semidefinite."""
    root = np.sqrt(np.array(ens.weights, dtype=float))
    return np.outer(root, root) * ens.overlaps


def _clamp_spectrum(values, clamp: float = EIGENVALUE_CLAMP) -> list[float]:
    out = []
    for v in values:
        if v < -clamp:
            raise ValueError(f"eigenvalue {v!r} below the negativity budget {-clamp}")
        out.append(max(float(v), 0.0))
    return out


def gram_spectrum(ens: SignalEnsemble) -> list[float]:
    """Eigenvalues of the Gram matrix, descending, tiny negatives clamped."""
    return _clamp_spectrum(jacobi_eigenvalues(gram_matrix(ens)))


def quantum_complexity(ens: SignalEnsemble) -> float:
    """Von Neumann entropy (bits) of the stationary signal-state mixture."""
    return entropy_bits(gram_spectrum(ens))


def brute_force_spectrum(
    m: EpsilonMachine, length: int, max_dim: int = BRUTE_FORCE_DIM_CAP
) -> list[float]:
    """Eigenvalues of the explicit density matrix in the product space.

    Builds each signal state as an amplitude vector over (word, end state)
    basis elements, forms rho as the stationary mixture of the outer
    products, and eigendecomposes with a dense library solver.  This is
    the independent oracle for the Gram-spectrum route.
    """
    require_valid(m)
    n = m.n_states
    if length == 0:
        # every state shares the single empty-encoding vector
        return [1.0]
    dim = len(m.alphabet) ** length * n
    if dim > max_dim:
        raise ValueError(f"product-space dimension {dim} exceeds cap {max_dim}")
    pi = stationary_distribution(m)
    index = {s: i for i, s in enumerate(m.states)}
    vectors = np.zeros((dim, n))
    for j, start in enumerate(m.states):
        for w_idx, word in enumerate(itertools.product(m.alphabet, repeat=length)):
            state = start
            prob = 1.0
            for a in word:
                nxt = m.successor(state, a)
                if nxt is None or nxt[1] == 0.0:
                    prob = 0.0
                    break
                state = nxt[0]
                prob *= nxt[1]
            if prob > 0.0:
                vectors[w_idx * n + index[state], j] = math.sqrt(prob)
    root_pi = np.sqrt(np.array([pi[s] for s in m.states]))
    amps = vectors * root_pi
    rho = amps @ amps.T
    values = np.linalg.eigvalsh(rho)[::-1]
    return _clamp_spectrum(values)


def brute_force_cq(m: EpsilonMachine, length: int, max_dim: int = BRUTE_FORCE_DIM_CAP) -> float:
    """Quantum memory via the explicit density matrix (oracle path)."""
    return entropy_bits(brute_force_spectrum(m, length, max_dim=max_dim))


@dataclass(frozen=True)
class CqPoint:
    L: int
    c_q: float
    delta: float | None  # change from the previous length, None at L=1


def cq_convergence(
    m: EpsilonMachine, L_max: int, max_words: int = DEFAULT_WORD_BUDGET
) -> list[CqPoint]:
    """C_q at encoding lengths 1..L_max with successive differences."""
    require_valid(m)
    points: list[CqPoint] = []
    prev: float | None = None
    for L in range(1, L_max + 1):
        cq = quantum_complexity(signal_overlaps(m, L, max_words=max_words))
        delta = None if prev is None else abs(cq - prev)
        points.append(CqPoint(L=L, c_q=cq, delta=delta))
        prev = cq
    return points
