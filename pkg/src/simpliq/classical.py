"""Classical simplicity measures: statistical complexity and excess entropy.

Statistical complexity is the entropy of the stationary state
distribution.  Excess entropy (past-future mutual information) comes in
two estimators: an exact single-step mutual information for machines
whose state is a bijective image of the last symbol, and a block
extrapolation H(L) - L*h for everything else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from math import fsum

from .machine import (
    PROB_ATOL,
    EpsilonMachine,
    InvalidMachineError,
    ValidationReport,
    block_entropy,
    entropy_bits,
    entropy_rate,
    require_valid,
    stationary_distribution,
    validate_machine,
    _power_iteration,
)

__all__ = [
    "ComplexityProfile",
    "BlockExcessEntropy",
    "MarkovOrderError",
    "statistical_complexity",
    "merge_iid_degenerate",
    "excess_entropy_markov1",
    "excess_entropy_block",
    "excess_entropy",
    "compute_profile",
]

HOLEVO_TOL = 1e-9


class MarkovOrderError(ValueError):
    """Machine is not order-1 Markov over its alphabet; use the block estimator."""


@dataclass(frozen=True)
class ComplexityProfile:
    """Per-process record of the simplicity measures, all in bits."""

    h_mu: float
    C_mu: float
    E: float
    C_q: float | None = None
    L_used: int | None = None

    def holevo_ok(self, tol: float = HOLEVO_TOL) -> bool:
        """Check the sandwich E <= C_q <= C_mu within ``tol``."""
        if self.C_q is None:
            return self.E <= self.C_mu + tol
        return self.E <= self.C_q + tol and self.C_q <= self.C_mu + tol

    def with_quantum(self, c_q: float, L_used: int) -> "ComplexityProfile":
        return replace(self, C_q=c_q, L_used=L_used)


def statistical_complexity(m: EpsilonMachine) -> float:
    """Entropy (bits) of the stationary state distribution."""
    require_valid(m)
    pi = stationary_distribution(m)
    return entropy_bits(pi.probs.values())


def merge_iid_degenerate(m: EpsilonMachine, atol: float = PROB_ATOL) -> EpsilonMachine:
    """Merge states with identical next-symbol distributions and successors.

    Two states merge when, for every symbol, their emission probabilities
    agree within ``atol`` and (where the symbol actually occurs) they lead
    to the same successor.  Merging repeats until no pair qualifies, so a
    two-state machine with p = 1-q collapses to the single-state IID
    machine.  Only exact degeneracy merges: ``atol`` is tight so nearby
    but distinct processes are never collapsed.
    """
    require_valid(m)
    current = m
    while True:
        pair = _find_mergeable(current, atol)
        if pair is None:
            return current
        keep, drop = pair
        states = tuple(s for s in current.states if s != drop)
        remap = lambda s: keep if s == drop else s
        transitions = {
            (s, a): (remap(t), p)
            for (s, a), (t, p) in current.transitions.items()
            if s != drop
        }
        current = EpsilonMachine(states=states, alphabet=current.alphabet, transitions=transitions)


def _find_mergeable(m: EpsilonMachine, atol: float) -> tuple[str, str] | None:
    for i, s in enumerate(m.states):
        for t in m.states[i + 1 :]:
            if _rows_equivalent(m, s, t, atol):
                return s, t
    return None


def _rows_equivalent(m: EpsilonMachine, s: str, t: str, atol: float) -> bool:
    for a in m.alphabet:
        es = m.successor(s, a)
        et = m.successor(t, a)
        ps = es[1] if es else 0.0
        pt = et[1] if et else 0.0
        if abs(ps - pt) > atol:
            return False
        if ps > atol and pt > atol and es[0] != et[0]:
            return False
    return True


def excess_entropy_markov1(m: EpsilonMachine) -> float:
    """Exact excess entropy for a machine whose state is the last symbol.

    Requires a bijection f: alphabet -> states such that every positive
    edge emitting symbol a ends in f(a).  Then the past-future mutual
    information reduces to the single-step I[X0; X1] computed from the
    joint pi(x0) P(x1 | x0).

    Raises
    ------
    MarkovOrderError
        If the structural precondition fails; callers should fall back to
        :func:`excess_entropy_block`.

    Unlike the other measures this one does not insist on ergodicity, so
    frozen-phase chains (p = q = 1) evaluate to their uniform-mixture
    value; only row stochasticity and probability ranges are enforced.
    """
    report = validate_machine(m)
    hard = [v for v in report.violations if v[0] != "not-strongly-connected"]
    if hard:
        raise InvalidMachineError(ValidationReport(tuple(hard)))
    target: dict[str, str] = {}
    for (s, a), (t, p) in m.transitions.items():
        if p <= 0.0:
            continue
        if a in target and target[a] != t:
            raise MarkovOrderError(f"symbol {a!r} leads to multiple states")
        target[a] = t
    if len(target) != len(m.alphabet):
        raise MarkovOrderError("some symbols are never emitted")
    if len(set(target.values())) != len(m.states):
        raise MarkovOrderError("symbol-to-state map is not a bijection")

    pi = _power_iteration(m)
    joint: dict[tuple[str, str], float] = {}
    for x0 in m.alphabet:
        s = target[x0]
        for x1, (_, p) in m.row(s).items():
            if p > 0.0:
                joint[(x0, x1)] = pi[s] * p
    m0 = {a: fsum(v for (x0, _), v in joint.items() if x0 == a) for a in m.alphabet}
    m1 = {a: fsum(v for (_, x1), v in joint.items() if x1 == a) for a in m.alphabet}
    mi = fsum(
        v * math.log2(v / (m0[x0] * m1[x1]))
        for (x0, x1), v in joint.items()
        if v > 0.0
    )
    return mi if mi > 0.0 else 0.0


@dataclass(frozen=True)
class BlockExcessEntropy:
    """Block-extrapolation result: E(L) = H(L) - L*h at the stopping length."""

    value: float
    L_used: int
    delta: float
    converged: bool


def excess_entropy_block(
    m: EpsilonMachine, tol: float = 1e-9, L_max: int = 20
) -> BlockExcessEntropy:
    """Estimate excess entropy as the limit of E(L) = H(L) - L*h.

    Stops at the smallest L with |E(L) - E(L-1)| < tol; if that never
    happens by ``L_max`` the best (largest-L) estimate is returned flagged
    unconverged.  E(L) is nondecreasing, so the estimate is always a lower
    bound on the true excess entropy.
    """
    require_valid(m)
    h = entropy_rate(m)
    prev = 0.0  # E(0) = H(0) - 0 = 0
    delta = math.inf
    for L in range(1, L_max + 1):
        e_l = block_entropy(m, L) - L * h
        delta = abs(e_l - prev)
        if delta < tol:
            return BlockExcessEntropy(value=e_l, L_used=L, delta=delta, converged=True)
        prev = e_l
    return BlockExcessEntropy(value=prev, L_used=L_max, delta=delta, converged=False)


def excess_entropy(m: EpsilonMachine, tol: float = 1e-9, L_max: int = 20) -> float:
    """Excess entropy: exact single-step form when available, else block."""
    try:
        return excess_entropy_markov1(m)
    except MarkovOrderError:
        return excess_entropy_block(m, tol=tol, L_max=L_max).value


def compute_profile(
    m: EpsilonMachine,
    encoding_length: int = 1,
    e_tol: float = 1e-9,
    e_L_max: int = 20,
) -> ComplexityProfile:
    """Assemble the full measure profile of a machine.

    Quantum complexity is evaluated at ``encoding_length`` via the Gram
    spectrum; see :mod:`simpliq.quantum`.
    """
    from .quantum import quantum_complexity, signal_overlaps

    require_valid(m)
    ens = signal_overlaps(m, encoding_length)
    return ComplexityProfile(
        h_mu=entropy_rate(m),
        C_mu=statistical_complexity(m),
        E=excess_entropy(m, tol=e_tol, L_max=e_L_max),
        C_q=quantum_complexity(ens),
        L_used=encoding_length,
    )
