"""Finite unifilar hidden Markov models and their elementary statistics.

A machine is a finite set of states over a finite symbol alphabet, where
each (state, symbol) pair leads to at most one successor state with some
emission probability.  Unifilarity (the successor is a function of state
and symbol) is what makes word probabilities, block entropies, and the
entropy rate exactly computable by enumeration and per-state accumulation.

All entropies are in bits.  Scalar results are accumulated with
``math.fsum`` so that relabeling states or symbols leaves every output
bit-for-bit unchanged.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from math import fsum
from typing import Iterable, Mapping

__all__ = [
    "EpsilonMachine",
    "StationaryDistribution",
    "WordDistribution",
    "ValidationReport",
    "InvalidMachineError",
    "MachineFormatError",
    "WordLengthError",
    "ConvergenceError",
    "validate_machine",
    "require_valid",
    "stationary_distribution",
    "word_distribution",
    "block_entropy",
    "entropy_rate",
    "entropy_bits",
    "machine_from_dict",
    "machine_to_dict",
    "load_machine",
    "save_machine",
    "PROB_ATOL",
    "ROW_SUM_ATOL",
    "DEFAULT_WORD_BUDGET",
]

# Absolute tolerance for probability comparisons.
PROB_ATOL = 1e-12
# Row sums must match 1 to this absolute tolerance.
ROW_SUM_ATOL = 1e-12
# Enumeration guard: |alphabet|**L may not exceed this.
DEFAULT_WORD_BUDGET = 2**20

_STATIONARY_RESIDUAL = 1e-14
_STATIONARY_MAX_ITER = 10**6


class InvalidMachineError(ValueError):
    """A machine failed validation; carries the offending report."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        lines = "; ".join(f"{code}: {msg}" for code, msg in report.violations)
        super().__init__(f"invalid machine: {lines}")


class MachineFormatError(ValueError):
    """A machine document (JSON) is structurally malformed."""


class WordLengthError(ValueError):
    """Requested word length exceeds the enumeration budget."""


class ConvergenceError(RuntimeError):
    """An iterative routine failed to reach its tolerance."""


def entropy_bits(probs: Iterable[float]) -> float:
    """Shannon entropy (base 2) of a probability vector; 0*log(0) == 0."""
    h = -fsum(p * math.log2(p) for p in probs if p > 0.0)
    return h if h > 0.0 else 0.0


@dataclass(frozen=True)
class EpsilonMachine:
    """A finite unifilar HMM.

    Parameters
    ----------
    states : ordered state identifiers.
    alphabet : ordered symbol identifiers.
    transitions : map (state, symbol) -> (next state, probability).
        At most one entry per key, so unifilarity holds by construction.
        Absent keys are emission probability zero.
    """

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    transitions: dict[tuple[str, str], tuple[str, float]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(
            self,
            "transitions",
            {(s, a): (t, float(p)) for (s, a), (t, p) in dict(self.transitions).items()},
        )
        object.__setattr__(self, "_checked", False)

    @property
    def n_states(self) -> int:
        return len(self.states)

    def state_index(self, state: str) -> int:
        return self.states.index(state)

    def successor(self, state: str, symbol: str) -> tuple[str, float] | None:
        return self.transitions.get((state, symbol))

    def row(self, state: str) -> dict[str, tuple[str, float]]:
        """Outgoing edges of ``state`` as symbol -> (next state, probability)."""
        return {a: self.transitions[(state, a)] for a in self.alphabet if (state, a) in self.transitions}

    def row_probs(self, state: str) -> list[float]:
        return [p for (_, p) in self.row(state).values()]

    def state_matrix(self) -> list[list[float]]:
        """State-to-state transition matrix (symbols marginalized out)."""
        index = {s: i for i, s in enumerate(self.states)}
        rows: list[list[float]] = []
        for s in self.states:
            acc: list[list[float]] = [[] for _ in self.states]
            for (t, p) in self.row(s).values():
                acc[index[t]].append(p)
            rows.append([fsum(cell) for cell in acc])
        return rows

    def relabeled(
        self,
        state_map: Mapping[str, str] | None = None,
        symbol_map: Mapping[str, str] | None = None,
    ) -> "EpsilonMachine":
        """Rename states and/or symbols (bijective maps)."""
        smap = dict(state_map or {})
        amap = dict(symbol_map or {})
        ren_s = lambda s: smap.get(s, s)
        ren_a = lambda a: amap.get(a, a)
        return EpsilonMachine(
            states=tuple(ren_s(s) for s in self.states),
            alphabet=tuple(ren_a(a) for a in self.alphabet),
            transitions={(ren_s(s), ren_a(a)): (ren_s(t), p) for (s, a), (t, p) in self.transitions.items()},
        )


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of machine validation: empty violations means pass."""

    violations: tuple[tuple[str, str], ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {code for code, _ in self.violations}


def validate_machine(m: EpsilonMachine) -> ValidationReport:
    """Check row sums, probability ranges, referenced identifiers, and
    strong connectivity of the positive-probability transition graph."""
    bad: list[tuple[str, str]] = []
    state_set = set(m.states)
    symbol_set = set(m.alphabet)
    if not m.states:
        bad.append(("empty", "machine has no states"))
        return ValidationReport(tuple(bad))
    if len(state_set) != len(m.states):
        bad.append(("duplicate-state", "state list contains duplicates"))
    if len(symbol_set) != len(m.alphabet):
        bad.append(("duplicate-symbol", "alphabet contains duplicates"))

    for (s, a), (t, p) in m.transitions.items():
        if s not in state_set:
            bad.append(("unknown-state", f"transition from unknown state {s!r}"))
        if t not in state_set:
            bad.append(("unknown-state", f"transition to unknown state {t!r}"))
        if a not in symbol_set:
            bad.append(("unknown-symbol", f"transition on unknown symbol {a!r}"))
        if not math.isfinite(p) or p < 0.0 or p > 1.0 + PROB_ATOL:
            bad.append(("probability", f"edge ({s!r},{a!r}) has probability {p!r}"))
    if bad:
        return ValidationReport(tuple(bad))

    for s in m.states:
        total = fsum(p for (_, p) in m.row(s).values())
        if abs(total - 1.0) > ROW_SUM_ATOL:
            bad.append(("row-sum", f"state {s!r} outgoing probabilities sum to {total!r}"))

    if not _strongly_connected(m):
        bad.append(("not-strongly-connected", "positive-probability graph is not strongly connected"))
    return ValidationReport(tuple(bad))


def _strongly_connected(m: EpsilonMachine) -> bool:
    # Reachability from states[0] in the forward and reversed edge graphs.
    fwd: dict[str, set[str]] = {s: set() for s in m.states}
    rev: dict[str, set[str]] = {s: set() for s in m.states}
    for (s, _), (t, p) in m.transitions.items():
        if p > 0.0:
            fwd[s].add(t)
            rev[t].add(s)

    def reaches_all(adj: dict[str, set[str]]) -> bool:
        seen = {m.states[0]}
        stack = [m.states[0]]
        while stack:
            for t in adj[stack.pop()]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return len(seen) == len(m.states)

    return reaches_all(fwd) and reaches_all(rev)


def require_valid(m: EpsilonMachine) -> None:
    """Raise InvalidMachineError unless ``m`` validates; caches the result."""
    if getattr(m, "_checked", False):
        return
    report = validate_machine(m)
    if not report.passed:
        raise InvalidMachineError(report)
    object.__setattr__(m, "_checked", True)


@dataclass(frozen=True)
class StationaryDistribution:
    """Left fixed point of the state-to-state transition matrix."""

    probs: dict[str, float]
    residual: float

    def __getitem__(self, state: str) -> float:
        return self.probs[state]

    def as_tuple(self, states: tuple[str, ...]) -> tuple[float, ...]:
        return tuple(self.probs[s] for s in states)


def stationary_distribution(m: EpsilonMachine) -> StationaryDistribution:
    """Stationary distribution by damped power iteration from uniform.

    Iterates x <- (x + xT)/2, which also converges for periodic machines,
    and stops when the undamped residual ||xT - x||_1 <= 1e-14.
    """
    require_valid(m)
    return _power_iteration(m)


def _power_iteration(m: EpsilonMachine) -> StationaryDistribution:
    # No validity gate: callers with lighter preconditions (for machines
    # that are row-stochastic but not ergodic) get the uniform-start fixed
    # point, which is deterministic.
    n = m.n_states
    index = {s: i for i, s in enumerate(m.states)}
    matrix = m.state_matrix()
    incoming: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for i in range(n):
        for j, p in enumerate(matrix[i]):
            if p > 0.0:
                incoming[j].append((i, p))
    x = [1.0 / n] * n
    for _ in range(_STATIONARY_MAX_ITER):
        y = [fsum(x[i] * p for i, p in inc) for inc in incoming]
        residual = fsum(abs(y[j] - x[j]) for j in range(n))
        if residual <= _STATIONARY_RESIDUAL:
            total = fsum(y)
            probs = {s: y[index[s]] / total for s in m.states}
            return StationaryDistribution(probs=probs, residual=residual)
        x = [(x[j] + y[j]) / 2.0 for j in range(n)]
    raise ConvergenceError(
        f"stationary distribution did not reach {_STATIONARY_RESIDUAL} in {_STATIONARY_MAX_ITER} iterations"
    )


def _check_word_budget(m: EpsilonMachine, length: int, max_words: int) -> None:
    if length < 0:
        raise ValueError("word length must be nonnegative")
    if len(m.alphabet) ** length > max_words:
        raise WordLengthError(
            f"|alphabet|**L = {len(m.alphabet)}**{length} exceeds the enumeration budget {max_words}"
        )


@dataclass(frozen=True)
class WordDistribution:
    """Exact conditional word statistics at a fixed length.

    ``entries[word][start]`` is ``(probability of word given start,
    unifilar end state)``; words a start state cannot produce carry no
    entry for that start.
    """

    length: int
    entries: dict[tuple[str, ...], dict[str, tuple[float, str]]]

    def conditional(self, word: tuple[str, ...], start: str) -> float:
        got = self.entries.get(word)
        if got is None or start not in got:
            return 0.0
        return got[start][0]

    def end_state(self, word: tuple[str, ...], start: str) -> str | None:
        got = self.entries.get(word)
        if got is None or start not in got:
            return None
        return got[start][1]

    def stationary_probs(self, pi: StationaryDistribution) -> dict[tuple[str, ...], float]:
        """Word distribution of the stationary process: sum_s pi(s) P(w|s)."""
        return {
            w: fsum(pi[s] * pr for s, (pr, _) in per_start.items())
            for w, per_start in self.entries.items()
        }


def word_distribution(
    m: EpsilonMachine, length: int, max_words: int = DEFAULT_WORD_BUDGET
) -> WordDistribution:
    """Enumerate all positive-probability words of ``length`` per start state."""
    require_valid(m)
    _check_word_budget(m, length, max_words)
    entries: dict[tuple[str, ...], dict[str, tuple[float, str]]] = {}
    for start in m.states:
        stack: list[tuple[tuple[str, ...], str, float]] = [((), start, 1.0)]
        while stack:
            word, state, prob = stack.pop()
            if len(word) == length:
                entries.setdefault(word, {})[start] = (prob, state)
                continue
            # reversed keeps symbol order stable in the depth-first walk
            for a in reversed(m.alphabet):
                nxt = m.successor(state, a)
                if nxt is None or nxt[1] == 0.0:
                    continue
                stack.append((word + (a,), nxt[0], prob * nxt[1]))
    return WordDistribution(length=length, entries=entries)


def block_entropy(m: EpsilonMachine, length: int, max_words: int = DEFAULT_WORD_BUDGET) -> float:
    """Shannon entropy (bits) of the stationary length-L word distribution.

    Accumulates recursively per state without materializing the word set:
    the walker carries, per current state, the stationary mass of the
    prefix ending there.
    """
    require_valid(m)
    _check_word_budget(m, length, max_words)
    pi = stationary_distribution(m)
    n = m.n_states
    index = {s: i for i, s in enumerate(m.states)}
    edges: list[list[tuple[int, float]]] = []  # per state, per symbol slot
    for a in m.alphabet:
        row = []
        for s in m.states:
            nxt = m.successor(s, a)
            row.append((-1, 0.0) if nxt is None else (index[nxt[0]], nxt[1]))
        edges.append(row)

    terms: list[float] = []

    def walk(depth: int, mass: list[float]) -> None:
        if depth == length:
            total = fsum(mass)
            if total > 0.0:
                terms.append(-total * math.log2(total))
            return
        for per_state in edges:
            child = [[] for _ in range(n)]
            alive = False
            for i in range(n):
                if mass[i] == 0.0:
                    continue
                j, p = per_state[i]
                if j >= 0 and p > 0.0:
                    child[j].append(mass[i] * p)
                    alive = True
            if alive:
                walk(depth + 1, [fsum(cell) for cell in child])

    walk(0, [pi[s] for s in m.states])
    h = fsum(terms)
    return h if h > 0.0 else 0.0


def entropy_rate(m: EpsilonMachine) -> float:
    """Entropy rate in bits per symbol: sum_s pi(s) H(outgoing probabilities).

    The per-state form is exact for unifilar machines and equals the limit
    of block-entropy differences.
    """
    require_valid(m)
    pi = stationary_distribution(m)
    h = fsum(pi[s] * entropy_bits(m.row_probs(s)) for s in m.states)
    return h if h > 0.0 else 0.0


# ---------------------------------------------------------------------------
# Machine file format (JSON)


def machine_from_dict(doc: dict) -> EpsilonMachine:
    """Build and validate a machine from its JSON document form.

    The document is ``{"alphabet": [...], "states": [...], "transitions":
    [{"from": s, "symbol": a, "to": t, "p": x}, ...]}``.  Duplicate
    (from, symbol) pairs are rejected, then full validation runs.
    """
    if not isinstance(doc, dict):
        raise MachineFormatError("machine document must be a JSON object")
    try:
        states = [str(s) for s in doc["states"]]
        alphabet = [str(a) for a in doc["alphabet"]]
        raw = doc["transitions"]
    except KeyError as exc:
        raise MachineFormatError(f"missing required key {exc.args[0]!r}") from None
    if not isinstance(raw, list):
        raise MachineFormatError('"transitions" must be a list')
    transitions: dict[tuple[str, str], tuple[str, float]] = {}
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict) or not {"from", "symbol", "to", "p"} <= entry.keys():
            raise MachineFormatError(f'transition #{i} must carry "from", "symbol", "to", "p"')
        key = (str(entry["from"]), str(entry["symbol"]))
        if key in transitions:
            raise MachineFormatError(f"duplicate transition for (from, symbol) = {key!r}")
        try:
            prob = float(entry["p"])
        except (TypeError, ValueError):
            raise MachineFormatError(f'transition #{i} has non-numeric "p"') from None
        transitions[key] = (str(entry["to"]), prob)
    m = EpsilonMachine(states=tuple(states), alphabet=tuple(alphabet), transitions=transitions)
    require_valid(m)
    return m


def machine_to_dict(m: EpsilonMachine) -> dict:
    return {
        "alphabet": list(m.alphabet),
        "states": list(m.states),
        "transitions": [
            {"from": s, "symbol": a, "to": t, "p": p}
            for (s, a), (t, p) in sorted(m.transitions.items())
        ],
    }


def load_machine(path: str) -> EpsilonMachine:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MachineFormatError(f"not valid JSON: {exc}") from None
    return machine_from_dict(doc)


def save_machine(m: EpsilonMachine, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(machine_to_dict(m), fh, indent=2, sort_keys=True)
        fh.write("\n")
