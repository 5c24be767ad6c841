"""Shared machine builders and the seeded random-machine suite."""

from __future__ import annotations

import math
import random

import pytest

from simpliq import EpsilonMachine, validate_machine

SUITE_SEED = 20260809


def fig1_machine(p: float, q: float) -> EpsilonMachine:
    """Two-state last-symbol machine: stay-up probability p, stay-down q."""
    return EpsilonMachine(
        states=("s1", "s2"),
        alphabet=("u", "d"),
        transitions={
            ("s1", "u"): ("s1", p),
            ("s1", "d"): ("s2", 1.0 - p),
            ("s2", "d"): ("s2", q),
            ("s2", "u"): ("s1", 1.0 - q),
        },
    )


def coin_machine(bias: float = 0.5) -> EpsilonMachine:
    """Single-state IID binary source."""
    return EpsilonMachine(
        states=("s0",),
        alphabet=("h", "t"),
        transitions={("s0", "h"): ("s0", bias), ("s0", "t"): ("s0", 1.0 - bias)},
    )


def cycle_machine(n: int = 2) -> EpsilonMachine:
    """Deterministic n-cycle emitting a distinct symbol on each edge."""
    states = tuple(f"c{i}" for i in range(n))
    symbols = tuple(f"x{i}" for i in range(n))
    transitions = {
        (states[i], symbols[i]): (states[(i + 1) % n], 1.0) for i in range(n)
    }
    return EpsilonMachine(states=states, alphabet=symbols, transitions=transitions)


def random_unifilar_machine(
    rng: random.Random, n_states: int, n_symbols: int = 2, min_prob: float = 0.05
) -> EpsilonMachine:
    """Random strongly connected unifilar machine (rejection sampling)."""
    states = tuple(f"s{i}" for i in range(n_states))
    symbols = tuple("abc"[:n_symbols])
    while True:
        transitions = {}
        for s in states:
            weights = [min_prob + rng.random() for _ in symbols]
            total = math.fsum(weights)
            for a, w in zip(symbols, weights):
                transitions[(s, a)] = (states[rng.randrange(n_states)], w / total)
        m = EpsilonMachine(states=states, alphabet=symbols, transitions=transitions)
        if validate_machine(m).passed:
            return m


@pytest.fixture(scope="session")
def machine_suite() -> list[tuple[EpsilonMachine, int]]:
    """200 seeded random machines (up to 4 states) with encoding lengths 1..3."""
    rng = random.Random(SUITE_SEED)
    suite = []
    for _ in range(200):
        m = random_unifilar_machine(rng, n_states=rng.randint(1, 4), n_symbols=rng.choice((2, 2, 3)))
        suite.append((m, rng.randint(1, 3)))
    return suite
