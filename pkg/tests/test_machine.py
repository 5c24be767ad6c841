"""Process-core tests: validation, stationarity, words, entropies."""

from __future__ import annotations

import json
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simpliq import (
    EpsilonMachine,
    InvalidMachineError,
    MachineFormatError,
    WordLengthError,
    block_entropy,
    entropy_rate,
    load_machine,
    machine_from_dict,
    machine_to_dict,
    save_machine,
    stationary_distribution,
    validate_machine,
    word_distribution,
)
from conftest import coin_machine, cycle_machine, fig1_machine, random_unifilar_machine

probs = st.floats(min_value=0.01, max_value=0.99)


def h2(x: float) -> float:
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


class TestValidation:
    def test_two_state_machine_passes(self):
        report = validate_machine(fig1_machine(0.7, 0.6))
        assert report.passed

    def test_row_sum_violation(self):
        m = EpsilonMachine(
            states=("a", "b"),
            alphabet=("x", "y"),
            transitions={
                ("a", "x"): ("b", 0.5),
                ("a", "y"): ("a", 0.4),  # row sums to 0.9
                ("b", "x"): ("a", 1.0),
            },
        )
        report = validate_machine(m)
        assert not report.passed
        assert "row-sum" in report.codes()

    def test_disconnected_components_rejected(self):
        m = EpsilonMachine(
            states=("a", "b"),
            alphabet=("x",),
            transitions={("a", "x"): ("a", 1.0), ("b", "x"): ("b", 1.0)},
        )
        report = validate_machine(m)
        assert report.codes() == {"not-strongly-connected"}

    def test_zero_probability_edges_do_not_connect(self):
        m = EpsilonMachine(
            states=("a", "b"),
            alphabet=("x", "y"),
            transitions={
                ("a", "x"): ("a", 1.0),
                ("a", "y"): ("b", 0.0),
                ("b", "x"): ("a", 1.0),
            },
        )
        assert "not-strongly-connected" in validate_machine(m).codes()

    def test_probability_range_violation(self):
        m = EpsilonMachine(
            states=("a",), alphabet=("x", "y"),
            transitions={("a", "x"): ("a", 1.2), ("a", "y"): ("a", -0.2)},
        )
        assert "probability" in validate_machine(m).codes()

    def test_unknown_identifiers(self):
        m = EpsilonMachine(
            states=("a",), alphabet=("x",),
            transitions={("a", "x"): ("ghost", 1.0)},
        )
        assert "unknown-state" in validate_machine(m).codes()
        m = EpsilonMachine(
            states=("a",), alphabet=("x",),
            transitions={("a", "x"): ("a", 0.5), ("a", "z"): ("a", 0.5)},
        )
        assert "unknown-symbol" in validate_machine(m).codes()


class TestStationary:
    def test_symmetric_pair_is_uniform(self):
        pi = stationary_distribution(fig1_machine(0.8, 0.8))
        assert pi["s1"] == pytest.approx(0.5, abs=1e-12)
        assert pi["s2"] == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("p,q", [(0.9, 0.6), (0.3, 0.8), (0.55, 0.1)])
    def test_matches_closed_form_fixed_point(self, p, q):
        # Solving pi = pi T for the two-state chain by hand gives
        # pi_1 = (1-q) / (2-p-q).
        pi = stationary_distribution(fig1_machine(p, q))
        assert pi["s1"] == pytest.approx((1 - q) / (2 - p - q), abs=1e-12)

    def test_single_state(self):
        assert stationary_distribution(coin_machine())["s0"] == 1.0

    def test_residual_is_tiny(self):
        pi = stationary_distribution(fig1_machine(0.99, 0.97))
        assert pi.residual <= 1e-10

    def test_periodic_machine_converges(self):
        pi = stationary_distribution(cycle_machine(3))
        for s in ("c0", "c1", "c2"):
            assert pi[s] == pytest.approx(1 / 3, abs=1e-12)

    def test_near_periodic_branching(self):
        # hub alternates with two leaves: pi = (1/2, p/2, (1-p)/2)
        p = 0.3
        m = EpsilonMachine(
            states=("hub", "l1", "l2"),
            alphabet=("x", "y"),
            transitions={
                ("hub", "x"): ("l1", p),
                ("hub", "y"): ("l2", 1 - p),
                ("l1", "x"): ("hub", 1.0),
                ("l2", "y"): ("hub", 1.0),
            },
        )
        pi = stationary_distribution(m)
        assert pi["hub"] == pytest.approx(0.5, abs=1e-12)
        assert pi["l1"] == pytest.approx(p / 2, abs=1e-12)

    def test_invalid_machine_rejected(self):
        m = EpsilonMachine(
            states=("a", "b"), alphabet=("x",),
            transitions={("a", "x"): ("a", 1.0), ("b", "x"): ("b", 1.0)},
        )
        with pytest.raises(InvalidMachineError):
            stationary_distribution(m)


class TestWordDistribution:
    def test_length_zero(self):
        wd = word_distribution(fig1_machine(0.7, 0.6), 0)
        assert set(wd.entries) == {()}
        for s in ("s1", "s2"):
            assert wd.conditional((), s) == 1.0
            assert wd.end_state((), s) == s

    def test_length_one_from_first_state(self):
        p = 0.7
        wd = word_distribution(fig1_machine(p, 0.6), 1)
        assert wd.conditional(("u",), "s1") == pytest.approx(p)
        assert wd.end_state(("u",), "s1") == "s1"
        assert wd.conditional(("d",), "s1") == pytest.approx(1 - p)
        assert wd.end_state(("d",), "s1") == "s2"

    def test_length_two_chain_product(self):
        p = 0.7
        wd = word_distribution(fig1_machine(p, 0.6), 2)
        assert wd.conditional(("u", "d"), "s1") == pytest.approx(p * (1 - p), abs=1e-15)
        assert wd.end_state(("u", "d"), "s1") == "s2"

    def test_per_state_normalization(self):
        rng = random.Random(7)
        for _ in range(10):
            m = random_unifilar_machine(rng, rng.randint(1, 4))
            wd = word_distribution(m, 4)
            for s in m.states:
                total = math.fsum(wd.conditional(w, s) for w in wd.entries)
                assert total == pytest.approx(1.0, abs=1e-12)

    def test_stationary_marginal_sums_to_one(self):
        m = fig1_machine(0.9, 0.4)
        wd = word_distribution(m, 5)
        pi = stationary_distribution(m)
        assert math.fsum(wd.stationary_probs(pi).values()) == pytest.approx(1.0, abs=1e-10)

    def test_budget_guard(self):
        with pytest.raises(WordLengthError):
            word_distribution(fig1_machine(0.7, 0.6), 21)
        with pytest.raises(WordLengthError):
            block_entropy(fig1_machine(0.7, 0.6), 21)


class TestBlockEntropy:
    def test_length_zero_is_zero(self):
        assert block_entropy(fig1_machine(0.7, 0.6), 0) == 0.0

    def test_fair_coin_is_L_bits(self):
        assert block_entropy(coin_machine(0.5), 3) == pytest.approx(3.0, abs=1e-12)

    def test_symmetric_pair_one_bit_at_length_one(self):
        # uniform stationary distribution makes each symbol equally likely
        assert block_entropy(fig1_machine(0.9, 0.9), 1) == pytest.approx(1.0, abs=1e-12)

    def test_agrees_with_word_enumeration(self):
        # independent code path: explicit words, stationary marginal, entropy
        rng = random.Random(11)
        for _ in range(10):
            m = random_unifilar_machine(rng, rng.randint(1, 4), rng.choice((2, 3)))
            pi = stationary_distribution(m)
            for L in (1, 3, 5):
                wd = word_distribution(m, L)
                h_words = -math.fsum(
                    pr * math.log2(pr) for pr in wd.stationary_probs(pi).values() if pr > 0
                )
                assert block_entropy(m, L) == pytest.approx(h_words, abs=1e-10)

    @given(p=probs, q=probs)
    @settings(max_examples=40, deadline=None)
    def test_monotone_concave(self, p, q):
        m = fig1_machine(p, q)
        hs = [block_entropy(m, L) for L in range(5)]
        diffs = [hs[i + 1] - hs[i] for i in range(4)]
        for d in diffs:
            assert d >= -1e-9
        for i in range(3):
            assert diffs[i + 1] <= diffs[i] + 1e-9


class TestEntropyRate:
    def test_deterministic_cycle_is_zero(self):
        assert entropy_rate(cycle_machine(4)) == 0.0

    def test_fair_coin_is_one_bit(self):
        assert entropy_rate(coin_machine(0.5)) == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize("p,q", [(0.7, 0.6), (0.9, 0.3)])
    def test_closed_form_and_block_difference(self, p, q):
        m = fig1_machine(p, q)
        pi1 = (1 - q) / (2 - p - q)
        expected = pi1 * h2(p) + (1 - pi1) * h2(q)
        h = entropy_rate(m)
        assert h == pytest.approx(expected, abs=1e-12)
        # last-symbol machines have exactly constant block differences
        assert block_entropy(m, 16) - block_entropy(m, 15) == pytest.approx(h, abs=1e-10)

    def test_hidden_state_machine_difference_brackets_rate(self):
        rng = random.Random(3)
        m = random_unifilar_machine(rng, 3)
        h = entropy_rate(m)
        d_lo = block_entropy(m, 9) - block_entropy(m, 8)
        d_hi = block_entropy(m, 5) - block_entropy(m, 4)
        assert h - 1e-12 <= d_lo <= d_hi + 1e-12

    @given(p=probs, q=probs)
    @settings(max_examples=40, deadline=None)
    def test_bounded_by_log_alphabet(self, p, q):
        assert entropy_rate(fig1_machine(p, q)) <= 1.0 + 1e-12


class TestRelabeling:
    def test_scalar_outputs_exactly_invariant(self):
        m = fig1_machine(0.9238476, 0.3141592)
        swapped = m.relabeled(
            state_map={"s1": "s2", "s2": "s1"}, symbol_map={"u": "d", "d": "u"}
        )
        assert entropy_rate(swapped) == entropy_rate(m)
        for L in (1, 2, 5):
            assert block_entropy(swapped, L) == block_entropy(m, L)
        pi = stationary_distribution(m)
        pi_swapped = stationary_distribution(swapped)
        assert pi_swapped["s2"] == pi["s1"]
        assert pi_swapped["s1"] == pi["s2"]

    def test_renamed_identifiers_exactly_invariant(self):
        rng = random.Random(23)
        m = random_unifilar_machine(rng, 3)
        renamed = m.relabeled(state_map={"s0": "west", "s1": "north", "s2": "east"})
        assert entropy_rate(renamed) == entropy_rate(m)
        assert block_entropy(renamed, 4) == block_entropy(m, 4)


class TestMachineFiles:
    def test_round_trip(self, tmp_path):
        m = fig1_machine(0.7, 0.6)
        path = tmp_path / "machine.json"
        save_machine(m, str(path))
        loaded = load_machine(str(path))
        assert loaded.states == m.states
        assert loaded.alphabet == m.alphabet
        assert loaded.transitions == m.transitions

    def test_duplicate_from_symbol_rejected(self):
        doc = machine_to_dict(fig1_machine(0.7, 0.6))
        doc["transitions"].append({"from": "s1", "symbol": "u", "to": "s2", "p": 0.1})
        with pytest.raises(MachineFormatError, match="duplicate"):
            machine_from_dict(doc)

    def test_missing_key_rejected(self):
        with pytest.raises(MachineFormatError):
            machine_from_dict({"states": ["a"], "transitions": []})

    def test_invalid_machine_rejected_on_load(self, tmp_path):
        doc = {
            "states": ["a"],
            "alphabet": ["x"],
            "transitions": [{"from": "a", "symbol": "x", "to": "a", "p": 0.9}],
        }
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(InvalidMachineError) as exc:
            load_machine(str(path))
        assert "row-sum" in exc.value.report.codes()

    def test_non_json_rejected(self, tmp_path):
        path = tmp_path / "junk.json"
        path.write_text("not json {")
        with pytest.raises(MachineFormatError):
            load_machine(str(path))
