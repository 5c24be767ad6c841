"""Classical measures: statistical complexity, merging, excess entropy."""

from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simpliq import (
    ComplexityProfile,
    EpsilonMachine,
    MarkovOrderError,
    compute_profile,
    excess_entropy,
    excess_entropy_block,
    excess_entropy_markov1,
    merge_iid_degenerate,
    statistical_complexity,
)
from conftest import coin_machine, cycle_machine, fig1_machine, random_unifilar_machine

probs = st.floats(min_value=0.01, max_value=0.99)


def h2(x: float) -> float:
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


class TestStatisticalComplexity:
    def test_single_state_is_zero(self):
        assert statistical_complexity(coin_machine(0.3)) == 0.0

    def test_uniform_two_states_is_one_bit(self):
        assert statistical_complexity(fig1_machine(0.9, 0.9)) == pytest.approx(1.0, abs=1e-12)

    def test_skewed_pair_binary_entropy(self):
        # pi_1 = (1-0.6)/(2-0.9-0.6) = 0.8
        got = statistical_complexity(fig1_machine(0.9, 0.6))
        assert got == pytest.approx(h2(0.8), abs=1e-12)

    def test_relabel_invariance_exact(self):
        m = fig1_machine(0.876, 0.123)
        renamed = m.relabeled(state_map={"s1": "x", "s2": "y"})
        assert statistical_complexity(renamed) == statistical_complexity(m)


class TestMergeIidDegenerate:
    def test_fair_pair_collapses(self):
        merged = merge_iid_degenerate(fig1_machine(0.5, 0.5))
        assert len(merged.states) == 1
        assert statistical_complexity(merged) == 0.0

    def test_p_equals_one_minus_q_collapses(self):
        merged = merge_iid_degenerate(fig1_machine(0.3, 0.7))
        assert len(merged.states) == 1

    def test_distinct_rows_unchanged(self):
        m = fig1_machine(0.9, 0.6)
        assert merge_iid_degenerate(m) is m

    def test_just_outside_tolerance_unchanged(self):
        m = fig1_machine(0.3, 0.7 + 1e-10)
        assert len(merge_iid_degenerate(m).states) == 2

    def test_chained_merge_reaches_fixpoint(self):
        # c and b merge first; that makes a equivalent to the survivor
        m = EpsilonMachine(
            states=("a", "b", "c"),
            alphabet=("x", "y"),
            transitions={
                ("a", "x"): ("b", 0.5),
                ("a", "y"): ("c", 0.5),
                ("b", "x"): ("b", 0.5),
                ("b", "y"): ("c", 0.5),
                ("c", "x"): ("b", 0.5),
                ("c", "y"): ("c", 0.5),
            },
        )
        merged = merge_iid_degenerate(m)
        assert len(merged.states) == 1

    def test_no_identical_rows_after_merge(self):
        rng = random.Random(5)
        for _ in range(20):
            p = rng.random() * 0.98 + 0.01
            m = fig1_machine(p, 1.0 - p)
            merged = merge_iid_degenerate(m)
            rows = [tuple(sorted(merged.row(s).items())) for s in merged.states]
            assert len(rows) == len(set(rows))


class TestExcessEntropyMarkov1:
    def test_iid_is_zero(self):
        with pytest.raises(MarkovOrderError):
            # single state cannot biject onto a two-symbol alphabet
            excess_entropy_markov1(coin_machine(0.5))
        assert excess_entropy(coin_machine(0.5)) == 0.0

    def test_symmetric_pair_single_step_information(self):
        got = excess_entropy_markov1(fig1_machine(0.9, 0.9))
        assert got == pytest.approx(1.0 - h2(0.9), abs=1e-12)

    def test_frozen_phases_one_bit(self):
        # p = q = 1: the next symbol repeats the last one deterministically
        m = EpsilonMachine(
            states=("s1", "s2"),
            alphabet=("u", "d"),
            transitions={("s1", "u"): ("s1", 1.0), ("s2", "d"): ("s2", 1.0)},
        )
        assert excess_entropy_markov1(m) == pytest.approx(1.0, abs=1e-12)

    def test_structural_rejection_of_hidden_state(self):
        # both symbols can lead into the same state, so no bijection
        m = EpsilonMachine(
            states=("a", "b"),
            alphabet=("x", "y"),
            transitions={
                ("a", "x"): ("b", 0.5),
                ("a", "y"): ("b", 0.5),
                ("b", "x"): ("a", 0.7),
                ("b", "y"): ("b", 0.3),
            },
        )
        with pytest.raises(MarkovOrderError):
            excess_entropy_markov1(m)


class TestExcessEntropyBlock:
    def test_iid_converges_immediately(self):
        est = excess_entropy_block(coin_machine(0.3), tol=1e-9)
        assert est.value == 0.0
        assert est.L_used == 1
        assert est.converged

    def test_matches_closed_form(self):
        est = excess_entropy_block(fig1_machine(0.9, 0.9), tol=1e-8)
        assert est.converged
        assert est.value == pytest.approx(excess_entropy_markov1(fig1_machine(0.9, 0.9)), abs=1e-6)

    def test_deterministic_period_two_is_one_bit(self):
        est = excess_entropy_block(cycle_machine(2), tol=1e-9)
        assert est.value == pytest.approx(1.0, abs=1e-12)
        assert est.converged

    def test_unconverged_flagged(self):
        est = excess_entropy_block(fig1_machine(0.999, 0.999), tol=1e-12, L_max=3)
        assert not est.converged
        assert est.delta > 1e-12

    def test_estimator_agreement_on_random_pairs(self):
        rng = random.Random(17)
        checked = 0
        while checked < 100:
            p = rng.random() * 0.98 + 0.01
            q = rng.random() * 0.98 + 0.01
            if abs(p - (1.0 - q)) < 1e-6:
                continue
            m = fig1_machine(p, q)
            exact = excess_entropy_markov1(m)
            block = excess_entropy_block(m, tol=1e-9, L_max=20)
            assert block.converged
            assert block.value == pytest.approx(exact, abs=1e-6)
            checked += 1

    @given(p=probs, q=probs)
    @settings(max_examples=30, deadline=None)
    def test_nondecreasing_and_bounded_by_cmu(self, p, q):
        from simpliq import block_entropy, entropy_rate

        m = fig1_machine(p, q)
        h = entropy_rate(m)
        c_mu = statistical_complexity(m)
        prev = 0.0
        for L in range(1, 6):
            e_l = block_entropy(m, L) - L * h
            assert e_l >= prev - 1e-9
            assert e_l <= c_mu + 1e-9
            prev = e_l


class TestProfile:
    def test_holevo_flag(self):
        good = ComplexityProfile(h_mu=0.5, C_mu=0.9, E=0.2, C_q=0.5, L_used=1)
        assert good.holevo_ok()
        bad = ComplexityProfile(h_mu=0.5, C_mu=0.9, E=0.6, C_q=0.5, L_used=1)
        assert not bad.holevo_ok()

    def test_compute_profile_fields(self):
        prof = compute_profile(fig1_machine(0.9, 0.9), encoding_length=1)
        assert prof.C_mu == pytest.approx(1.0, abs=1e-12)
        assert prof.E == pytest.approx(1.0 - h2(0.9), abs=1e-9)
        assert prof.C_q == pytest.approx(h2(0.8), abs=1e-9)
        assert prof.L_used == 1
        assert prof.holevo_ok()

    def test_profile_on_random_machines(self):
        rng = random.Random(29)
        for _ in range(10):
            m = random_unifilar_machine(rng, rng.randint(1, 4))
            prof = compute_profile(m, encoding_length=2, e_L_max=10)
            assert prof.holevo_ok()
            for value in (prof.h_mu, prof.C_mu, prof.E, prof.C_q):
                assert math.isfinite(value) and value >= 0.0
