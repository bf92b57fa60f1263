import math
from fractions import Fraction

import pytest

from swtrace.exact_dist import sw_exact
from swtrace.lower_bounds import (
    MIN_TRIALS,
    commuting_fidelity,
    discrimination_experiment,
    estimate_observation,
    hard_pair_maximally_mixed,
    hard_pair_qubit,
    helstrom_bound,
    likelihood_rule,
    min_copies_for_likelihood_success,
    mixed_pair_l1,
    qubit_copies_scaling,
    shape_observation,
    threshold_rule,
    uniform_rank_pair,
)
from swtrace.partitions import Partition
from swtrace.power_trace import true_power_trace
from swtrace.sampling import RngStream
from swtrace.schur import Spectrum


class TestFidelity:
    def test_identical_states(self):
        assert commuting_fidelity((0.5, 0.3, 0.2), (0.5, 0.3, 0.2)) == pytest.approx(1.0, abs=1e-12)

    def test_symmetry_and_padding(self):
        a, b = (0.9, 0.1), (0.6, 0.3, 0.1)
        assert commuting_fidelity(a, b) == pytest.approx(commuting_fidelity(b, a), abs=1e-15)

    def test_orthogonal_states(self):
        assert commuting_fidelity((1.0,), (0.0, 1.0)) == 0.0

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            commuting_fidelity((1.2, -0.2), (0.5, 0.5))


class TestQubitPair:
    def test_infidelity_matches_eigenbasis_fidelity(self):
        for eps in (Fraction(1, 100), Fraction(1, 10), Fraction(1, 4)):
            pair = hard_pair_qubit(2, eps)
            a = (Fraction(2, 3) + eps, Fraction(1, 3) - eps)
            b = (Fraction(2, 3) - eps, Fraction(1, 3) + eps)
            assert pair.infidelity == pytest.approx(1 - commuting_fidelity(a, b), abs=1e-12)

    def test_quadratic_infidelity_limit(self):
        # gamma / eps^2 -> 9/4 as eps -> 0
        assert hard_pair_qubit(2, 0.01).infidelity / 0.01**2 == pytest.approx(
            2.2503798442086165, abs=1e-12
        )
        assert hard_pair_qubit(2, 1e-4).infidelity / 1e-8 == pytest.approx(9 / 4, rel=1e-4)

    @pytest.mark.parametrize("q", [1.5, 2.0, 2.5, 3.0])
    def test_linear_gap_limit(self, q):
        # gap / eps -> 2 q (2^(q-1) - 1) / 3^(q-1)
        eps = 1e-3
        expected = 2 * q * (2 ** (q - 1) - 1) / 3 ** (q - 1)
        assert hard_pair_qubit(q, eps).trace_gap / eps == pytest.approx(expected, rel=0.02)

    def test_exact_eps_gives_exact_spectra(self):
        pair = hard_pair_qubit(2, Fraction(1, 10))
        assert all(s.is_exact for s in pair.spectra)
        assert pair.spectra[0].values == (Fraction(23, 30), Fraction(7, 30))
        assert pair.spectra[1].values == (Fraction(17, 30), Fraction(13, 30))

    def test_wide_split_is_stored_sorted(self):
        pair = hard_pair_qubit(2, Fraction(1, 4))  # second state reverses order
        for s in pair.spectra:
            assert s.values[0] >= s.values[1]

    def test_gap_sign_and_zero_split(self):
        assert hard_pair_qubit(2, 0.05).trace_gap > 0
        assert hard_pair_qubit(2, 0).trace_gap == 0

    @pytest.mark.parametrize("eps", [-0.01, 1 / 3, 0.4])
    def test_eps_domain(self, eps):
        with pytest.raises(ValueError):
            hard_pair_qubit(2, eps)

    def test_q_domain(self):
        with pytest.raises(ValueError):
            hard_pair_qubit(1.0, 0.1)


class TestMixedPair:
    def test_frozen_ranks_small(self):
        pair = hard_pair_maximally_mixed(1.5, 0.125)
        assert (pair.rank_r, pair.rank_d) == (16, 65)
        assert pair.spectra[0].dimension == 16
        assert pair.spectra[1].dimension == 65

    def test_frozen_ranks_paper_scale(self):
        pair = hard_pair_maximally_mixed(1.5, 0.01)
        assert (pair.rank_r, pair.rank_d) == (2500, 10001)
        assert 1 / pair.rank_r ** 0.5 == pytest.approx(0.02)
        assert 1 / pair.rank_d ** 0.5 <= 0.01

    def test_gap_exceeds_eps(self):
        pair = hard_pair_maximally_mixed(1.5, 0.125)
        assert pair.trace_gap >= pair.epsilon

    def test_infidelity_value(self):
        pair = hard_pair_maximally_mixed(1.5, 0.125)
        assert pair.infidelity == pytest.approx(1 - math.sqrt(16 / 65), abs=1e-12)

    def test_q_domain(self):
        with pytest.raises(ValueError):
            hard_pair_maximally_mixed(2.0, 0.01)
        with pytest.raises(ValueError):
            hard_pair_maximally_mixed(1.5, 0.9)  # rank r would be 0

    def test_rank_pair_by_hand(self):
        pair = uniform_rank_pair(4, 8, 1.5)
        assert pair.trace_gap == pytest.approx(0.5 - 8**-0.5, abs=1e-15)
        assert pair.infidelity == pytest.approx(1 - math.sqrt(0.5), abs=1e-15)
        with pytest.raises(ValueError):
            uniform_rank_pair(8, 4, 1.5)


class TestHelstrom:
    def test_values(self):
        assert helstrom_bound(0) == 0.5
        assert helstrom_bound(2) == 1.0
        assert helstrom_bound(Fraction(125, 512)) == pytest.approx(0.5 + 125 / 2048)

    def test_domain(self):
        with pytest.raises(ValueError):
            helstrom_bound(-0.1)
        with pytest.raises(ValueError):
            helstrom_bound(2.5)


class TestMixedPairL1:
    def test_frozen_value(self):
        assert mixed_pair_l1(4, 4, 8) == Fraction(125, 512)

    def test_single_copy_is_indistinguishable(self):
        # one copy reveals nothing: both shape distributions are a point mass
        assert mixed_pair_l1(1, 3, 7) == 0

    def test_monotone_in_copies(self):
        values = [mixed_pair_l1(n, 4, 8) for n in range(1, 5)]
        assert values == sorted(values)

    def test_domain(self):
        with pytest.raises(ValueError):
            mixed_pair_l1(5, 4, 8)  # n > r
        with pytest.raises(ValueError):
            mixed_pair_l1(2, 8, 4)  # r > d


class TestDecisionRules:
    def test_likelihood_rule_prefers_larger_mass(self):
        p1 = sw_exact(Spectrum.uniform(4), 4)
        p2 = sw_exact(Spectrum.uniform(8), 4)
        rule = likelihood_rule(p1, p2)
        # a flat shape comes from repeated letters (low rank), a tall one from
        # distinct letters (high rank)
        assert rule(Partition((4,))) == 1
        assert rule(Partition((1, 1, 1, 1))) == 2

    def test_likelihood_ties_go_to_second(self):
        p = sw_exact(Spectrum.uniform(2), 2)
        rule = likelihood_rule(p, p)
        assert rule(Partition((2,))) == 2

    def test_threshold_rule(self):
        rule = threshold_rule(0.5, above=1)
        assert rule(0.7) == 1
        assert rule(0.3) == 2
        flipped = threshold_rule(0.5, above=2)
        assert flipped(0.7) == 2


class TestDiscriminationExperiment:
    def test_requires_enough_trials(self):
        pair = uniform_rank_pair(4, 8, 1.5)
        with pytest.raises(ValueError):
            discrimination_experiment(pair, shape_observation(4), lambda o: 1, MIN_TRIALS - 1, RngStream(0))

    def test_constant_rule_wins_half_the_time(self):
        pair = uniform_rank_pair(4, 8, 1.5)
        rate = discrimination_experiment(pair, shape_observation(2), lambda o: 1, 800, RngStream(5))
        assert abs(rate - 0.5) <= 3 * math.sqrt(0.25 / 800)

    def test_deterministic(self):
        pair = uniform_rank_pair(4, 8, 1.5)
        rule = likelihood_rule(sw_exact(pair.spectra[0], 4), sw_exact(pair.spectra[1], 4))
        a = discrimination_experiment(pair, shape_observation(4), rule, 300, RngStream(1, 2))
        b = discrimination_experiment(pair, shape_observation(4), rule, 300, RngStream(1, 2))
        assert a == b

    def test_likelihood_rate_respects_helstrom_cap(self):
        pair = uniform_rank_pair(4, 8, 1.5)
        n, trials = 4, 2000
        rule = likelihood_rule(sw_exact(pair.spectra[0], n), sw_exact(pair.spectra[1], n))
        rate = discrimination_experiment(pair, shape_observation(n), rule, trials, RngStream(88))
        cap = helstrom_bound(mixed_pair_l1(n, 4, 8))
        sigma = math.sqrt(cap * (1 - cap) / trials)
        assert rate <= cap + 3 * sigma
        assert rate >= cap - 4 * sigma  # the rule attains the cap, not just respects it

    def test_estimator_separates_qubit_pair(self):
        pair = hard_pair_qubit(2, 0.15)
        truths = [true_power_trace(s, 2) for s in pair.spectra]
        rule = threshold_rule(sum(truths) / 2, above=1)
        rate = discrimination_experiment(
            pair, estimate_observation(2, 0.2), rule, 120, RngStream(12)
        )
        assert rate >= 2 / 3


class TestScans:
    def test_min_copies_scan_structure(self):
        n_star, records = min_copies_for_likelihood_success(4, 8)
        assert n_star is None  # four copies of rank 4 cannot reach 2/3
        assert [rec["n"] for rec in records] == [1, 2, 3, 4]
        assert records[0]["success"] == 0.5
        successes = [rec["success"] for rec in records]
        assert successes == sorted(successes)

    def test_min_copies_finds_threshold_when_reachable(self):
        n_star, records = min_copies_for_likelihood_success(2, 30, target=0.55)
        assert n_star == records[-1]["n"]
        assert records[-1]["success"] > 0.55

    def test_qubit_scaling_report(self):
        grid = [Fraction(3, 10), Fraction(1, 4)]
        report = qubit_copies_scaling(2, grid, n_max=12)
        assert [rec["eps"] for rec in report["records"]] == [0.3, 0.25]
        for rec in report["records"]:
            assert rec["n_star"] is None or 1 <= rec["n_star"] <= 12
        gammas = [rec["gamma"] for rec in report["records"]]
        assert gammas[0] > gammas[1]
