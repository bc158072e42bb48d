from fractions import Fraction

import pytest

from quadorbit.process import (
    MAX_EXACT_LEVEL,
    coin_transition,
    fixed_leaf_count,
    fpp_brute_force,
    fpp_dyadic,
    fpp_enclosure,
    fpp_full_binary,
    martingale_check,
    parse_mask,
    sample_codings,
    simulate_process,
    stay_probability_bound,
    within_three_sigma,
    wreath_elements,
)
from quadorbit.reporting import canonical_json


class TestFpp:
    @pytest.mark.parametrize("n,expected", [(1, Fraction(1, 2)), (2, Fraction(3, 8)), (3, Fraction(39, 128))])
    def test_small_values(self, n, expected):
        assert fpp_full_binary(n) == expected

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matches_brute_force(self, n):
        assert fpp_full_binary(n) == fpp_brute_force(n)

    def test_group_orders(self):
        assert sum(1 for _ in wreath_elements(3)) == 128
        assert sum(1 for _ in wreath_elements(2)) == 8

    def test_fixed_leaf_distribution_level2(self):
        counts = {}
        for g in wreath_elements(2):
            counts[fixed_leaf_count(g, 2)] = counts.get(fixed_leaf_count(g, 2), 0) + 1
        # swap at root: 4 elements fix nothing; identity root: (X via two leaves)
        assert counts == {0: 5, 2: 2, 4: 1}

    def test_strictly_decreasing_exact(self):
        values = [fpp_full_binary(n) for n in range(1, 17)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_exact_guard(self):
        with pytest.raises(ValueError):
            fpp_full_binary(MAX_EXACT_LEVEL + 1)

    def test_dyadic_matches_fraction(self):
        for n in (1, 2, 3, 8, 12):
            a, e = fpp_dyadic(n)
            assert Fraction(a, 1 << e) == fpp_full_binary(n)
            assert a % 2 == 1

    def test_enclosure_contains_exact(self):
        for n in (1, 5, 10, 16):
            lo, hi = fpp_enclosure(n)
            exact = fpp_full_binary(n)
            assert lo <= exact <= hi

    def test_enclosures_decrease_through_64(self):
        bounds = [fpp_enclosure(n) for n in range(1, 65)]
        for (lo_prev, hi_prev), (lo_cur, hi_cur) in zip(bounds, bounds[1:]):
            assert hi_cur < lo_prev  # certified strict decrease
        assert bounds[-1][1] < Fraction(1, 16)


class TestCoinModel:
    def test_distributions(self):
        assert coin_transition(2) == {0: Fraction(1, 4), 2: Fraction(1, 2), 4: Fraction(1, 4)}
        assert coin_transition(0) == {0: Fraction(1)}
        assert coin_transition(4)[4] == Fraction(3, 8)

    def test_odd_rejected(self):
        with pytest.raises(ValueError):
            coin_transition(3)

    def test_martingale_identity(self):
        assert martingale_check(range(0, 130, 2))

    def test_stay_probability(self):
        assert stay_probability_bound(2) == Fraction(1, 2)
        assert stay_probability_bound(4) == Fraction(3, 8)
        assert stay_probability_bound(10) == Fraction(63, 256)
        for u in range(4, 130, 2):
            assert stay_probability_bound(u) < Fraction(1, 2)


class TestSimulation:
    def test_within_three_sigma_of_exact_fpp(self):
        report = simulate_process(seed=20250810, depth=12, trials=100_000)
        for level in report.levels:
            assert within_three_sigma(level.positive, level.trials, level.exact_fpp)

    def test_all_nonmaximal_doubling_never_dies(self):
        report = simulate_process(seed=3, depth=8, trials=500, maximal_mask=[False] * 8)
        assert all(level.p_hat == 1 for level in report.levels)

    def test_hold_model(self):
        report = simulate_process(
            seed=3, depth=6, trials=400, maximal_mask=[False] * 6, nonmaximal_model="hold"
        )
        assert all(level.p_hat == 1 for level in report.levels)

    def test_mixed_mask(self):
        mask = [True, False, True, False]
        report = simulate_process(seed=9, depth=4, trials=2000, maximal_mask=mask)
        # non-maximal doubling cannot kill paths: positives never drop there
        assert report.levels[1].positive == report.levels[0].positive
        assert report.levels[3].positive == report.levels[2].positive

    def test_deterministic_across_workers(self):
        one = simulate_process(seed=77, depth=10, trials=30_000, workers=1)
        eight = simulate_process(seed=77, depth=10, trials=30_000, workers=8)
        assert canonical_json(one.to_dict()) == canonical_json(eight.to_dict())

    def test_deterministic_rerun(self):
        a = simulate_process(seed=5, depth=6, trials=5_000)
        b = simulate_process(seed=5, depth=6, trials=5_000)
        assert canonical_json(a.to_dict()) == canonical_json(b.to_dict())

    def test_mask_parsing(self):
        assert parse_mask("all", 3) == [True, True, True]
        assert parse_mask("none", 2) == [False, False]
        assert parse_mask("101", 3) == [True, False, True]
        with pytest.raises(ValueError):
            parse_mask("10", 3)

    def test_path_invariants(self):
        from quadorbit.process import simulate_paths

        for path in simulate_paths(seed=13, depth=10, trials=400):
            assert path[0] in (0, 2)
            died = False
            for n, x in enumerate(path, start=1):
                assert 0 <= x <= 2**n
                assert x % 2 == 0
                if died:
                    assert x == 0
                died = died or x == 0


class TestSampling:
    def test_uniform_first_index(self):
        report = sample_codings([Fraction(1, 2), Fraction(1, 2)], seed=1, length=64, samples=10_000)
        assert within_three_sigma(report.first_index_counts.get(1, 0), 10_000, Fraction(1, 2))

    def test_weighted_first_index(self):
        report = sample_codings([Fraction(1, 4), Fraction(3, 4)], seed=2, length=16, samples=10_000)
        assert within_three_sigma(report.first_index_counts.get(1, 0), 10_000, Fraction(1, 4))

    def test_position_totals(self):
        report = sample_codings([Fraction(1, 2), Fraction(1, 2)], seed=3, length=10, samples=500)
        assert sum(report.index_totals.values()) == 10 * 500

    def test_weights_validated(self):
        with pytest.raises(ValueError):
            sample_codings([Fraction(1, 2), Fraction(1, 3)], seed=1, length=4, samples=2)

    def test_certified_samples_with_tool_set(self):
        from quadorbit.algebra import parse_poly
        from quadorbit.dynamics import QT, GeneratorSet

        gens = GeneratorSet.from_constants([parse_poly("t"), parse_poly("1")], ring=QT)
        report = sample_codings(
            [Fraction(1, 2), Fraction(1, 2)],
            seed=11,
            length=8,
            samples=40,
            gens=gens,
            certify_count=40,
        )
        for cert in report.certificates:
            word = [int(x) for x in cert["coding"].split("|")[0].split(",")]
            if word[0] == 1:  # outermost map is x^2+t: trick applies
                assert cert["stable"] is True
                assert cert["tool_guarantee"] is True
                for n in range(2, 9):
                    if word[n - 1] == 1:
                        assert n in cert["maximal_levels"]
