"""Inference pipeline: fuzzification through defuzzification.

The frozen constant in TestDefuzzify below was produced by the independent
reference pipeline in oracles.py (resolution 100000) before this engine was
written.
"""

import math
import random
import warnings

import numpy as np
import pytest

from frank.errors import ConfigError
from frank.fis import (AggregateSet, FisConfig, aggregate, default_variable,
                       defuzzify, evaluate, fire_rule, fuzzify, imply,
                       rule_strengths)
from frank.membership import MembershipFunction
from frank.rules import parse_rule

from generators import random_config, random_inputs
from oracles import reference_rfis_score


def two_input_config(resolution=1001, **overrides):
    """tf/idf inputs, relevance output, the rule pair with a negated twin."""
    settings = dict(
        inputs=(default_variable("tf"), default_variable("idf")),
        output=default_variable("relevance"),
        rules=(
            parse_rule("if (tf is high) and (idf is high) -> (relevance is high)"),
            parse_rule("if (tf is not high) and (idf is not high) "
                       "-> (relevance is not high)"),
        ),
        resolution=resolution,
    )
    settings.update(overrides)
    return FisConfig(**settings)


def default_rfis_config(t, resolution=1001):
    """The instantiated ranking system for t query terms."""
    inputs = [default_variable(f"tf_{i}") for i in range(1, t + 1)]
    inputs += [default_variable(f"idf_{i}") for i in range(1, t + 1)]
    inputs.append(default_variable("overlap"))
    rules = []
    for i in range(1, t + 1):
        w = repr(1.0 / t)
        rules.append(parse_rule(
            f"if (tf_{i} is high) and (idf_{i} is high) "
            f"-> (relevance is high) weight {w}"))
        rules.append(parse_rule(
            f"if (tf_{i} is not high) and (idf_{i} is not high) "
            f"-> (relevance is not high) weight {w}"))
    ow = repr((1.0 / t) * (1.0 / 6.0))
    rules.append(parse_rule(
        f"if (overlap is high) -> (relevance is high) weight {ow}"))
    rules.append(parse_rule(
        f"if (overlap is not high) -> (relevance is not high) weight {ow}"))
    return FisConfig(tuple(inputs), default_variable("relevance"),
                     tuple(rules), resolution=resolution)


def rfis_inputs(tf, idf, overlap):
    values = {f"tf_{i}": v for i, v in enumerate(tf, start=1)}
    values |= {f"idf_{i}": v for i, v in enumerate(idf, start=1)}
    values["overlap"] = overlap
    return values


class TestFuzzify:
    def test_complementary_degrees(self):
        config = two_input_config()
        degrees = fuzzify(config, {"tf": 0.7, "idf": 0.6})
        assert degrees[("tf", "high")] == 0.7
        assert degrees[("tf", "not_high")] == pytest.approx(0.3)
        assert degrees[("idf", "high")] == 0.6
        assert degrees[("idf", "not_high")] == pytest.approx(0.4)

    def test_midpoint_symmetry(self):
        config = two_input_config()
        degrees = fuzzify(config, {"tf": 0.5, "idf": 0.5})
        assert degrees[("tf", "high")] == 0.5
        assert degrees[("tf", "not_high")] == 0.5

    def test_out_of_universe_input_clamped(self):
        config = two_input_config()
        degrees = fuzzify(config, {"tf": 1.3, "idf": -0.2})
        assert degrees[("tf", "high")] == 1.0
        assert degrees[("idf", "high")] == 0.0
        assert degrees[("idf", "not_high")] == 1.0

    def test_missing_variable_is_named(self):
        config = two_input_config()
        with pytest.raises(ConfigError, match="idf"):
            fuzzify(config, {"tf": 0.5})

    def test_extra_variable_is_named(self):
        config = two_input_config()
        with pytest.raises(ConfigError, match="bogus"):
            fuzzify(config, {"tf": 0.5, "idf": 0.5, "bogus": 1.0})

    def test_complement_consistency_is_exact(self):
        """not_high is the pointwise complement of high, bit for bit."""
        config = two_input_config()
        rng = np.random.default_rng(11)
        for x in rng.uniform(0.0, 1.0, size=200):
            degrees = fuzzify(config, {"tf": float(x), "idf": 0.5})
            assert degrees[("tf", "not_high")] == 1.0 - degrees[("tf", "high")]


class TestFireRule:
    def test_product_of_conjuncts(self):
        rule = parse_rule("if (tf is high) and (idf is high) -> (relevance is high)")
        memberships = {("tf", "high"): 0.7, ("idf", "high"): 0.6}
        assert fire_rule(rule, memberships, "prod") == 0.42

    def test_min_of_conjuncts(self):
        rule = parse_rule("if (tf is high) and (idf is high) -> (relevance is high)")
        memberships = {("tf", "high"): 0.7, ("idf", "high"): 0.6}
        assert fire_rule(rule, memberships, "min") == 0.6

    def test_product_identity(self):
        rule = parse_rule("if (tf is high) and (idf is high) -> (relevance is high)")
        for x in (0.0, 0.37, 0.5, 1.0):
            memberships = {("tf", "high"): x, ("idf", "high"): 1.0}
            assert fire_rule(rule, memberships, "prod") == x

    def test_negated_conjunct_uses_complement(self):
        rule = parse_rule("if (tf is not high) -> (relevance is not high)")
        assert fire_rule(rule, {("tf", "high"): 0.7}, "prod") == pytest.approx(0.3)

    def test_weight_scales_strength(self):
        rule = parse_rule(
            "if (tf is high) -> (relevance is high) weight 0.25")
        assert fire_rule(rule, {("tf", "high"): 0.8}, "prod") == 0.2

    def test_single_conjunct_skips_fold(self):
        rule = parse_rule("if (tf is high) -> (relevance is high)")
        assert fire_rule(rule, {("tf", "high"): 0.55}, "min") == 0.55


class TestImply:
    def setup_method(self):
        grid = np.linspace(0.0, 1.0, 101)
        self.consequent = MembershipFunction.triangular(0.0, 1.0, 1.0).sample(grid)

    def test_full_strength_is_identity(self):
        for method in ("prod", "min"):
            implied = imply(self.consequent, 1.0, method)
            assert np.array_equal(implied, self.consequent)

    def test_prod_scales_shape(self):
        implied = imply(self.consequent, 0.42, "prod")
        assert implied.max() == pytest.approx(0.42)
        # scaling preserves shape: ratios to the original are constant
        mask = self.consequent > 0
        np.testing.assert_allclose(implied[mask] / self.consequent[mask], 0.42)

    def test_min_truncates_to_plateau(self):
        implied = imply(self.consequent, 0.42, "min")
        assert implied.max() == 0.42
        plateau = implied == 0.42
        assert plateau.sum() > 1  # a flat top, not a single peak
        below = self.consequent < 0.42
        assert np.array_equal(implied[below], self.consequent[below])

    def test_prod_implication_is_linear_in_strength(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            a, b = rng.uniform(0.0, 1.0, 2)
            once = imply(self.consequent, a * b, "prod")
            twice = imply(imply(self.consequent, a, "prod"), b, "prod")
            np.testing.assert_allclose(once, twice, rtol=1e-14, atol=0)


class TestAggregate:
    def setup_method(self):
        self.grid = np.linspace(0.0, 1.0, 101)
        self.rising = MembershipFunction.triangular(0.0, 1.0, 1.0).sample(self.grid)
        self.falling = MembershipFunction.triangular(0.0, 0.0, 1.0).sample(self.grid)

    def test_single_set_identity(self):
        for method in ("sum", "max", "probor"):
            result = aggregate([self.rising], method, (0.0, 1.0))
            assert np.array_equal(result.samples, self.rising)

    def test_max_is_pointwise_maximum(self):
        result = aggregate([self.rising, self.falling], "max", (0.0, 1.0))
        expected = np.where(self.rising > self.falling, self.rising, self.falling)
        assert np.array_equal(result.samples, expected)

    def test_sum_matches_bruteforce_loop(self):
        a = 0.42 * self.rising
        b = 0.17 * self.falling
        result = aggregate([a, b], "sum", (0.0, 1.0))
        expected = [a[i] + b[i] for i in range(len(self.grid))]
        assert list(result.samples) == expected

    def test_sum_is_not_renormalized(self):
        result = aggregate([self.rising, self.rising], "sum", (0.0, 1.0))
        assert result.samples.max() == 2.0

    def test_probor_formula(self):
        result = aggregate([self.rising, self.falling], "probor", (0.0, 1.0))
        expected = self.rising + self.falling - self.rising * self.falling
        np.testing.assert_allclose(result.samples, expected, rtol=0, atol=0)
        assert result.samples.max() <= 1.0 + 1e-12

    def test_empty_list_rejected(self):
        with pytest.raises(ConfigError):
            aggregate([], "sum", (0.0, 1.0))

    def test_pairwise_commutativity_is_exact(self):
        a = 0.3 * self.rising
        b = 0.9 * self.falling
        forward = aggregate([a, b], "sum", (0.0, 1.0))
        backward = aggregate([b, a], "sum", (0.0, 1.0))
        assert np.array_equal(forward.samples, backward.samples)

    def test_many_set_permutations_agree(self):
        """Pointwise sums over permuted set lists agree to accumulation
        rounding; exact order independence is guaranteed one level up,
        where evaluate() feeds the sets in a canonical order."""
        import itertools
        sets = [0.3 * self.rising, 0.9 * self.falling,
                0.5 * self.rising, 0.1 * self.falling]
        baseline = aggregate(sets, "sum", (0.0, 1.0)).samples
        for permutation in itertools.permutations(sets):
            permuted = aggregate(list(permutation), "sum", (0.0, 1.0)).samples
            np.testing.assert_allclose(permuted, baseline, rtol=1e-14, atol=1e-16)


# Computed by oracles.reference_rfis_score([0.7, 0.5], [0.6, 0.5], 1.0,
# resolution=100000) ahead of the engine build.
REFERENCE_TWO_TERM_SCORE = 0.5644580110626152


class TestDefuzzify:
    def test_right_triangle_centroid(self):
        resolution = 1001
        grid = np.linspace(0.0, 1.0, resolution)
        samples = MembershipFunction.triangular(0.0, 1.0, 1.0).sample(grid)
        value = defuzzify(AggregateSet((0.0, 1.0), samples), "centroid")
        assert value == pytest.approx(2.0 / 3.0, abs=2.0 / resolution)

    def test_symmetric_aggregate_centers(self):
        grid = np.linspace(0.0, 1.0, 1001)
        samples = MembershipFunction.triangular(0.25, 0.5, 0.75).sample(grid)
        value = defuzzify(AggregateSet((0.0, 1.0), samples), "centroid")
        assert value == pytest.approx(0.5, abs=1e-9)

    def test_two_term_system_matches_reference_pipeline(self):
        config = default_rfis_config(t=2, resolution=100_000)
        value = evaluate(config, rfis_inputs([0.7, 0.5], [0.6, 0.5], 1.0))
        assert value == pytest.approx(REFERENCE_TWO_TERM_SCORE, abs=1e-9)

    def test_bisector_splits_area(self):
        grid = np.linspace(0.0, 1.0, 1001)
        samples = np.ones_like(grid)
        value = defuzzify(AggregateSet((0.0, 1.0), samples), "bisector")
        assert value == pytest.approx(0.5, abs=1e-3)

    def test_maximum_family(self):
        # integer grid points, so the plateau boundaries are hit exactly
        grid = np.linspace(0.0, 10.0, 11)
        samples = MembershipFunction.trapezoidal(0.0, 2.0, 6.0, 10.0).sample(grid)
        plateau = AggregateSet((0.0, 10.0), samples)
        assert defuzzify(plateau, "som") == 2.0
        assert defuzzify(plateau, "lom") == 6.0
        assert defuzzify(plateau, "mom") == 4.0

    def test_all_zero_falls_back_to_midpoint_with_warning(self):
        zero = AggregateSet((0.2, 0.8), np.zeros(101))
        with pytest.warns(RuntimeWarning):
            assert defuzzify(zero, "centroid") == pytest.approx(0.5)

    def test_centroid_stays_in_universe(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            samples = rng.uniform(0.0, 2.0, size=101)
            value = defuzzify(AggregateSet((-1.0, 3.0), samples), "centroid")
            assert -1.0 <= value <= 3.0


class TestEvaluate:
    def test_single_rule_reduces_to_consequent_centroid(self):
        config = FisConfig(
            inputs=(default_variable("x"),),
            output=default_variable("y"),
            rules=(parse_rule("if (x is high) -> (y is high)"),),
        )
        value = evaluate(config, {"x": 1.0})
        samples = config.output.sets["high"].sample(config.output_grid)
        direct = defuzzify(AggregateSet((0.0, 1.0), samples), "centroid")
        assert value == direct

    def test_repeated_evaluation_is_bit_identical(self):
        config = default_rfis_config(t=2)
        inputs = rfis_inputs([0.31, 0.77], [0.52, 0.18], 0.5)
        assert evaluate(config, inputs) == evaluate(config, inputs)

    def test_rule_permutation_leaves_output_unchanged(self):
        """Shuffled rules must give the same bits, for every method combo."""
        rng = np.random.default_rng(23)
        shuffler = random.Random(23)
        for _ in range(150):
            config = random_config(rng)
            inputs = random_inputs(rng, config)
            shuffled_rules = list(config.rules)
            shuffler.shuffle(shuffled_rules)
            shuffled = FisConfig(
                config.inputs, config.output, tuple(shuffled_rules),
                config.and_method, config.implication, config.aggregation,
                config.defuzzification, config.resolution,
            )
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                assert evaluate(config, inputs) == evaluate(shuffled, inputs)

    def test_matches_reference_pipeline_on_random_inputs(self):
        rng = np.random.default_rng(17)
        for t in (1, 2, 3):
            config = default_rfis_config(t, resolution=10_001)
            for _ in range(10):
                tf = rng.uniform(0.0, 1.0, t).tolist()
                idf = rng.uniform(0.0, 1.0, t).tolist()
                overlap = float(rng.uniform(0.0, 1.0))
                got = evaluate(config, rfis_inputs(tf, idf, overlap))
                want = reference_rfis_score(tf, idf, overlap, 10_001)
                assert got == pytest.approx(want, abs=1e-9)

    def test_output_stays_in_universe(self):
        rng = np.random.default_rng(29)
        for _ in range(100):
            config = random_config(rng)
            inputs = random_inputs(rng, config)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                value = evaluate(config, inputs)
            lo, hi = config.output.universe
            assert lo <= value <= hi

    def test_centroid_converges_with_resolution(self):
        inputs = rfis_inputs([0.7, 0.3], [0.6, 0.9], 0.5)
        for resolution in (101, 501, 1001, 4001):
            coarse = evaluate(default_rfis_config(2, resolution), inputs)
            fine = evaluate(default_rfis_config(2, 2 * resolution), inputs)
            assert abs(coarse - fine) < 1.0 / resolution

    def test_strengths_listed_in_rule_order(self):
        config = two_input_config()
        strengths = rule_strengths(config, {"tf": 0.7, "idf": 0.6})
        assert strengths[0] == 0.42
        assert strengths[1] == pytest.approx(0.3 * 0.4)
