"""Mamdani fuzzy inference over sampled output universes.

The pipeline is the classic five-step chain:

    fuzzify -> fire_rule (per rule) -> imply -> aggregate -> defuzzify

A :class:`FisConfig` is immutable once constructed and ``evaluate`` is a pure
function of ``(config, inputs)``, so a single config may be shared freely
across threads.  The output universe is discretized on a uniform, inclusive
grid of ``resolution`` points; consequent samples are cached per config.

Sum aggregation is deliberately NOT clipped at 1: the aggregate carries the
total rule mass, which is what makes rule weights combine linearly.  Rule
weights scale the firing strength before implication.

Rule order never affects the result, bit for bit: implied sets are combined
in a canonical order (consequent label, negation, strength) rather than rule
order, which pins down the floating-point accumulation order.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .errors import ConfigError
from .membership import MembershipFunction
from .rules import RuleAst

AND_METHODS = ("prod", "min")
IMPLICATIONS = ("prod", "min")
AGGREGATIONS = ("sum", "max", "probor")
DEFUZZIFICATIONS = ("centroid", "bisector", "mom", "lom", "som")

DEFAULT_RESOLUTION = 1001


@dataclass(frozen=True)
class LinguisticVariable:
    """A named quantity whose values are labeled fuzzy sets."""

    name: str
    universe: tuple[float, float]
    sets: dict[str, MembershipFunction]

    def __post_init__(self):
        lo, hi = self.universe
        object.__setattr__(self, "universe", (float(lo), float(hi)))
        if not self.name:
            raise ConfigError("variable name must be nonempty")
        if not self.universe[0] < self.universe[1]:
            raise ConfigError(
                f"variable {self.name!r}: universe requires lo < hi, "
                f"got {self.universe}"
            )
        if not self.sets:
            raise ConfigError(f"variable {self.name!r} has no fuzzy sets")

    def renamed(self, name: str) -> LinguisticVariable:
        return LinguisticVariable(name, self.universe, dict(self.sets))


def default_variable(name: str) -> LinguisticVariable:
    """A [0, 1] variable with the complementary ``high``/``not_high`` ramps.

    ``high`` rises linearly from 0 to 1 across the universe, ``not_high`` is
    its pointwise complement, so fuzzifying x yields degrees (x, 1 - x).
    """
    return LinguisticVariable(
        name,
        (0.0, 1.0),
        {
            "high": MembershipFunction.triangular(0.0, 1.0, 1.0),
            "not_high": MembershipFunction.triangular(0.0, 0.0, 1.0),
        },
    )


@dataclass(frozen=True)
class AggregateSet:
    """Pointwise-aggregated membership over the output grid.

    Samples may exceed 1 under sum aggregation; they are never negative.
    """

    universe: tuple[float, float]
    samples: np.ndarray

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.float64)
        if samples.ndim != 1 or len(samples) < 2:
            raise ConfigError("aggregate needs a 1-D grid of at least 2 samples")
        if (samples < 0).any():
            raise ConfigError("aggregate samples must be nonnegative")
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)

    @property
    def grid(self) -> np.ndarray:
        lo, hi = self.universe
        return np.linspace(lo, hi, len(self.samples))


@dataclass(frozen=True)
class FisConfig:
    inputs: tuple[LinguisticVariable, ...]
    output: LinguisticVariable
    rules: tuple[RuleAst, ...]
    and_method: str = "prod"
    implication: str = "prod"
    aggregation: str = "sum"
    defuzzification: str = "centroid"
    resolution: int = DEFAULT_RESOLUTION

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "rules", tuple(self.rules))
        if self.and_method not in AND_METHODS:
            raise ConfigError(f"unknown and method {self.and_method!r}")
        if self.implication not in IMPLICATIONS:
            raise ConfigError(f"unknown implication method {self.implication!r}")
        if self.aggregation not in AGGREGATIONS:
            raise ConfigError(f"unknown aggregation method {self.aggregation!r}")
        if self.defuzzification not in DEFUZZIFICATIONS:
            raise ConfigError(
                f"unknown defuzzification method {self.defuzzification!r}"
            )
        if self.resolution < 2:
            raise ConfigError(f"resolution must be >= 2, got {self.resolution}")
        names = [v.name for v in self.inputs]
        if len(set(names)) != len(names):
            raise ConfigError(f"duplicate input variable names in {names}")
        if self.output.name in names:
            raise ConfigError(
                f"output variable {self.output.name!r} clashes with an input"
            )
        if not self.rules:
            raise ConfigError("a fuzzy system needs at least one rule")
        by_name = {v.name: v for v in self.inputs}
        for rule in self.rules:
            for clause in rule.antecedent:
                variable = by_name.get(clause.variable)
                if variable is None:
                    raise ConfigError(
                        f"rule references unknown input variable "
                        f"{clause.variable!r}"
                    )
                if clause.label not in variable.sets:
                    raise ConfigError(
                        f"variable {clause.variable!r} has no set "
                        f"{clause.label!r}"
                    )
            consequent = rule.consequent
            if consequent.variable != self.output.name:
                raise ConfigError(
                    f"rule consequent references {consequent.variable!r}, "
                    f"expected output {self.output.name!r}"
                )
            if consequent.label not in self.output.sets:
                raise ConfigError(
                    f"output variable has no set {consequent.label!r}"
                )
            if not 0.0 < rule.weight <= 1.0:
                raise ConfigError(f"rule weight {rule.weight} outside (0, 1]")

    @cached_property
    def input_by_name(self) -> dict[str, LinguisticVariable]:
        return {v.name: v for v in self.inputs}

    @cached_property
    def output_grid(self) -> np.ndarray:
        lo, hi = self.output.universe
        grid = np.linspace(lo, hi, self.resolution)
        grid.flags.writeable = False
        return grid

    @cached_property
    def consequent_samples(self) -> dict[tuple[str, bool], np.ndarray]:
        """Output-set samples keyed by (label, negated); negation is 1 - mu."""
        samples = {}
        for label, mf in self.output.sets.items():
            base = mf.sample(self.output_grid)
            complement = 1.0 - base
            base.flags.writeable = False
            complement.flags.writeable = False
            samples[(label, False)] = base
            samples[(label, True)] = complement
        return samples


def fuzzify(config: FisConfig, inputs: Mapping[str, float]) -> dict[tuple[str, str], float]:
    """Degrees of membership of each crisp input in each of its fuzzy sets.

    Inputs outside a variable's universe are clamped to it.  The map must
    name every input variable exactly once.
    """
    names = {v.name for v in config.inputs}
    missing = sorted(names - inputs.keys())
    if missing:
        raise ConfigError(f"missing input variable(s): {', '.join(missing)}")
    extra = sorted(inputs.keys() - names)
    if extra:
        raise ConfigError(f"unknown input variable(s): {', '.join(extra)}")
    degrees: dict[tuple[str, str], float] = {}
    for variable in config.inputs:
        lo, hi = variable.universe
        x = min(max(float(inputs[variable.name]), lo), hi)
        for label, mf in variable.sets.items():
            degrees[(variable.name, label)] = mf.evaluate(x)
    return degrees


def fire_rule(rule: RuleAst, memberships: Mapping[tuple[str, str], float],
              and_method: str = "prod") -> float:
    """Firing strength: the and-fold of conjunct degrees times the weight.

    A negated conjunct contributes the complement degree 1 - d.  Single
    conjuncts skip the fold.
    """
    strength: float | None = None
    for clause in rule.antecedent:
        degree = memberships[(clause.variable, clause.label)]
        if clause.negated:
            degree = 1.0 - degree
        if strength is None:
            strength = degree
        elif and_method == "prod":
            strength = strength * degree
        else:
            strength = min(strength, degree)
    assert strength is not None
    return strength * rule.weight


def imply(consequent_samples: np.ndarray, strength: float,
          implication: str = "prod") -> np.ndarray:
    """Reshape a sampled consequent: prod scales it, min truncates it."""
    if implication == "prod":
        return consequent_samples * strength
    return np.minimum(consequent_samples, strength)


def aggregate(implied_sets: Sequence[np.ndarray], aggregation: str = "sum",
              universe: tuple[float, float] = (0.0, 1.0)) -> AggregateSet:
    """Combine implied sets pointwise into one output set.

    All sets must be sampled on the identical grid.  Sum output is not
    renormalized and may exceed 1.
    """
    if not implied_sets:
        raise ConfigError("nothing to aggregate: no implied sets")
    if aggregation == "sum":
        combined = np.sum(np.asarray(implied_sets), axis=0)
    elif aggregation == "max":
        combined = implied_sets[0]
        for samples in implied_sets[1:]:
            combined = np.maximum(combined, samples)
    else:  # probor: a + b - ab, folded pairwise
        combined = implied_sets[0]
        for samples in implied_sets[1:]:
            combined = combined + samples - combined * samples
    return AggregateSet(universe, combined)


def defuzzify(aggregate_set: AggregateSet, method: str = "centroid") -> float:
    """Collapse an aggregate set to one crisp value inside its universe.

    centroid  sum(x * mu) / sum(mu) over the sample grid
    bisector  the grid point splitting the area in half
    mom/lom/som  mean / largest / smallest point of the argmax plateau

    An all-zero aggregate has no area to locate; it falls back to the
    universe midpoint and emits a RuntimeWarning so tests can detect it.
    """
    samples = aggregate_set.samples
    lo, hi = aggregate_set.universe
    if not (samples > 0).any():
        warnings.warn(
            "all-zero aggregate set; defuzzifying to the universe midpoint",
            RuntimeWarning,
            stacklevel=2,
        )
        return (lo + hi) / 2.0
    grid = aggregate_set.grid
    if method == "centroid":
        return float(np.sum(grid * samples) / np.sum(samples))
    if method == "bisector":
        cumulative = np.cumsum(samples)
        index = int(np.searchsorted(cumulative, cumulative[-1] / 2.0))
        return float(grid[min(index, len(grid) - 1)])
    peak = samples.max()
    plateau = grid[samples == peak]
    if method == "mom":
        return float(plateau.mean())
    if method == "lom":
        return float(plateau.max())
    if method == "som":
        return float(plateau.min())
    raise ConfigError(f"unknown defuzzification method {method!r}")


def rule_strengths(config: FisConfig, inputs: Mapping[str, float]) -> list[float]:
    """Firing strength of every rule, in rule order."""
    memberships = fuzzify(config, inputs)
    return [fire_rule(rule, memberships, config.and_method) for rule in config.rules]


def evaluate(config: FisConfig, inputs: Mapping[str, float]) -> float:
    """Run the full pipeline and return the crisp output value.

    Deterministic: identical inputs yield bit-identical outputs, and any
    permutation of ``config.rules`` yields the same bits (see module notes).
    """
    memberships = fuzzify(config, inputs)
    jobs = sorted(
        (rule.consequent.label, rule.consequent.negated,
         fire_rule(rule, memberships, config.and_method))
        for rule in config.rules
    )
    implied = [
        imply(config.consequent_samples[(label, negated)], strength,
              config.implication)
        for label, negated, strength in jobs
    ]
    aggregated = aggregate(implied, config.aggregation, config.output.universe)
    return defuzzify(aggregated, config.defuzzification)
