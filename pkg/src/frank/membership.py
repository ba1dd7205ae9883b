"""Parameterized membership functions mapping crisp points to degrees in [0, 1].

Four curve families are supported.  The piecewise-linear kinds (triangular,
trapezoidal) are evaluated exactly, with no smoothing at the breakpoints:

    triangular(a, b, c)         feet a and c, peak b;   a <= b <= c
    trapezoidal(a, b, c, d)     feet a and d, shoulders b and c;
                                a <= b <= c <= d
    gaussian(sigma, mean)       exp(-(x - mean)^2 / (2 sigma^2)); sigma > 0
    sigmoid(slope, inflection)  1 / (1 + exp(-slope * (x - inflection)))

Degenerate linear edges (a == b, or c == d) collapse to a step: the peak or
shoulder value still evaluates to 1, points strictly on the collapsed side
evaluate to 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

KINDS = ("triangular", "trapezoidal", "gaussian", "sigmoid")

_PARAM_COUNT = {"triangular": 3, "trapezoidal": 4, "gaussian": 2, "sigmoid": 2}

# exp() overflows beyond this; the sigmoid is saturated long before.
_EXP_CLAMP = 700.0


@dataclass(frozen=True)
class MembershipFunction:
    kind: str
    params: tuple[float, ...]

    def __post_init__(self):
        if self.kind not in _PARAM_COUNT:
            raise ConfigError(f"unknown membership function kind {self.kind!r}")
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "params", params)
        if len(params) != _PARAM_COUNT[self.kind]:
            raise ConfigError(
                f"{self.kind} takes {_PARAM_COUNT[self.kind]} parameters, "
                f"got {len(params)}"
            )
        if any(not math.isfinite(p) for p in params):
            raise ConfigError(f"{self.kind} parameters must be finite: {params}")
        if self.kind == "triangular":
            a, b, c = params
            if not a <= b <= c:
                raise ConfigError(f"triangular requires a <= b <= c, got {params}")
        elif self.kind == "trapezoidal":
            a, b, c, d = params
            if not a <= b <= c <= d:
                raise ConfigError(
                    f"trapezoidal requires a <= b <= c <= d, got {params}"
                )
        elif self.kind == "gaussian":
            sigma, _ = params
            if sigma <= 0:
                raise ConfigError(f"gaussian requires sigma > 0, got {sigma}")

    @classmethod
    def triangular(cls, a: float, b: float, c: float) -> MembershipFunction:
        return cls("triangular", (a, b, c))

    @classmethod
    def trapezoidal(cls, a: float, b: float, c: float, d: float) -> MembershipFunction:
        return cls("trapezoidal", (a, b, c, d))

    @classmethod
    def gaussian(cls, sigma: float, mean: float) -> MembershipFunction:
        return cls("gaussian", (sigma, mean))

    @classmethod
    def sigmoid(cls, slope: float, inflection: float) -> MembershipFunction:
        return cls("sigmoid", (slope, inflection))

    def evaluate(self, x: float) -> float:
        """Degree of membership of a single point; always in [0, 1]."""
        p = self.params
        if self.kind == "triangular":
            return _triangular_scalar(x, *p)
        if self.kind == "trapezoidal":
            return _trapezoidal_scalar(x, *p)
        if self.kind == "gaussian":
            sigma, mean = p
            return math.exp(-((x - mean) ** 2) / (2.0 * sigma * sigma))
        slope, inflection = p
        z = slope * (x - inflection)
        z = max(-_EXP_CLAMP, min(_EXP_CLAMP, z))
        return 1.0 / (1.0 + math.exp(-z))

    def sample(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`evaluate` over a grid of points."""
        xs = np.asarray(xs, dtype=np.float64)
        p = self.params
        if self.kind == "triangular":
            a, b, c = p
            y = np.zeros_like(xs)
            if a < b:
                rising = (xs > a) & (xs < b)
                y[rising] = (xs[rising] - a) / (b - a)
            if b < c:
                falling = (xs > b) & (xs < c)
                y[falling] = (c - xs[falling]) / (c - b)
            y[xs == b] = 1.0
            return y
        if self.kind == "trapezoidal":
            a, b, c, d = p
            y = np.zeros_like(xs)
            if a < b:
                rising = (xs > a) & (xs < b)
                y[rising] = (xs[rising] - a) / (b - a)
            if c < d:
                falling = (xs > c) & (xs < d)
                y[falling] = (d - xs[falling]) / (d - c)
            y[(xs >= b) & (xs <= c)] = 1.0
            return y
        if self.kind == "gaussian":
            sigma, mean = p
            return np.exp(-((xs - mean) ** 2) / (2.0 * sigma * sigma))
        slope, inflection = p
        z = np.clip(slope * (xs - inflection), -_EXP_CLAMP, _EXP_CLAMP)
        return 1.0 / (1.0 + np.exp(-z))


def _triangular_scalar(x: float, a: float, b: float, c: float) -> float:
    if x == b:
        return 1.0
    if x < b:
        if x <= a or a == b:
            return 0.0
        return (x - a) / (b - a)
    if x >= c or b == c:
        return 0.0
    return (c - x) / (c - b)


def _trapezoidal_scalar(x: float, a: float, b: float, c: float, d: float) -> float:
    if b <= x <= c:
        return 1.0
    if x < b:
        if x <= a or a == b:
            return 0.0
        return (x - a) / (b - a)
    if x >= d or c == d:
        return 0.0
    return (d - x) / (d - c)


def eval_mf(mf: MembershipFunction, x: float) -> float:
    """Degree of membership of point ``x`` under ``mf``."""
    return mf.evaluate(x)
