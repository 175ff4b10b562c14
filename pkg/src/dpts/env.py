"""Reward environments for stochastic bandits with rewards in [0, 1].

Two reward families are supported: Bernoulli(p), and the exponential
distribution with a given rate conditioned on [0, 1] ("truncated
exponential"). Both expose an exact analytic mean, so regret can be
computed without Monte-Carlo estimation of the arm means.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np


@dataclass(frozen=True)
class Bernoulli:
    """Bernoulli reward: 1 with probability p, else 0."""

    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"Bernoulli p must be in [0, 1], got {self.p}")

    @property
    def mean(self) -> float:
        return self.p

    def sample(self, rng: np.random.Generator, size=None):
        # One uniform consumed per sample (threshold transform).
        if size is None:
            return 1.0 if rng.random() < self.p else 0.0
        return (rng.random(size) < self.p).astype(float)


@dataclass(frozen=True)
class TruncExp:
    """Exponential(rate) conditioned on [0, 1].

    Density rate * exp(-rate * x) / (1 - exp(-rate)) on [0, 1]. Sampling
    uses the inverse CDF so exactly one uniform is consumed per sample and
    seeded runs are reproducible draw-for-draw.
    """

    rate: float

    def __post_init__(self):
        if not self.rate > 0.0:
            raise ValueError(f"TruncExp rate must be positive, got {self.rate}")

    @property
    def mean(self) -> float:
        lam = self.rate
        return 1.0 / lam - math.exp(-lam) / (1.0 - math.exp(-lam))

    def sample(self, rng: np.random.Generator, size=None):
        u = rng.random() if size is None else rng.random(size)
        # x = -log(1 - u * (1 - e^{-rate})) / rate, in [0, 1) for u in [0, 1)
        return -np.log1p(-u * (-math.expm1(-self.rate))) / self.rate


RewardModel = Union[Bernoulli, TruncExp]


def sample_reward(model: RewardModel, rng: np.random.Generator) -> float:
    """Draw one reward in [0, 1] from the model."""
    return float(model.sample(rng))


def analytic_mean(model: RewardModel) -> float:
    """Exact mean of the model's reward distribution."""
    return model.mean


class BanditInstance:
    """An ordered set of arms; order is preserved exactly as given."""

    def __init__(self, arms):
        arms = tuple(arms)
        if len(arms) < 2:
            raise ValueError("a bandit instance needs at least 2 arms")
        self.arms = arms
        self.means = np.array([a.mean for a in arms])
        self.best_mean = float(self.means.max())

    @property
    def n_arms(self) -> int:
        return len(self.arms)

    @property
    def gaps(self) -> np.ndarray:
        """Suboptimality gap of each arm: best mean minus the arm's mean."""
        return self.best_mean - self.means

    def __repr__(self):
        return f"BanditInstance({list(self.arms)!r})"


def gaps(instance: BanditInstance) -> np.ndarray:
    return instance.gaps


def model_from_dict(d: dict) -> RewardModel:
    """Parse one arm definition from its config-file form.

    Accepted forms: {"kind": "bernoulli", "p": <real>} and
    {"kind": "trunc_exp", "lambda": <real>}.
    """
    try:
        kind = d["kind"]
    except (TypeError, KeyError):
        raise ValueError(f"arm definition missing 'kind': {d!r}") from None
    if kind == "bernoulli":
        if "p" not in d:
            raise ValueError(f"bernoulli arm missing 'p': {d!r}")
        return Bernoulli(float(d["p"]))
    if kind == "trunc_exp":
        if "lambda" not in d:
            raise ValueError(f"trunc_exp arm missing 'lambda': {d!r}")
        return TruncExp(float(d["lambda"]))
    raise ValueError(f"unknown arm kind {kind!r} (expected 'bernoulli' or 'trunc_exp')")


def model_to_dict(model: RewardModel) -> dict:
    if isinstance(model, Bernoulli):
        return {"kind": "bernoulli", "p": model.p}
    return {"kind": "trunc_exp", "lambda": model.rate}
