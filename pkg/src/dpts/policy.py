"""Thompson Sampling with Gaussian priors, plus a private-argmax primitive.

The sampler keeps, per arm, the prior-offset empirical reward mean
(sum of observed rewards divided by pulls + 1; the +1 is a pseudo
observation at 0 from the N(0, 1) prior) and the pull count. At each
sampling step it draws theta_i ~ Normal(mu_hat_i, var_scale / (n_i + 1))
for every arm and plays the argmax. With prepulls > 0 the sampler first
plays every arm `prepulls` times in index order; those observations seed
the same per-arm statistics.

Randomness discipline (fixed so seeded traces are reproducible): each
sampling step consumes exactly one Generator.standard_normal(n_arms)
call, transformed affinely to the per-arm posterior; prepull steps
consume no normals. Argmax ties break to the lowest index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate, stats

#: Quadrature window half-width for the selection-probability oracle,
#: in per-arm standard deviations.
QUAD_WINDOW_SIGMAS = 10.0


@dataclass(frozen=True)
class TSConfig:
    """Sampler parameters: total horizon, per-arm prepull count, variance scale."""

    horizon: int
    prepulls: int = 0
    var_scale: float = 1.0

    def __post_init__(self):
        if self.horizon < 1:
            raise ValueError(f"horizon must be >= 1, got {self.horizon}")
        if self.prepulls < 0:
            raise ValueError(f"prepulls must be >= 0, got {self.prepulls}")
        if not self.var_scale >= 1.0:
            raise ValueError(f"var_scale must be >= 1, got {self.var_scale}")


class ThompsonSampler:
    """Stateful Gaussian-prior Thompson Sampling policy (single-owner, mutable)."""

    def __init__(self, n_arms: int, config: TSConfig):
        if n_arms < 2:
            raise ValueError(f"need at least 2 arms, got {n_arms}")
        if config.prepulls * n_arms >= config.horizon:
            raise ValueError(
                f"prepulls * n_arms = {config.prepulls * n_arms} must be "
                f"< horizon = {config.horizon}"
            )
        self.n_arms = n_arms
        self.config = config
        self.mu_hat = np.zeros(n_arms)
        self.pulls = np.zeros(n_arms, dtype=np.int64)
        self.t = 0
        self._pending_arm = None

    @property
    def prepull_steps(self) -> int:
        return self.config.prepulls * self.n_arms

    @property
    def phase(self) -> str:
        return "prepull" if self.t < self.prepull_steps else "sampling"

    def select_arm(self, rng: np.random.Generator):
        """Pick the next arm; returns (arm index, theta draw or None).

        In the prepull phase the arm is the scheduled one and no draw is
        made. In the sampling phase the full theta vector is returned so
        callers (tests in particular) can audit the posterior draw.
        """
        if self.t >= self.config.horizon:
            raise RuntimeError("horizon exhausted")
        if self.t < self.prepull_steps:
            arm = self.t // self.config.prepulls
            draw = None
        else:
            sigma = np.sqrt(self.config.var_scale / (self.pulls + 1.0))
            draw = self.mu_hat + sigma * rng.standard_normal(self.n_arms)
            arm = int(np.argmax(draw))
        self._pending_arm = arm
        return arm, draw

    def observe(self, arm: int, reward: float) -> None:
        """Record the reward for the arm returned by the last select_arm.

        Rewards outside [0, 1] are rejected outright: the privacy
        accounting assumes per-observation sensitivity 1 / (pulls + 1),
        which only holds on that range, so clamping would silently void
        the guarantee.
        """
        if self._pending_arm is None or arm != self._pending_arm:
            raise RuntimeError(f"observe({arm}) does not match the pending selection")
        if not 0.0 <= reward <= 1.0:
            raise ValueError(f"reward must be in [0, 1], got {reward}")
        n = self.pulls[arm]
        self.mu_hat[arm] = (self.mu_hat[arm] * (n + 1) + reward) / (n + 2)
        self.pulls[arm] = n + 1
        self.t += 1
        self._pending_arm = None


def rnm_heterogeneous(values, sigmas, rng: np.random.Generator) -> int:
    """Report-noisy-max with per-entry Gaussian noise.

    Adds independent Normal(0, sigma_i^2) noise to each value and returns
    only the argmax index (lowest index on ties).
    """
    values = np.asarray(values, dtype=float)
    sigmas = np.asarray(sigmas, dtype=float)
    if values.ndim != 1 or values.size == 0:
        raise ValueError("values must be a nonempty 1-D sequence")
    if sigmas.shape != values.shape:
        raise ValueError("values and sigmas must have equal length")
    if np.any(sigmas <= 0.0):
        raise ValueError("all sigmas must be positive")
    return int(np.argmax(values + sigmas * rng.standard_normal(values.size)))


def argmax_probabilities(means, sigmas) -> np.ndarray:
    """Exact P(argmax = i) for independent Normal(means[i], sigmas[i]^2) draws.

    P(i) = integral of pdf_i(x) * prod_{j != i} cdf_j(x) dx, evaluated by
    adaptive quadrature over the union of the per-arm +-10 sigma windows.
    Serves as the analytic oracle for both the sampling step and
    rnm_heterogeneous.
    """
    means = np.asarray(means, dtype=float)
    sigmas = np.asarray(sigmas, dtype=float)
    if means.ndim != 1 or means.size == 0 or sigmas.shape != means.shape:
        raise ValueError("means and sigmas must be equal-length 1-D sequences")
    if np.any(sigmas <= 0.0):
        raise ValueError("all sigmas must be positive")
    if means.size == 1:
        return np.ones(1)
    lo = float(np.min(means - QUAD_WINDOW_SIGMAS * sigmas))
    hi = float(np.max(means + QUAD_WINDOW_SIGMAS * sigmas))
    n = means.size
    probs = np.empty(n)
    for i in range(n):
        others = [j for j in range(n) if j != i]

        def integrand(x, i=i, others=others):
            val = stats.norm.pdf(x, loc=means[i], scale=sigmas[i])
            for j in others:
                val *= stats.norm.cdf(x, loc=means[j], scale=sigmas[j])
            return val

        probs[i], _ = integrate.quad(integrand, lo, hi, epsabs=1e-12, epsrel=1e-12, limit=200)
    return probs


def selection_probability_oracle(mu_hats, pulls, var_scale: float = 1.0) -> np.ndarray:
    """Analytic per-arm selection probabilities for one sampling step."""
    if not var_scale >= 1.0:
        raise ValueError(f"var_scale must be >= 1, got {var_scale}")
    mu_hats = np.asarray(mu_hats, dtype=float)
    pulls = np.asarray(pulls, dtype=float)
    if mu_hats.size < 2:
        raise ValueError("need at least 2 arms")
    sigmas = np.sqrt(var_scale / (pulls + 1.0))
    return argmax_probabilities(mu_hats, sigmas)
