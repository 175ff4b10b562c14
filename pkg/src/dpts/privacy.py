"""Privacy accountant for Gaussian-prior Thompson Sampling.

Pure functions covering three accounting routes for a run of T steps:

  * Gaussian DP (GDP): per-step parameter 1/sqrt(c(b+1)) for the variant
    with b prepulls per arm and variance scale c (1/sqrt(2) for the
    unmodified sampler once every arm has one observation), composed by
    root-sum-of-squares, and converted to (epsilon, delta) via the
    Gaussian trade-off curve.
  * Renyi DP (RDP): per-step (alpha, alpha/4), composed additively, with
    the standard conversion to (epsilon, delta).
  * Standard DP with advanced composition, starting from the per-step
    report-noisy-max guarantee.

All conversions are evaluated in log-space where the naive expressions
lose precision (large composed GDP parameters make both terms of the
trade-off formula saturate in double precision).
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from scipy import special, stats

#: Absolute tolerance (in epsilon) of the GDP epsilon-from-delta bisection.
EPSILON_BISECTION_TOL = 1e-9

#: Fraction of the total delta budget assigned to the composition slack in
#: the advanced-composition route; the remaining half is split evenly over
#: the per-step deltas.
ADV_DP_DELTA_SPLIT = 0.5

_GDP_PER_STEP_ORIGINAL = math.sqrt(0.5)


class RdpPoint(NamedTuple):
    """A Renyi-DP guarantee: divergence bound `gamma` at order `alpha`."""

    alpha: float
    gamma: float


class PrepullBudgetExceeded(ValueError):
    """Prepulls alone already deliver a stronger guarantee than requested.

    Raised by solve_variance_scale when the implied variance scale falls
    below 1; callers may fall back to var_scale = 1, which over-delivers
    the budget.
    """


class InfeasibleHorizon(ValueError):
    """prepulls * n_arms >= horizon: no sampling steps would remain."""


def normal_cdf(x):
    """Standard normal CDF, accurate to ~1e-15 absolute via erfc."""
    return 0.5 * special.erfc(-np.asarray(x, dtype=float) / math.sqrt(2.0))


def gdp_per_step(prepulls: int, var_scale: float) -> float:
    """Worst-case per-step GDP parameter 1/sqrt(var_scale * (prepulls + 1))."""
    _check_bc(prepulls, var_scale)
    return 1.0 / math.sqrt(var_scale * (prepulls + 1))


def gdp_per_step_original() -> float:
    """Per-step GDP parameter of the unmodified sampler, sqrt(1/2).

    Valid once every arm has at least one observation; the first pull of
    an arm carries no data to protect.
    """
    return _GDP_PER_STEP_ORIGINAL


def gdp_compose(etas) -> float:
    """Adaptive composition of GDP parameters: sqrt(sum of squares)."""
    etas = np.asarray(etas, dtype=float)
    if etas.size == 0:
        raise ValueError("cannot compose an empty list of GDP parameters")
    if np.any(etas <= 0.0):
        raise ValueError("GDP parameters must be positive")
    return float(np.sqrt(np.sum(etas**2)))

def gdp_total(steps: int, prepulls: int, var_scale: float) -> float:
    """GDP parameter of a full run: sqrt(steps / (var_scale * (prepulls + 1)))."""
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    _check_bc(prepulls, var_scale)
    return math.sqrt(steps / (var_scale * (prepulls + 1)))


def gdp_total_original(steps: int) -> float:
    """GDP parameter of an unmodified run: sqrt(steps / 2)."""
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    return math.sqrt(steps / 2.0)


def _log_sub(x: float, y: float) -> float:
    """log(exp(x) - exp(y)) for x >= y, -inf when the difference underflows."""
    if y >= x:
        return -math.inf
    return x + math.log1p(-math.exp(y - x))


def gdp_to_delta(eta: float, epsilon: float) -> float:
    """delta(epsilon) on the trade-off curve of an eta-GDP guarantee.

    delta = Phi(-eps/eta + eta/2) - e^eps * Phi(-eps/eta - eta/2),
    computed as exp(logPhi(a)) - exp(eps + logPhi(b)) in log-space so the
    e^eps factor never overflows and near-cancellation keeps its digits.
    The result is clamped to [0, 1] only against floating-point underflow.
    """
    if eta <= 0.0:
        raise ValueError(f"eta must be positive, got {eta}")
    if epsilon < 0.0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    a = -epsilon / eta + eta / 2.0
    b = -epsilon / eta - eta / 2.0
    log_delta = _log_sub(
        float(stats.norm.logcdf(a)), epsilon + float(stats.norm.logcdf(b))
    )
    if log_delta == -math.inf:
        return 0.0
    return min(1.0, math.exp(log_delta))


def gdp_to_epsilon(eta: float, delta: float) -> float:
    """Smallest epsilon such that eta-GDP implies (epsilon, delta)-DP.

    Inverts gdp_to_delta by doubling an upper bracket until
    delta(eps_hi) < delta and bisecting to EPSILON_BISECTION_TOL. Returns
    0 when delta already exceeds delta(0).
    """
    if eta <= 0.0:
        raise ValueError(f"eta must be positive, got {eta}")
    if delta <= 0.0:
        raise ValueError(f"delta must be positive, got {delta}")
    if delta >= gdp_to_delta(eta, 0.0):
        return 0.0
    hi = 1.0
    while gdp_to_delta(eta, hi) >= delta:
        hi *= 2.0
    lo = 0.0
    while hi - lo > EPSILON_BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        if gdp_to_delta(eta, mid) > delta:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def rdp_total(steps: int, alpha: float) -> RdpPoint:
    """RDP guarantee of a full unmodified run: (alpha, alpha * steps / 4)."""
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if not alpha > 1.0:
        raise ValueError(f"alpha must be > 1, got {alpha}")
    return RdpPoint(alpha=alpha, gamma=alpha * steps / 4.0)


def rdp_to_dp(point: RdpPoint, delta: float) -> float:
    """Convert an RDP guarantee to epsilon at the given delta.

    epsilon = gamma + log(1/delta) / (alpha - 1).
    """
    if not 0.0 < delta <= 1.0:
        raise ValueError(f"delta must be in (0, 1], got {delta}")
    if not point.alpha > 1.0:
        raise ValueError(f"alpha must be > 1, got {point.alpha}")
    return point.gamma + math.log(1.0 / delta) / (point.alpha - 1.0)


def rdp_best_epsilon(steps: int, delta: float) -> tuple[float, float]:
    """Minimize the RDP-derived epsilon over the order alpha.

    epsilon(alpha) = alpha * steps / 4 + log(1/delta) / (alpha - 1) has
    the unique stationary point alpha* = 1 + 2 sqrt(log(1/delta) / steps),
    giving epsilon* = steps / 4 + sqrt(steps * log(1/delta)). Returns
    (epsilon*, alpha*).
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0, 1), got {delta}")
    log_term = math.log(1.0 / delta)
    alpha_star = 1.0 + 2.0 * math.sqrt(log_term / steps)
    eps_star = steps / 4.0 + math.sqrt(steps * log_term)
    return eps_star, alpha_star


def adv_dp_per_step(n_arms: int, delta: float) -> float:
    """Per-step epsilon of the private argmax with unit-scale posteriors.

    epsilon = (1 / (2 sqrt(2))) * sqrt(log((n_arms - 1) / (2 delta))).
    """
    if n_arms < 2:
        raise ValueError(f"n_arms must be >= 2, got {n_arms}")
    if delta <= 0.0:
        raise ValueError(f"delta must be positive, got {delta}")
    arg = (n_arms - 1) / (2.0 * delta)
    if arg < 1.0:
        raise ValueError(
            f"delta = {delta} too large: requires delta <= (n_arms - 1) / 2"
        )
    return math.sqrt(math.log(arg)) / (2.0 * math.sqrt(2.0))


def adv_dp_total(
    epsilon_step: float, delta_step: float, steps: int, delta_total: float
) -> float:
    """Advanced composition of `steps` copies of a per-step (eps, delta) guarantee.

    epsilon_total = eps * sqrt(2 T log(1 / (delta_total - T delta_step)))
                    + T eps (e^eps - 1),
    valid only when delta_total > steps * delta_step.
    """
    if epsilon_step < 0.0:
        raise ValueError(f"epsilon_step must be >= 0, got {epsilon_step}")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    slack = delta_total - steps * delta_step
    if slack <= 0.0:
        raise ValueError(
            f"delta budget infeasible: delta_total = {delta_total} must exceed "
            f"steps * delta_step = {steps * delta_step}"
        )
    return epsilon_step * math.sqrt(2.0 * steps * math.log(1.0 / slack)) + (
        steps * epsilon_step * math.expm1(epsilon_step)
    )


def adv_dp_epsilon(steps: int, n_arms: int, delta_total: float) -> float:
    """Advanced-composition epsilon at a total delta, with the default split.

    Assigns ADV_DP_DELTA_SPLIT of delta_total to the composition slack and
    divides the rest evenly across the per-step deltas.
    """
    if not 0.0 < delta_total < 1.0:
        raise ValueError(f"delta_total must be in (0, 1), got {delta_total}")
    delta_step = (1.0 - ADV_DP_DELTA_SPLIT) * delta_total / steps
    eps_step = adv_dp_per_step(n_arms, delta_step)
    return adv_dp_total(eps_step, delta_step, steps, delta_total)


def solve_variance_scale(
    eta_target: float, steps: int, prepulls: int, n_arms: int | None = None
) -> float:
    """Smallest variance scale meeting a target GDP budget at fixed prepulls.

    Inverts gdp_total: c = steps / (eta^2 (prepulls + 1)). Raises
    PrepullBudgetExceeded when the result falls below 1 (prepulls alone
    over-deliver; var_scale = 1 is then a valid, stronger choice) and
    InfeasibleHorizon when prepulls * n_arms >= steps.
    """
    if eta_target <= 0.0:
        raise ValueError(f"eta_target must be positive, got {eta_target}")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if prepulls < 0:
        raise ValueError(f"prepulls must be >= 0, got {prepulls}")
    if n_arms is not None and prepulls * n_arms >= steps:
        raise InfeasibleHorizon(
            f"prepulls * n_arms = {prepulls * n_arms} leaves no sampling steps "
            f"in a horizon of {steps}"
        )
    var_scale = steps / (eta_target**2 * (prepulls + 1))
    if var_scale < 1.0:
        raise PrepullBudgetExceeded(
            f"prepulls = {prepulls} alone already achieve eta = "
            f"{math.sqrt(steps / (prepulls + 1)):.6g} <= target {eta_target:.6g}; "
            f"use var_scale = 1"
        )
    return var_scale


def realized_gdp(pull_counts_before: np.ndarray, var_scale: float) -> float:
    """Instance-specific GDP diagnostic from realized pull counts.

    Composes the realized per-step parameters 1/sqrt(c (n + 1)), where n
    is the played arm's pull count just before each sampling-phase step.
    This is NOT a worst-case guarantee: it depends on the realized
    trajectory and should be read only as a per-trace diagnostic of how
    loose the worst-case bound was on that run.
    """
    counts = np.asarray(pull_counts_before, dtype=float)
    if not var_scale >= 1.0:
        raise ValueError(f"var_scale must be >= 1, got {var_scale}")
    if counts.size == 0:
        return 0.0
    return float(np.sqrt(np.sum(1.0 / (var_scale * (counts + 1.0)))))


def _check_bc(prepulls: int, var_scale: float) -> None:
    if prepulls < 0:
        raise ValueError(f"prepulls must be >= 0, got {prepulls}")
    if not var_scale >= 1.0:
        raise ValueError(f"var_scale must be >= 1, got {var_scale}")
