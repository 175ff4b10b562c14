"""Seeded Monte-Carlo harness: policies vs. environments, regret traces.

Reproducibility contract:
  * run_once(instance, config, seed) is a pure function of its arguments.
    Per step it consumes one uniform for the reward, plus one
    standard_normal(n_arms) call in the sampling phase (see dpts.policy).
  * run_experiment derives the rng stream of (config index ci, run index
    ri) as SeedSequence([master_seed, ci, ri]), so runs can execute in
    any order or in parallel and still reproduce bit-for-bit.

Two regret series are tracked per run: empirical regret
best_mean * t - sum of realized rewards (what the headline experiments
plot) and pseudo-regret, the sum of the played arms' gaps (lower variance,
used by most checks).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
from joblib import Parallel, delayed

from .env import BanditInstance, sample_reward
from .policy import ThompsonSampler, TSConfig
from .privacy import (
    InfeasibleHorizon,
    PrepullBudgetExceeded,
    gdp_total,
    solve_variance_scale,
)

#: Output time series are downsampled to at most this many points.
MAX_TRACE_POINTS = 1000


@dataclass
class RegretTrace:
    """Full per-step record of one run."""

    actions: np.ndarray
    rewards: np.ndarray
    cum_empirical_regret: np.ndarray
    cum_pseudo_regret: np.ndarray
    pull_counts: np.ndarray
    prepull_steps: int

    @property
    def final_empirical_regret(self) -> float:
        return float(self.cum_empirical_regret[-1])

    @property
    def final_pseudo_regret(self) -> float:
        return float(self.cum_pseudo_regret[-1])

    @property
    def prepull_pseudo_regret(self) -> float:
        """Pseudo-regret accumulated during the prepull phase."""
        if self.prepull_steps == 0:
            return 0.0
        return float(self.cum_pseudo_regret[self.prepull_steps - 1])


def run_once(instance: BanditInstance, config: TSConfig, seed) -> RegretTrace:
    """Run the sampler once over the full horizon; deterministic given seed."""
    rng = np.random.default_rng(seed)
    sampler = ThompsonSampler(instance.n_arms, config)
    horizon = config.horizon
    actions = np.empty(horizon, dtype=np.int64)
    rewards = np.empty(horizon)
    for t in range(horizon):
        arm, _ = sampler.select_arm(rng)
        r = sample_reward(instance.arms[arm], rng)
        sampler.observe(arm, r)
        actions[t] = arm
        rewards[t] = r
    steps = np.arange(1, horizon + 1)
    cum_emp = instance.best_mean * steps - np.cumsum(rewards)
    cum_pseudo = np.cumsum(instance.gaps[actions])
    return RegretTrace(
        actions=actions,
        rewards=rewards,
        cum_empirical_regret=cum_emp,
        cum_pseudo_regret=cum_pseudo,
        pull_counts=np.bincount(actions, minlength=instance.n_arms),
        prepull_steps=sampler.prepull_steps,
    )


def sampling_pull_counts_before(trace: RegretTrace) -> np.ndarray:
    """Played arm's pull count just before each sampling-phase step.

    Input to the realized-GDP diagnostic (dpts.privacy.realized_gdp).
    """
    n_arms = len(trace.pull_counts)
    counts = np.zeros(n_arms, dtype=np.int64)
    out = np.empty(len(trace.actions) - trace.prepull_steps, dtype=np.int64)
    for t, arm in enumerate(trace.actions):
        if t >= trace.prepull_steps:
            out[t - trace.prepull_steps] = counts[arm]
        counts[arm] += 1
    return out


@dataclass(frozen=True)
class ConfigSpec:
    """One experiment configuration: prepull count plus either an explicit
    variance scale or a target GDP budget to solve it from."""

    label: str
    prepulls: int
    var_scale: float | None = None
    eta_target: float | None = None

    def __post_init__(self):
        if (self.var_scale is None) == (self.eta_target is None):
            raise ValueError(
                f"config {self.label!r}: give exactly one of var_scale / eta_target"
            )


@dataclass(frozen=True)
class ResolvedConfig:
    label: str
    prepulls: int
    var_scale: float
    eta: float  # GDP parameter achieved over the full horizon
    note: str = ""


def resolve_config(spec: ConfigSpec, horizon: int, n_arms: int) -> ResolvedConfig:
    """Fix the variance scale and report the achieved GDP parameter.

    A target budget that the prepulls alone over-deliver resolves to
    var_scale = 1 (stronger privacy than requested, flagged in `note`).
    Raises InfeasibleHorizon when no sampling steps would remain.
    """
    if spec.prepulls * n_arms >= horizon:
        raise InfeasibleHorizon(
            f"config {spec.label!r}: prepulls * n_arms = {spec.prepulls * n_arms} "
            f">= horizon = {horizon}"
        )
    note = ""
    if spec.var_scale is not None:
        var_scale = spec.var_scale
        if not var_scale >= 1.0:
            raise ValueError(f"config {spec.label!r}: var_scale must be >= 1")
    else:
        try:
            var_scale = solve_variance_scale(spec.eta_target, horizon, spec.prepulls)
        except PrepullBudgetExceeded:
            var_scale = 1.0
            note = "prepulls over-deliver the budget; var_scale clamped to 1"
    return ResolvedConfig(
        label=spec.label,
        prepulls=spec.prepulls,
        var_scale=var_scale,
        eta=gdp_total(horizon, spec.prepulls, var_scale),
        note=note,
    )


@dataclass(frozen=True)
class ExperimentConfig:
    instance: BanditInstance
    horizon: int
    runs: int
    seed: int
    configs: tuple[ConfigSpec, ...]

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")
        if len(self.configs) == 0:
            raise ValueError("no configurations")


@dataclass
class ConfigResult:
    """Aggregated outcome of all runs of one configuration."""

    label: str
    prepulls: int
    var_scale: float
    eta: float
    note: str
    sample_times: np.ndarray  # 1-based step indices of the downsampled curves
    run_curves: np.ndarray  # runs x points, cumulative empirical regret
    mean_curve: np.ndarray  # points, mean over runs
    final_empirical: np.ndarray  # per-run final empirical regret
    final_pseudo: np.ndarray  # per-run final pseudo-regret
    prepull_pseudo: np.ndarray  # per-run prepull-phase pseudo-regret
    runtime_seconds: float

    @property
    def mean_final_regret(self) -> float:
        return float(np.mean(self.final_empirical))

    @property
    def stderr_final_regret(self) -> float:
        if len(self.final_empirical) < 2:
            return 0.0
        return float(
            np.std(self.final_empirical, ddof=1) / math.sqrt(len(self.final_empirical))
        )

    @property
    def mean_final_pseudo_regret(self) -> float:
        return float(np.mean(self.final_pseudo))


@dataclass
class ExperimentResult:
    configs: list[ConfigResult] = field(default_factory=list)
    skipped: list[tuple[str, str]] = field(default_factory=list)  # (label, reason)


def sample_indices(horizon: int, max_points: int = MAX_TRACE_POINTS) -> np.ndarray:
    """0-based step indices of the downsampled output grid (always ends at T-1)."""
    if horizon <= max_points:
        return np.arange(horizon)
    return np.round(np.linspace(0, horizon - 1, max_points)).astype(np.int64)


def _run_task(instance, config, seed_entropy, idx):
    trace = run_once(instance, config, np.random.SeedSequence(seed_entropy))
    return (
        trace.cum_empirical_regret[idx],
        trace.final_empirical_regret,
        trace.final_pseudo_regret,
        trace.prepull_pseudo_regret,
    )


def run_experiment(
    exp: ExperimentConfig,
    workers: int = 1,
    max_points: int = MAX_TRACE_POINTS,
) -> ExperimentResult:
    """Run every feasible configuration `exp.runs` times and aggregate.

    Infeasible configurations are reported in `skipped`, never fatal.
    Results are reduced in run-index order regardless of worker count.
    """
    result = ExperimentResult()
    n_arms = exp.instance.n_arms
    idx = sample_indices(exp.horizon, max_points)
    for ci, spec in enumerate(exp.configs):
        try:
            resolved = resolve_config(spec, exp.horizon, n_arms)
        except (InfeasibleHorizon, ValueError) as e:
            result.skipped.append((spec.label, str(e)))
            continue
        config = TSConfig(
            horizon=exp.horizon,
            prepulls=resolved.prepulls,
            var_scale=resolved.var_scale,
        )
        tasks = [
            (exp.instance, config, [exp.seed, ci, ri], idx) for ri in range(exp.runs)
        ]
        start = time.perf_counter()
        if workers == 1:
            records = [_run_task(*t) for t in tasks]
        else:
            records = Parallel(n_jobs=workers)(delayed(_run_task)(*t) for t in tasks)
        elapsed = time.perf_counter() - start
        run_curves = np.array([rec[0] for rec in records])
        result.configs.append(
            ConfigResult(
                label=resolved.label,
                prepulls=resolved.prepulls,
                var_scale=resolved.var_scale,
                eta=resolved.eta,
                note=resolved.note,
                sample_times=idx + 1,
                run_curves=run_curves,
                mean_curve=run_curves.mean(axis=0),
                final_empirical=np.array([rec[1] for rec in records]),
                final_pseudo=np.array([rec[2] for rec in records]),
                prepull_pseudo=np.array([rec[3] for rec in records]),
                runtime_seconds=elapsed,
            )
        )
    return result


def regret_bound_envelope(
    instance: BanditInstance, config: TSConfig, slack: float = 10.0
) -> float | None:
    """Loose sanity ceiling on expected regret:
    prepulls * n_arms + slack * var_scale * sqrt(n_arms * sampling_steps * log n_arms).

    The multiplicative constant of the underlying asymptotic bound is not
    pinned down, so this is only meaningful as an upper envelope with
    generous slack. Returns None when the bound's hypothesis (enough
    sampling steps relative to the smallest positive gap) fails.
    """
    n = instance.n_arms
    prepull_steps = config.prepulls * n
    positive = instance.gaps[instance.gaps > 0]
    min_gap_term = 4.0 / float(positive.min()) ** 2 if positive.size else 0.0
    if not config.horizon > prepull_steps + min_gap_term:
        return None
    sampling_steps = config.horizon - prepull_steps
    return prepull_steps + slack * config.var_scale * math.sqrt(
        n * sampling_steps * math.log(n)
    )
