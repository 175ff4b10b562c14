"""Gaussian-prior Thompson Sampling with tunable privacy.

Subpackages:
  env      reward distributions and bandit instances
  policy   the sampling policy and the noisy-argmax primitive
  privacy  GDP / RDP / advanced-composition accounting
  sim      seeded Monte-Carlo experiment harness
  cli      command-line interface
"""

from .env import BanditInstance, Bernoulli, TruncExp
from .policy import ThompsonSampler, TSConfig
from .sim import run_once, run_experiment

__all__ = [
    "BanditInstance",
    "Bernoulli",
    "TruncExp",
    "ThompsonSampler",
    "TSConfig",
    "run_once",
    "run_experiment",
]

__version__ = "0.1.0"
