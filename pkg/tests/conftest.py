import numpy as np
import pytest

from dpts.env import BanditInstance, Bernoulli, TruncExp

BERNOULLI_MEANS = [0.75, 0.625, 0.5, 0.375, 0.25]
TRUNC_EXP_RATES = [0.1, 1.0, 2.0, 5.0, 10.0]


@pytest.fixture
def bernoulli_instance():
    return BanditInstance([Bernoulli(p) for p in BERNOULLI_MEANS])


@pytest.fixture
def truncexp_instance():
    return BanditInstance([TruncExp(lam) for lam in TRUNC_EXP_RATES])


@pytest.fixture
def rng():
    return np.random.default_rng(0)
