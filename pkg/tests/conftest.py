import numpy as np
import pytest

from dyadkde import DyadicSample


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_sample(rng, n_nodes, scale=1.0, loc=0.0):
    n = n_nodes * (n_nodes - 1) // 2
    return DyadicSample(n_nodes, loc + scale * rng.normal(size=n))
