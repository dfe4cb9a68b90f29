import numpy as np
import pytest

from fracground import make_grid


@pytest.fixture(scope="session")
def default_grid():
    return make_grid(64.0, 4096)


@pytest.fixture(scope="session")
def small_grid():
    return make_grid(32.0, 1024)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
