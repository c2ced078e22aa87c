import numpy as np
import pytest

from relucert.core.network import Network


def make_random_net(rng: np.random.Generator, sizes) -> Network:
    """Weights and biases uniform in [-1, 1]; sizes = (input, hidden..., output)."""
    weights = [rng.uniform(-1, 1, (sizes[k + 1], sizes[k])) for k in range(len(sizes) - 1)]
    biases = [rng.uniform(-1, 1, sizes[k + 1]) for k in range(len(sizes) - 1)]
    return Network.from_weights(weights, biases)


@pytest.fixture
def mirror_net() -> Network:
    """y1 = x, y2 = -x."""
    return Network.from_weights([[[1.0], [-1.0]]], [[0.0, 0.0]])


@pytest.fixture
def relu_net() -> Network:
    """y = relu(x)."""
    return Network.from_weights([[[1.0]], [[1.0]]], [[0.0], [0.0]])


@pytest.fixture
def constant_net() -> Network:
    """All weights zero; outputs are always [1, 0]."""
    return Network.from_weights(
        [np.zeros((2, 2)), np.zeros((2, 2))],
        [np.zeros(2), np.array([1.0, 0.0])],
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)
