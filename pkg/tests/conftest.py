import hypothesis
import numpy as np
import pytest

from decaylab import GaussianFamily

# quadrature-heavy properties cannot meet the default deadline
hypothesis.settings.register_profile(
    "decaylab", deadline=None, max_examples=25, derandomize=True
)
hypothesis.settings.load_profile("decaylab")


@pytest.fixture
def gaussian():
    return GaussianFamily(beta=1.0, alpha=1.0, n=2)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
