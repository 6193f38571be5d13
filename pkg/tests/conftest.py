import numpy as np
import pytest


@pytest.fixture
def rng():
    """Seeded generator so random sweeps are reproducible."""
    return np.random.default_rng(20240611)
