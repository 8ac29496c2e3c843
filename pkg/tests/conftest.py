import numpy as np
import pytest
from hypothesis import HealthCheck, settings

# Seeded, derandomized property-test runs so failures are reproducible.
settings.register_profile(
    "ci",
    max_examples=25,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
