import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from relkin import MetricSpace

settings.register_profile(
    "suite",
    max_examples=50,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def euclid2():
    return MetricSpace.from_metric(np.eye(2))


@pytest.fixture(scope="session")
def mink2():
    return MetricSpace.from_metric(np.diag([-1.0, 1.0]))


@pytest.fixture(scope="session")
def mink4():
    return MetricSpace.from_metric(np.diag([-1.0, 1.0, 1.0, 1.0]))


@pytest.fixture(scope="session")
def split4():
    return MetricSpace.from_metric(np.diag([-1.0, -1.0, 1.0, 1.0]))


@pytest.fixture(scope="session")
def golden(mink4):
    """The Lorentzian fixture used throughout: R at rest, S boosted in x."""
    r = mink4.vector([1.0, 0.0, 0.0, 0.0])
    s = mink4.vector([1.25, 0.75, 0.0, 0.0])
    return mink4, r, s
