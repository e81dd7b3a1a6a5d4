"""Shared fixtures: canonical logic-gate distributions and random-table
factories. Hypothesis runs derandomized so the suite is reproducible."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from pidcmp import Alphabet, JointDistribution, build_joint

settings.register_profile(
    "suite",
    derandomize=True,
    deadline=None,
    max_examples=30,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

_BIT = Alphabet((0, 1))


def _gate(weights) -> JointDistribution:
    w = np.asarray(weights, dtype=np.float64)
    return build_joint((_BIT, _BIT, _BIT), w)


@pytest.fixture(scope="session")
def xor_dist() -> JointDistribution:
    """Y = B xor A over uniform independent input bits."""
    w = np.zeros((2, 2, 2))
    for b in range(2):
        for a in range(2):
            w[b ^ a, b, a] = 0.25
    return _gate(w)


@pytest.fixture(scope="session")
def copy_dist() -> JointDistribution:
    """Y = B = A, a single uniform bit read through both inputs."""
    w = np.zeros((2, 2, 2))
    w[0, 0, 0] = 0.5
    w[1, 1, 1] = 0.5
    return _gate(w)


@pytest.fixture(scope="session")
def unique_dist() -> JointDistribution:
    """Y = B, with A an independent uniform bit."""
    w = np.zeros((2, 2, 2))
    for b in range(2):
        for a in range(2):
            w[b, b, a] = 0.25
    return _gate(w)


@pytest.fixture(scope="session")
def and_dist() -> JointDistribution:
    """Y = B and A over uniform independent input bits."""
    w = np.zeros((2, 2, 2))
    for b in range(2):
        for a in range(2):
            w[b & a, b, a] = 0.25
    return _gate(w)


def random_joint(rng: np.random.Generator, shape=None, max_shape=(5, 5, 4)) -> JointDistribution:
    """Full-support Dirichlet-random distribution of the given or random shape."""
    if shape is None:
        shape = tuple(int(rng.integers(2, hi + 1)) for hi in max_shape)
    w = rng.dirichlet(np.ones(int(np.prod(shape)))).reshape(shape)
    alphabets = tuple(Alphabet(tuple(range(s))) for s in shape)
    return build_joint(alphabets, w)


@pytest.fixture(scope="session")
def dirichlet_batch():
    """Twenty mixed-shape random distributions shared across module tests."""
    rng = np.random.default_rng(404)
    return [random_joint(rng) for _ in range(20)]
