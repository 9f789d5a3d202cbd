"""Shared generators for randomized checks.

Randomized tests draw from seeded numpy generators so failures replay
exactly; hypothesis-based tests manage their own reproducibility.
"""

import numpy as np
import pytest

from fvariety import JointDistribution, uninformative_projection


def random_joint(rng: np.random.Generator, n_choices: int, n_bins: int) -> JointDistribution:
    mass = rng.dirichlet(np.ones(n_choices * n_bins)).reshape(n_choices, n_bins)
    return JointDistribution(n_choices=n_choices, n_bins=n_bins, mass=mass)


def random_informative_joint(
    rng: np.random.Generator,
    n_choices: int,
    n_bins: int,
    min_distance: float = 1e-3,
) -> JointDistribution:
    """A joint at least ``min_distance`` (max-norm) from its projection."""
    while True:
        dist = random_joint(rng, n_choices, n_bins)
        gap = np.max(np.abs(dist.mass - uninformative_projection(dist).mass))
        if gap >= min_distance:
            return dist


def random_uninformative_joint(
    rng: np.random.Generator, n_choices: int, n_bins: int
) -> JointDistribution:
    column = rng.dirichlet(np.ones(n_bins))
    mass = np.tile(column / n_choices, (n_choices, 1))
    return JointDistribution(n_choices=n_choices, n_bins=n_bins, mass=mass)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0xF00D)
