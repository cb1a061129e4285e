import numpy as np
import pytest

from bislab.probability import AuxiliaryPair, Channel, FiniteDistribution, SystemModel


@pytest.fixture
def bsc_model():
    """Uniform binary source, BSC(0.1) enrollment, BSC(0.2) identification."""
    return SystemModel(FiniteDistribution.uniform(2), Channel.bsc(0.1), Channel.bsc(0.2))


@pytest.fixture
def bsc_aux():
    """U = Y through BSC(0.05), V = U."""
    return AuxiliaryPair(Channel.bsc(0.05), Channel.identity(2))


@pytest.fixture
def identity_model():
    return SystemModel(
        FiniteDistribution.uniform(2), Channel.identity(2), Channel.identity(2)
    )


@pytest.fixture
def identity_aux():
    return AuxiliaryPair(Channel.identity(2), Channel.identity(2))


def random_distribution(rng: np.random.Generator, k: int) -> FiniteDistribution:
    return FiniteDistribution(k, rng.dirichlet(np.ones(k)))


def random_channel(rng: np.random.Generator, k_in: int, k_out: int) -> Channel:
    return Channel(k_in, k_out, np.stack([rng.dirichlet(np.ones(k_out)) for _ in range(k_in)]))


def random_model(rng: np.random.Generator, x=2, y=2, z=2) -> SystemModel:
    return SystemModel(
        random_distribution(rng, x),
        random_channel(rng, x, y),
        random_channel(rng, x, z),
    )


def random_aux(rng: np.random.Generator, y=2, u=3, v=2) -> AuxiliaryPair:
    return AuxiliaryPair(random_channel(rng, y, u), random_channel(rng, u, v))
