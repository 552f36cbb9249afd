"""Shared fixtures: small synthetic datasets and a trained network."""

from __future__ import annotations

import numpy as np
import pytest

from pointgwr.gwr import GwrParams
from pointgwr.harness import _fresh_network, _training_arrays, crossval
from pointgwr.sim.dataset import generate_dataset
from pointgwr.sim.gestures import NoiseSpec


@pytest.fixture(scope="session")
def tiny_dataset():
    """Noise-free dataset, a few frames per scene -- fast unit-test fuel."""
    return generate_dataset(per_scene_frames=4, seed=123)


@pytest.fixture(scope="session")
def noisy_dataset():
    """Dataset with position/angle jitter plus off-scenario frames."""
    return generate_dataset(
        per_scene_frames=6, noise=NoiseSpec(outlier_rate=0.2), seed=31
    )


@pytest.fixture(scope="session")
def trained_net(tiny_dataset):
    """A small network trained on the tiny dataset."""
    features, labels = _training_arrays(tiny_dataset.records)
    net = _fresh_network(features, labels, GwrParams(a_t=0.9), tiny_dataset)
    net.train(features, labels, 6, seed=np.random.default_rng(5))
    return net


@pytest.fixture(scope="session")
def cv(tiny_dataset):
    """A short cross-validation run shared by the structural tests."""
    return crossval(tiny_dataset, GwrParams(a_t=0.85), epochs=2, seed=11)
