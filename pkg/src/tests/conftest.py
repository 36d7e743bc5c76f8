"""Shared fixtures for the centric-kit test suite."""

import numpy as np
import pytest

from centric_kit.core.types import Dataset, Partition
from centric_kit.services.datagen import gaussian_blobs


@pytest.fixture(autouse=True)
def single_worker(monkeypatch):
    """Run parallel sections single-threaded unless a test asks otherwise."""
    monkeypatch.setenv("CENTRIC_KIT_THREADS", "1")


@pytest.fixture
def line_dataset():
    """1D points {0, 2, 10, 12}."""
    return Dataset(points=[0.0, 2.0, 10.0, 12.0])


@pytest.fixture
def line_partition():
    """{0, 2} and {10, 12}."""
    return Partition(labels=[0, 0, 1, 1], k=2)


@pytest.fixture
def two_blobs_12():
    """12-point, two-blob instance whose ideal partition is the generating one."""
    return gaussian_blobs(k=2, n_per=6, dim=2, spread=0.5, separation=10.0, seed=11)


@pytest.fixture
def three_blobs_12():
    """12-point, three-blob instance in 2D."""
    return gaussian_blobs(k=3, n_per=4, dim=2, spread=0.5, separation=10.0, seed=5)


@pytest.fixture
def two_blobs_40():
    """40-point, two-blob instance with separation 10x the spread."""
    return gaussian_blobs(k=2, n_per=20, dim=2, spread=1.0, separation=10.0, seed=2)


@pytest.fixture
def mixed_direction_instance():
    """Z = {-20}, T = {0, 4, 5} on a line; P = {0, 4} is points 1 and 2."""
    dataset = Dataset(points=[-20.0, 0.0, 4.0, 5.0])
    partition = Partition(labels=[0, 1, 1, 1], k=2)
    return dataset, partition, np.array([1, 2])
