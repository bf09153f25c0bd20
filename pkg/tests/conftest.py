from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bandnet.dataio import Dataset, generate_synthetic
from bandnet.model import ConnectivityTensor, default_bands, default_rois


def make_dataset(matrices, symmetric=True, name="fixture", coords=None) -> Dataset:
    mats = [np.asarray(m, dtype=float) for m in matrices]
    n = mats[0].shape[0]
    return Dataset(
        name=name,
        tensor=ConnectivityTensor(mats, symmetric=symmetric),
        rois=default_rois(n, coords),
        bands=default_bands(len(mats)),
    )


def random_symmetric(rng, n, zero_fraction=0.0) -> np.ndarray:
    """Random symmetric zero-diagonal matrix with strengths in [0, 1]."""
    upper = rng.random((n, n))
    if zero_fraction:
        upper[rng.random((n, n)) < zero_fraction] = 0.0
    upper = np.triu(upper, k=1)
    return upper + upper.T


@pytest.fixture(scope="session")
def synthetic7() -> Dataset:
    return generate_synthetic(7)


@pytest.fixture()
def triangle_dataset() -> Dataset:
    """Band 0 is a unit triangle; the remaining four bands are empty."""
    tri = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]], dtype=float)
    zero = np.zeros((3, 3))
    return make_dataset([tri, zero, zero, zero, zero], name="triangle")
