"""Nodal graph metrics computed per ROI per frequency band.

The clustering coefficient here is the weighted geometric-mean variant,
evaluated on weights rescaled by the band maximum so results stay in [0, 1]
regardless of the scale of the underlying connectivity measure. Node
strength is the plain row sum of raw weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .model import ConnectivityTensor, MetricTable

SUPPORTED_METRICS = ("cc", "strength")


@dataclass(frozen=True)
class NormalizedBandMatrix:
    """Edge weights divided by the band's maximum entry.

    The maximum entry is exactly 1 unless the band is all zero, in which
    case the matrix is unchanged. Diagonal stays 0.
    """

    weights: np.ndarray
    source_band: Optional[int] = None

    def __post_init__(self):
        arr = np.asarray(self.weights, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("normalized matrix must be square")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "weights", arr)


def normalize_weights(band_matrix, source_band: Optional[int] = None) -> NormalizedBandMatrix:
    """Rescale a band's weights into [0, 1] by its maximum entry."""
    mat = np.asarray(band_matrix, dtype=float)
    peak = mat.max() if mat.size else 0.0
    if peak > 0:
        mat = mat / peak
    return NormalizedBandMatrix(mat, source_band)


def clustering_coefficient(norm: NormalizedBandMatrix) -> np.ndarray:
    """Weighted clustering coefficient per node.

    For node i with k_i strictly positive neighbors, sums the geometric
    mean (w_ij * w_ih * w_jh)^(1/3) over all ordered neighbor pairs
    (j, h), j != h, both != i, and divides by k_i * (k_i - 1). Nodes with
    fewer than two neighbors get 0. On weights in [0, 1] the result is
    in [0, 1]: 1 exactly when every positive neighbor pair closes a
    unit-weight triangle.
    """
    w = norm.weights
    n = w.shape[0]
    if n == 0:
        return np.zeros(0)
    roots = np.cbrt(w)
    # Zero diagonal makes the einsum skip j=i, h=i, and j=h terms.
    triple_sum = np.einsum("ij,ih,jh->i", roots, roots, roots)
    degree = np.count_nonzero(w > 0, axis=1)
    out = np.zeros(n)
    active = degree >= 2
    out[active] = triple_sum[active] / (degree[active] * (degree[active] - 1.0))
    return out


def node_strength(band_matrix) -> np.ndarray:
    """Sum of raw edge weights per node (row sums)."""
    mat = np.asarray(band_matrix, dtype=float)
    return mat.sum(axis=1)


def compute_metric_table(tensor: ConnectivityTensor, metric_id: str) -> MetricTable:
    """Apply a nodal metric to every band of a validated tensor.

    Column b holds the metric for band b; "cc" runs on per-band normalized
    weights, "strength" on the raw weights.
    """
    if metric_id not in SUPPORTED_METRICS:
        raise ValueError(f"unsupported metric: {metric_id!r}")
    columns = []
    for b in range(tensor.n_bands):
        band = tensor.band(b)
        if metric_id == "cc":
            columns.append(clustering_coefficient(normalize_weights(band, b)))
        else:
            columns.append(node_strength(band))
    return MetricTable(metric_id, np.column_stack(columns))
