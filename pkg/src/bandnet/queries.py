"""Histograms, percentile thresholds, range filters, and the task answers.

Everything the dashboard displays is grounded in these deterministic
queries: tie-breaking is total, zero-strength pairs are treated as
"no edge" everywhere, and ranges are inclusive [lo, hi].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .model import ConnectivityTensor, FilterState, MetricTable, Subnetwork


@dataclass(frozen=True)
class Histogram:
    """Uniform-width bin counts over a fixed domain."""

    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]
    domain: tuple[float, float]


@dataclass(frozen=True)
class EdgeSelection:
    """Edges of one band that pass the active connectivity range."""

    band: int
    edges: tuple[tuple[int, int, float], ...]


def histogram(values, bin_count: int, domain: tuple[float, float]) -> Histogram:
    """Bin values into bin_count uniform bins over [lo, hi].

    Bins are half-open [e_k, e_k+1) except the last, which is closed, so a
    value equal to hi lands in the final bin. Values outside the domain are
    excluded.
    """
    lo, hi = float(domain[0]), float(domain[1])
    if bin_count < 1 or lo >= hi:
        raise ValueError(f"invalid histogram spec: bins={bin_count}, domain=[{lo},{hi}]")
    arr = np.asarray(list(values), dtype=float)
    counts, edges = np.histogram(arr, bins=bin_count, range=(lo, hi))
    return Histogram(tuple(edges.tolist()), tuple(int(c) for c in counts), (lo, hi))


def shared_count_scale(histograms: Sequence[Histogram]) -> int:
    """Common y-axis maximum: the largest bin count across all histograms."""
    if not histograms:
        raise ValueError("shared_count_scale needs at least one histogram")
    return max(max(h.counts) for h in histograms)


def top_percent_threshold(values, percent: float) -> float:
    """Nearest-rank threshold for the top percent of values.

    Sorts descending and returns the value at rank ceil(percent/100 * N).
    The selected set is every value >= threshold, so ties at the cut are
    included and the selection may exceed percent.
    """
    arr = np.asarray(list(values), dtype=float)
    if arr.size == 0:
        raise ValueError("no values")
    if not 0 < percent <= 100:
        raise ValueError(f"percent must be in (0, 100], got {percent}")
    rank = math.ceil(percent / 100.0 * arr.size)
    ordered = np.sort(arr)[::-1]
    return float(ordered[rank - 1])


def _pair_iter(mat: np.ndarray, symmetric: bool):
    n = mat.shape[0]
    if symmetric:
        for i in range(n):
            for j in range(i + 1, n):
                yield i, j, mat[i, j]
    else:
        for i in range(n):
            for j in range(n):
                if i != j:
                    yield i, j, mat[i, j]


def filter_edges(
    tensor: ConnectivityTensor,
    band: int,
    strength_range: tuple[float, float],
    roi_subset: Optional[Iterable[int]] = None,
) -> EdgeSelection:
    """Edges of one band whose strength lies in [lo, hi].

    Symmetric tensors yield unordered pairs (i < j); asymmetric ones yield
    both directions. Exact zeros are never returned. With roi_subset, both
    endpoints must be in the subset.
    """
    mat = tensor.band(band)
    lo, hi = float(strength_range[0]), float(strength_range[1])
    if lo > hi:
        raise ValueError(f"invalid strength range [{lo},{hi}]")
    subset = None if roi_subset is None else frozenset(int(r) for r in roi_subset)
    edges = []
    for i, j, w in _pair_iter(mat, tensor.symmetric):
        if w <= 0 or not lo <= w <= hi:
            continue
        if subset is not None and (i not in subset or j not in subset):
            continue
        edges.append((i, j, float(w)))
    return EdgeSelection(band, tuple(edges))


def task1_highest(metric: MetricTable) -> tuple[int, int, float]:
    """Global argmax over all (roi, band) cells as (band, roi, value).

    Ties break to the lowest band index, then the lowest roi id.
    """
    values = metric.values
    best = values.max()
    rois, bands = np.nonzero(values == best)
    order = np.lexsort((rois, bands))
    k = order[0]
    return int(bands[k]), int(rois[k]), float(best)


def task2_strongest_per_band(
    tensor: ConnectivityTensor,
    roi_subset: Optional[Iterable[int]] = None,
) -> list[Optional[tuple[int, int, float]]]:
    """Strongest positive connection per band, scoped to roi_subset if given.

    Each entry is (i, j, strength) with ties broken to the lexicographically
    smallest pair, or None when the band has no positive connection in scope.
    """
    subset = None if roi_subset is None else sorted(int(r) for r in roi_subset)
    if subset is not None and len(subset) < 2:
        raise ValueError("roi subset must contain at least 2 ROIs")
    results: list[Optional[tuple[int, int, float]]] = []
    for b in range(tensor.n_bands):
        mat = tensor.band(b)
        best: Optional[tuple[int, int, float]] = None
        for i, j, w in _pair_iter(mat, tensor.symmetric):
            if w <= 0:
                continue
            if subset is not None and (i not in subset or j not in subset):
                continue
            if best is None or w > best[2] or (w == best[2] and (i, j) < best[:2]):
                best = (i, j, float(w))
        results.append(best)
    return results


def task3_lowest_band_for_roi(metric: MetricTable, roi: int) -> tuple[int, float]:
    """Band where the roi's metric is lowest; ties break to the lower index."""
    if not 0 <= roi < metric.n_rois:
        raise ValueError(f"invalid roi id {roi}, have {metric.n_rois} rois")
    row = metric.values[roi]
    band = int(np.argmin(row))
    return band, float(row[band])


def task4_strongest_in_subnetworks(
    tensor: ConnectivityTensor,
    subnetworks: Sequence[Subnetwork],
) -> list[Optional[tuple[int, int, float]]]:
    """Strongest connection per band within the union of the subnetworks."""
    union: set[int] = set()
    for sub in subnetworks:
        union.update(sub.members)
    return task2_strongest_per_band(tensor, union)


def apply_filter_state(metric: MetricTable, state: FilterState) -> tuple[frozenset[int], ...]:
    """Per-band set of ROI ids whose metric value passes that band's range.

    Bands with no range set keep every roi active; inactive segments are
    what the dashboard pushes into the background.
    """
    active: list[frozenset[int]] = []
    for b in range(metric.n_bands):
        rng = state.metric_range_for(b)
        column = metric.values[:, b]
        if rng is None:
            active.append(frozenset(range(metric.n_rois)))
        else:
            lo, hi = rng
            ids = np.nonzero((column >= lo) & (column <= hi))[0]
            active.append(frozenset(int(i) for i in ids))
    return tuple(active)
