"""Core domain types for multi-frequency connectivity networks.

A dataset is a stack of per-band ROI x ROI edge-strength matrices plus the
ROI and band descriptors. Types here are immutable containers; structural
rules are enforced by :func:`validate_dataset`, which reports every violated
invariant instead of raising, so callers can decide whether to abort.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

DEFAULT_BAND_NAMES = ("delta", "theta", "alpha", "sigma", "beta")


def _readonly_matrix(values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"band matrix must be 2-dimensional, got ndim={arr.ndim}")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class FrequencyBand:
    """One spectral slice of the signal; index is the band's position."""

    index: int
    name: str

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("band index must be >= 0")
        if not self.name:
            raise ValueError("band name must be non-empty")


def default_bands(n_bands: int = 5) -> tuple[FrequencyBand, ...]:
    """Band descriptors for n_bands; the canonical five names when n_bands=5."""
    if n_bands == len(DEFAULT_BAND_NAMES):
        names = DEFAULT_BAND_NAMES
    else:
        names = tuple(f"band{i}" for i in range(n_bands))
    return tuple(FrequencyBand(i, name) for i, name in enumerate(names))


@dataclass(frozen=True)
class Roi:
    """A network node: one region of interest.

    coord, when present, is an abstract anatomical position normalized
    to [-1, 1] on each axis.
    """

    id: int
    label: str
    coord: Optional[tuple[float, float, float]] = None

    def __post_init__(self):
        if self.id < 0:
            raise ValueError("roi id must be >= 0")
        if self.coord is not None:
            coord = tuple(float(c) for c in self.coord)
            if len(coord) != 3:
                raise ValueError("roi coord must have 3 components")
            object.__setattr__(self, "coord", coord)


def default_rois(n_rois: int, coords=None) -> tuple[Roi, ...]:
    """ROI descriptors labeled "ROI 0".."ROI n-1", optionally with coords."""
    if coords is None:
        return tuple(Roi(i, f"ROI {i}") for i in range(n_rois))
    return tuple(
        Roi(i, f"ROI {i}", tuple(float(c) for c in coords[i])) for i in range(n_rois)
    )


class ConnectivityTensor:
    """Per-band N x N non-negative edge strengths; the network's edges.

    Stores matrices exactly as given (including invalid ones) so that
    :func:`validate_dataset` can report problems; arrays are read-only.
    """

    __slots__ = ("bands", "symmetric")

    def __init__(self, bands: Sequence, symmetric: bool = True):
        self.bands: tuple[np.ndarray, ...] = tuple(_readonly_matrix(b) for b in bands)
        self.symmetric = bool(symmetric)
        if not self.bands:
            raise ValueError("tensor needs at least one band matrix")

    @property
    def n_bands(self) -> int:
        return len(self.bands)

    @property
    def n_rois(self) -> int:
        return self.bands[0].shape[0]

    def band(self, index: int) -> np.ndarray:
        if not 0 <= index < self.n_bands:
            raise ValueError(f"invalid band index {index}, have {self.n_bands} bands")
        return self.bands[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConnectivityTensor):
            return NotImplemented
        return (
            self.symmetric == other.symmetric
            and len(self.bands) == len(other.bands)
            and all(
                a.shape == b.shape and np.array_equal(a, b)
                for a, b in zip(self.bands, other.bands)
            )
        )

    def __repr__(self) -> str:
        shapes = ",".join(f"{a.shape[0]}x{a.shape[1]}" for a in self.bands)
        return f"ConnectivityTensor(bands=[{shapes}], symmetric={self.symmetric})"


class MetricTable:
    """N x B nodal metric values with per-band min/max summaries."""

    __slots__ = ("metric_id", "values", "band_min", "band_max")

    def __init__(self, metric_id: str, values):
        arr = np.asarray(values, dtype=float)
        if arr.ndim != 2:
            raise ValueError("metric table must be N x B")
        arr = arr.copy()
        arr.flags.writeable = False
        self.metric_id = metric_id
        self.values = arr
        self.band_min = arr.min(axis=0)
        self.band_max = arr.max(axis=0)
        self.band_min.flags.writeable = False
        self.band_max.flags.writeable = False

    @property
    def n_rois(self) -> int:
        return self.values.shape[0]

    @property
    def n_bands(self) -> int:
        return self.values.shape[1]

    def band_values(self, band: int) -> np.ndarray:
        if not 0 <= band < self.n_bands:
            raise ValueError(f"invalid band index {band}, have {self.n_bands} bands")
        return self.values[:, band]

    def __repr__(self) -> str:
        return f"MetricTable({self.metric_id!r}, {self.n_rois}x{self.n_bands})"


@dataclass(frozen=True)
class Subnetwork:
    """A named group of ROI ids analyzed and rendered as a unit."""

    name: str
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(int(m) for m in self.members)
        if not self.name:
            raise ValueError("subnetwork name must be non-empty")
        if not members:
            raise ValueError(f"subnetwork {self.name!r} has no members")
        if len(set(members)) != len(members):
            raise ValueError(f"subnetwork {self.name!r} has duplicate members")
        if any(m < 0 for m in members):
            raise ValueError(f"subnetwork {self.name!r} has negative roi id")
        object.__setattr__(self, "members", members)


def check_subnetworks(subnetworks: Sequence[Subnetwork], n_rois: int) -> None:
    """Raise if members fall outside 0..n_rois-1 or groups overlap."""
    seen: dict[int, str] = {}
    for sub in subnetworks:
        for m in sub.members:
            if m >= n_rois:
                raise ValueError(
                    f"subnetwork references unknown ROI: {m} (dataset has {n_rois})"
                )
            if m in seen:
                raise ValueError(
                    f"subnetworks {seen[m]!r} and {sub.name!r} overlap at roi {m}"
                )
            seen[m] = sub.name


@dataclass(frozen=True)
class FilterState:
    """Active per-band metric ranges, connectivity range, and band selection.

    A None range means "no filter". Ranges are inclusive [lo, hi].
    """

    metric_ranges: tuple[Optional[tuple[float, float]], ...] = ()
    connectivity_range: Optional[tuple[float, float]] = None
    selected_band: int = 0
    active_subnetworks: tuple[Subnetwork, ...] = ()

    def __post_init__(self):
        ranges = tuple(
            None if r is None else (float(r[0]), float(r[1])) for r in self.metric_ranges
        )
        for r in ranges:
            if r is not None and r[0] > r[1]:
                raise ValueError(f"metric range lo > hi: {r}")
        conn = self.connectivity_range
        if conn is not None:
            conn = (float(conn[0]), float(conn[1]))
            if conn[0] > conn[1]:
                raise ValueError(f"connectivity range lo > hi: {conn}")
        if self.selected_band < 0:
            raise ValueError("selected_band must be >= 0")
        object.__setattr__(self, "metric_ranges", ranges)
        object.__setattr__(self, "connectivity_range", conn)
        object.__setattr__(self, "active_subnetworks", tuple(self.active_subnetworks))

    def metric_range_for(self, band: int) -> Optional[tuple[float, float]]:
        if band < len(self.metric_ranges):
            return self.metric_ranges[band]
        return None


@dataclass(frozen=True)
class ValidationReport:
    """Every invariant violation found in a dataset; empty means accepted."""

    issues: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.issues

    def __bool__(self) -> bool:
        return self.ok

    def __iter__(self) -> Iterator[str]:
        return iter(self.issues)

    def __len__(self) -> int:
        return len(self.issues)


def validate_dataset(
    tensor: ConnectivityTensor,
    rois: Sequence[Roi],
    bands: Sequence[FrequencyBand],
) -> ValidationReport:
    """Check all dataset invariants and report every violation found.

    Covers descriptor consistency (contiguous ids, unique labels, band
    count), matrix shape per band, zero diagonals, finite non-negative
    entries, exact symmetry when the tensor is flagged symmetric, and
    coordinate range. Returns an empty report when the dataset is accepted.
    """
    issues: list[str] = []
    n = len(rois)

    ids = [r.id for r in rois]
    if ids != list(range(n)):
        issues.append(f"roi ids not contiguous 0..{n - 1}: got {ids[:8]}...")
    labels = [r.label for r in rois]
    if len(set(labels)) != len(labels):
        dupes = sorted({l for l in labels if labels.count(l) > 1})
        issues.append(f"duplicate roi labels: {dupes}")
    for r in rois:
        if r.coord is not None and any(
            not math.isfinite(c) or abs(c) > 1.0 for c in r.coord
        ):
            issues.append(f"roi {r.id}: coordinate outside [-1,1]: {r.coord}")

    band_indices = [b.index for b in bands]
    if band_indices != list(range(len(bands))):
        issues.append(f"band indices not contiguous: {band_indices}")
    if len(bands) != tensor.n_bands:
        issues.append(
            f"expected {len(bands)} band matrices, tensor has {tensor.n_bands}"
        )

    for b, mat in enumerate(tensor.bands):
        rows, cols = mat.shape
        if rows != n or cols != n:
            issues.append(f"band {b}: matrix is {rows}x{cols}, expected {n}x{n}")
            continue
        bad = np.argwhere(~np.isfinite(mat))
        for i, j in bad:
            issues.append(f"band {b}: non-finite entry at ({i},{j})")
        finite = np.where(np.isfinite(mat), mat, 0.0)
        neg = np.argwhere(finite < 0)
        for i, j in neg:
            issues.append(f"band {b}: negative entry at ({i},{j}): {mat[i, j]}")
        diag = np.argwhere(np.diag(finite) != 0).ravel()
        for i in diag:
            issues.append(f"band {b}: nonzero diagonal at roi {i}")
        if tensor.symmetric:
            asym = np.argwhere(finite != finite.T)
            for i, j in asym:
                if i < j:
                    issues.append(
                        f"band {b}: asymmetry at ({i},{j}): "
                        f"{mat[i, j]} != {mat[j, i]}"
                    )

    return ValidationReport(tuple(issues))
