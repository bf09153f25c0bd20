"""Dataset files, subnetwork persistence, and the synthetic generator.

On-disk layout is deliberately plain so numerical pipelines can produce it:
a JSON manifest pointing at one comma-separated text matrix per band, a
label file with one ROI label per line, and an optional x,y,z coordinate
file. All formats carry format_version (currently 1). Strengths are
serialized with full round-trip precision so save/load is exact.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .model import (
    ConnectivityTensor,
    FrequencyBand,
    Roi,
    Subnetwork,
    ValidationReport,
    check_subnetworks,
    default_bands,
    validate_dataset,
)

FORMAT_VERSION = 1


class DatasetFormatError(ValueError):
    """Unparseable dataset file; message carries file, line, and column."""


class DatasetValidationError(ValueError):
    """Parsed dataset violates invariants; .report lists every issue."""

    def __init__(self, report: ValidationReport):
        self.report = report
        preview = "; ".join(report.issues[:5])
        more = f" (+{len(report) - 5} more)" if len(report) > 5 else ""
        super().__init__(f"dataset failed validation: {preview}{more}")


@dataclass(frozen=True)
class DatasetManifest:
    """Names and file references for one on-disk dataset."""

    name: str
    n_rois: int
    band_names: tuple[str, ...]
    symmetric: bool
    matrix_files: tuple[str, ...]
    roi_labels_file: str
    coords_file: Optional[str] = None


@dataclass(frozen=True)
class Dataset:
    """A validated in-memory dataset."""

    name: str
    tensor: ConnectivityTensor
    rois: tuple[Roi, ...]
    bands: tuple[FrequencyBand, ...]
    communities: Optional[tuple[tuple[int, ...], ...]] = None

    @property
    def has_coords(self) -> bool:
        return bool(self.rois) and all(r.coord is not None for r in self.rois)

    def coords_array(self) -> Optional[np.ndarray]:
        if not self.has_coords:
            return None
        return np.array([r.coord for r in self.rois], dtype=float)


@dataclass(frozen=True)
class SubnetworkConfig:
    """A named, disjoint set of subnetworks that can be saved and re-loaded."""

    name: str
    subnetworks: tuple[Subnetwork, ...]

    def __post_init__(self):
        object.__setattr__(self, "subnetworks", tuple(self.subnetworks))
        seen: dict[int, str] = {}
        for sub in self.subnetworks:
            for m in sub.members:
                if m in seen:
                    raise ValueError(
                        f"subnetworks {seen[m]!r} and {sub.name!r} overlap at roi {m}"
                    )
                seen[m] = sub.name


def _parse_matrix_file(path: Path) -> np.ndarray:
    rows: list[list[float]] = []
    n_cols: Optional[int] = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            cells = stripped.split(",")
            if n_cols is None:
                n_cols = len(cells)
            elif len(cells) != n_cols:
                raise DatasetFormatError(
                    f"{path}:{lineno}:1: row has {len(cells)} columns, expected {n_cols}"
                )
            row = []
            for col, cell in enumerate(cells, start=1):
                try:
                    row.append(float(cell))
                except ValueError:
                    raise DatasetFormatError(
                        f"{path}:{lineno}:{col}: not a number: {cell.strip()!r}"
                    ) from None
            rows.append(row)
    if not rows:
        raise DatasetFormatError(f"{path}:1:1: empty matrix file")
    return np.array(rows, dtype=float)


def _parse_coords_file(path: Path) -> list[tuple[float, float, float]]:
    coords: list[tuple[float, float, float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            cells = stripped.split(",")
            if len(cells) != 3:
                raise DatasetFormatError(
                    f"{path}:{lineno}:1: expected 3 coordinates, got {len(cells)}"
                )
            try:
                coords.append(tuple(float(c) for c in cells))
            except ValueError:
                raise DatasetFormatError(
                    f"{path}:{lineno}:1: not a coordinate row: {stripped!r}"
                ) from None
    return coords


def read_manifest(manifest_path) -> DatasetManifest:
    path = Path(manifest_path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(
            f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}"
        ) from None
    version = raw.get("format_version")
    if version != FORMAT_VERSION:
        raise DatasetFormatError(
            f"{path}:1:1: unsupported format_version {version!r}, expected {FORMAT_VERSION}"
        )
    missing = [
        key
        for key in ("name", "n_rois", "band_names", "symmetric", "matrix_files", "roi_labels_file")
        if key not in raw
    ]
    if missing:
        raise DatasetFormatError(f"{path}:1:1: manifest missing fields: {missing}")
    if len(raw["matrix_files"]) != len(raw["band_names"]):
        raise DatasetFormatError(
            f"{path}:1:1: {len(raw['band_names'])} band names but "
            f"{len(raw['matrix_files'])} matrix files"
        )
    return DatasetManifest(
        name=str(raw["name"]),
        n_rois=int(raw["n_rois"]),
        band_names=tuple(str(b) for b in raw["band_names"]),
        symmetric=bool(raw["symmetric"]),
        matrix_files=tuple(str(f) for f in raw["matrix_files"]),
        roi_labels_file=str(raw["roi_labels_file"]),
        coords_file=str(raw["coords_file"]) if raw.get("coords_file") else None,
    )


def load_dataset(manifest_path) -> Dataset:
    """Load and validate a dataset from its manifest.

    Raises DatasetFormatError with a file:line:column position on parse
    failure and DatasetValidationError (carrying the full report) when the
    parsed data violates invariants.
    """
    path = Path(manifest_path)
    manifest = read_manifest(path)
    base = path.parent

    matrices = [_parse_matrix_file(base / f) for f in manifest.matrix_files]

    labels_path = base / manifest.roi_labels_file
    labels = [
        line.strip()
        for line in labels_path.read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    if len(labels) != manifest.n_rois:
        raise DatasetFormatError(
            f"{labels_path}:1:1: {len(labels)} labels, manifest says {manifest.n_rois}"
        )

    coords = None
    if manifest.coords_file:
        coords = _parse_coords_file(base / manifest.coords_file)
        if len(coords) != manifest.n_rois:
            raise DatasetFormatError(
                f"{base / manifest.coords_file}:1:1: "
                f"{len(coords)} coordinate rows, manifest says {manifest.n_rois}"
            )

    rois = tuple(
        Roi(i, labels[i], coords[i] if coords else None) for i in range(manifest.n_rois)
    )
    bands = tuple(FrequencyBand(i, n) for i, n in enumerate(manifest.band_names))
    tensor = ConnectivityTensor(matrices, symmetric=manifest.symmetric)

    report = validate_dataset(tensor, rois, bands)
    if not report.ok:
        raise DatasetValidationError(report)
    return Dataset(manifest.name, tensor, rois, bands)


def _safe_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_-]+", "_", name)


def save_dataset(dataset: Dataset, out_dir, name: Optional[str] = None) -> Path:
    """Write a dataset to out_dir; returns the manifest path.

    Every strength is written with full round-trip precision, so loading
    the saved tree reproduces the tensor bit for bit.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ds_name = name or dataset.name

    matrix_files = []
    for b, band in enumerate(dataset.bands):
        fname = f"band_{b}_{_safe_name(band.name)}.csv"
        matrix_files.append(fname)
        mat = dataset.tensor.band(b)
        with open(out / fname, "w", encoding="utf-8") as fh:
            for row in mat:
                fh.write(",".join(repr(float(v)) for v in row))
                fh.write("\n")

    labels_file = "rois.txt"
    with open(out / labels_file, "w", encoding="utf-8") as fh:
        for roi in dataset.rois:
            fh.write(roi.label + "\n")

    coords_file = None
    if dataset.has_coords:
        coords_file = "coords.csv"
        with open(out / coords_file, "w", encoding="utf-8") as fh:
            for roi in dataset.rois:
                fh.write(",".join(repr(float(c)) for c in roi.coord) + "\n")

    manifest = {
        "format_version": FORMAT_VERSION,
        "name": ds_name,
        "n_rois": len(dataset.rois),
        "band_names": [b.name for b in dataset.bands],
        "symmetric": dataset.tensor.symmetric,
        "matrix_files": matrix_files,
        "roi_labels_file": labels_file,
        "coords_file": coords_file,
    }
    manifest_path = out / "manifest.json"
    manifest_path.write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return manifest_path


def generate_synthetic(
    seed: int,
    n_rois: int = 72,
    n_bands: int = 5,
    n_communities: int = 4,
    noise_level: float = 0.1,
    name: Optional[str] = None,
) -> Dataset:
    """Deterministic synthetic dataset with planted community structure.

    Communities occupy contiguous id blocks covering roughly
    n_communities/(n_communities+1) of the ROIs; the rest stay background.
    Within-community strengths are drawn from a higher band than all other
    pairs, each band perturbs the assignment slightly so bands differ, and
    noise_level blends toward unstructured uniform strengths. Matrices are
    symmetric with zero diagonal and strengths in [0, 1].
    """
    if n_communities < 0 or n_communities > n_rois:
        raise ValueError("n_communities must be in 0..n_rois")
    if not 0.0 <= noise_level <= 1.0:
        raise ValueError("noise_level must be in [0, 1]")
    rng = np.random.default_rng(seed)

    # Anatomy stand-in: points in an axis-scaled ball, within [-1, 1]^3.
    direction = rng.normal(size=(n_rois, 3))
    direction /= np.maximum(np.linalg.norm(direction, axis=1, keepdims=True), 1e-12)
    radius = rng.uniform(0.0, 1.0, n_rois) ** (1.0 / 3.0)
    coords = direction * radius[:, None] * np.array([0.9, 1.0, 0.75])

    base = np.full(n_rois, -1, dtype=int)
    if n_communities > 0:
        size = max(1, n_rois // (n_communities + 1))
        for c in range(n_communities):
            base[c * size : (c + 1) * size] = c

    matrices = []
    for _ in range(n_bands):
        flip = rng.random(n_rois) < 0.08
        reassigned = rng.integers(-1, max(n_communities, 1), size=n_rois)
        assign = np.where(flip & (base >= 0), reassigned, base)

        hi = rng.uniform(0.6, 1.0, (n_rois, n_rois))
        lo = rng.uniform(0.05, 0.35, (n_rois, n_rois))
        noise = rng.uniform(0.0, 1.0, (n_rois, n_rois))
        drop = rng.random((n_rois, n_rois)) < 0.05

        within = (assign[:, None] == assign[None, :]) & (assign[:, None] >= 0)
        weights = (1.0 - noise_level) * np.where(within, hi, lo) + noise_level * noise
        weights[~within & drop] = 0.0

        upper = np.triu(weights, k=1)
        matrices.append(upper + upper.T)

    communities = tuple(
        tuple(int(i) for i in np.nonzero(base == c)[0]) for c in range(n_communities)
    )
    return Dataset(
        name=name or f"synthetic-{seed}",
        tensor=ConnectivityTensor(matrices, symmetric=True),
        rois=tuple(
            Roi(i, f"ROI {i}", tuple(float(c) for c in coords[i])) for i in range(n_rois)
        ),
        bands=default_bands(n_bands),
        communities=communities,
    )


def save_subnetwork_config(config: SubnetworkConfig, path) -> Path:
    """Persist a subnetwork config as JSON."""
    out = Path(path)
    payload = {
        "format_version": FORMAT_VERSION,
        "name": config.name,
        "subnetworks": [
            {"name": s.name, "members": list(s.members)} for s in config.subnetworks
        ],
    }
    out.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return out


def load_subnetwork_config(path, n_rois: Optional[int] = None) -> SubnetworkConfig:
    """Load a subnetwork config, validating against the dataset's N if given."""
    p = Path(path)
    try:
        raw = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(
            f"{p}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}"
        ) from None
    if raw.get("format_version") != FORMAT_VERSION:
        raise DatasetFormatError(
            f"{p}:1:1: unsupported format_version {raw.get('format_version')!r}"
        )
    config = SubnetworkConfig(
        name=str(raw.get("name", p.stem)),
        subnetworks=tuple(
            Subnetwork(str(s["name"]), tuple(int(m) for m in s["members"]))
            for s in raw.get("subnetworks", [])
        ),
    )
    if n_rois is not None:
        check_subnetworks(config.subnetworks, n_rois)
    return config
