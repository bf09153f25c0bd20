from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from bandnet.dataio import (
    DatasetFormatError,
    DatasetValidationError,
    SubnetworkConfig,
    generate_synthetic,
    load_dataset,
    load_subnetwork_config,
    save_dataset,
    save_subnetwork_config,
)
from bandnet.metrics import compute_metric_table
from bandnet.model import Subnetwork
from conftest import make_dataset


def _tree_bytes(root: Path) -> dict[str, bytes]:
    return {
        str(p.relative_to(root)): p.read_bytes()
        for p in sorted(root.rglob("*"))
        if p.is_file()
    }


def test_save_load_round_trip_is_exact(tmp_path):
    ds = generate_synthetic(3, n_rois=12, n_bands=3, n_communities=2)
    manifest = save_dataset(ds, tmp_path / "first")
    loaded = load_dataset(manifest)
    assert loaded.name == ds.name
    assert loaded.tensor == ds.tensor
    assert loaded.rois == ds.rois
    assert loaded.bands == ds.bands

    save_dataset(loaded, tmp_path / "second")
    assert _tree_bytes(tmp_path / "first") == _tree_bytes(tmp_path / "second")


def test_load_fixture_shapes(tmp_path, synthetic7):
    manifest = save_dataset(synthetic7, tmp_path)
    loaded = load_dataset(manifest)
    assert loaded.tensor.n_rois == 72
    assert loaded.tensor.n_bands == 5
    assert [b.name for b in loaded.bands] == ["delta", "theta", "alpha", "sigma", "beta"]
    assert loaded.has_coords


def test_ragged_matrix_row_is_a_positional_error(tmp_path):
    ds = generate_synthetic(1, n_rois=4, n_bands=1, n_communities=1)
    manifest = save_dataset(ds, tmp_path)
    matrix_file = tmp_path / json.loads(manifest.read_text())["matrix_files"][0]
    lines = matrix_file.read_text().splitlines()
    lines[2] = ",".join(lines[2].split(",")[:-1])  # drop one column from row 3
    matrix_file.write_text("\n".join(lines) + "\n")
    with pytest.raises(DatasetFormatError, match=r":3:1: row has 3 columns"):
        load_dataset(manifest)


def test_non_numeric_cell_is_a_positional_error(tmp_path):
    ds = generate_synthetic(1, n_rois=3, n_bands=1, n_communities=1)
    manifest = save_dataset(ds, tmp_path)
    matrix_file = tmp_path / json.loads(manifest.read_text())["matrix_files"][0]
    lines = matrix_file.read_text().splitlines()
    cells = lines[1].split(",")
    cells[2] = "oops"
    lines[1] = ",".join(cells)
    matrix_file.write_text("\n".join(lines) + "\n")
    with pytest.raises(DatasetFormatError, match=r":2:3: not a number"):
        load_dataset(manifest)


def test_manifest_problems_are_format_errors(tmp_path):
    path = tmp_path / "manifest.json"
    path.write_text("{not json")
    with pytest.raises(DatasetFormatError, match="invalid JSON"):
        load_dataset(path)

    path.write_text(json.dumps({"format_version": 99}))
    with pytest.raises(DatasetFormatError, match="unsupported format_version"):
        load_dataset(path)

    path.write_text(json.dumps({"format_version": 1, "name": "x"}))
    with pytest.raises(DatasetFormatError, match="missing fields"):
        load_dataset(path)


def test_invalid_dataset_raises_with_report(tmp_path):
    ds = generate_synthetic(2, n_rois=4, n_bands=1, n_communities=1)
    manifest = save_dataset(ds, tmp_path)
    matrix_file = tmp_path / json.loads(manifest.read_text())["matrix_files"][0]
    mat = np.array(
        [[float(c) for c in line.split(",")] for line in matrix_file.read_text().splitlines()]
    )
    mat[1, 1] = 0.3
    matrix_file.write_text(
        "\n".join(",".join(repr(float(v)) for v in row) for row in mat) + "\n"
    )
    with pytest.raises(DatasetValidationError) as err:
        load_dataset(manifest)
    assert any("nonzero diagonal at roi 1" in issue for issue in err.value.report)


def test_dataset_without_coords_loads(tmp_path):
    ds = make_dataset([np.zeros((3, 3))], name="bare")
    manifest = save_dataset(ds, tmp_path)
    loaded = load_dataset(manifest)
    assert not loaded.has_coords
    assert loaded.coords_array() is None


# --- synthetic generator ----------------------------------------------


def test_generator_is_deterministic_per_seed():
    a = generate_synthetic(7)
    b = generate_synthetic(7)
    assert a.tensor == b.tensor
    assert a.rois == b.rois
    assert a.communities == b.communities
    c = generate_synthetic(8)
    assert a.tensor != c.tensor


def test_generator_output_is_valid(synthetic7):
    from bandnet.model import validate_dataset

    report = validate_dataset(synthetic7.tensor, synthetic7.rois, synthetic7.bands)
    assert report.ok
    for b in range(5):
        mat = synthetic7.tensor.band(b)
        assert mat.min() >= 0.0
        assert mat.max() <= 1.0


def test_noiseless_two_communities_have_stronger_within_block():
    ds = generate_synthetic(5, n_rois=24, n_bands=2, n_communities=2, noise_level=0.0)
    membership = np.full(24, -1)
    for c, members in enumerate(ds.communities):
        membership[list(members)] = c
    for b in range(2):
        mat = ds.tensor.band(b)
        within, between = [], []
        for i in range(24):
            for j in range(i + 1, 24):
                if membership[i] >= 0 and membership[i] == membership[j]:
                    within.append(mat[i, j])
                else:
                    between.append(mat[i, j])
        assert np.mean(within) > np.mean(between)


def test_community_members_have_higher_cc_than_average(synthetic7):
    table = compute_metric_table(synthetic7.tensor, "cc")
    members = sorted(m for c in synthetic7.communities for m in c)
    assert table.values[members].mean() > table.values.mean()


def test_generator_rejects_bad_parameters():
    with pytest.raises(ValueError):
        generate_synthetic(1, n_rois=4, n_communities=5)
    with pytest.raises(ValueError):
        generate_synthetic(1, noise_level=1.5)


def test_bands_differ_from_each_other(synthetic7):
    assert not np.array_equal(synthetic7.tensor.band(0), synthetic7.tensor.band(1))


# --- subnetwork configs -----------------------------------------------


def test_subnetwork_config_round_trip(tmp_path):
    config = SubnetworkConfig(
        "groups",
        (
            Subnetwork("A", tuple(range(0, 5))),
            Subnetwork("B", tuple(range(5, 8))),
            Subnetwork("C", tuple(range(8, 13))),
        ),
    )
    path = save_subnetwork_config(config, tmp_path / "subs.json")
    loaded = load_subnetwork_config(path, n_rois=72)
    assert loaded == config


def test_study_style_five_three_five_grouping():
    config = SubnetworkConfig(
        "study",
        (
            Subnetwork("one", (1, 4, 9, 16, 25)),
            Subnetwork("two", (30, 31, 32)),
            Subnetwork("three", (50, 51, 52, 53, 54)),
        ),
    )
    sizes = [len(s.members) for s in config.subnetworks]
    assert sizes == [5, 3, 5]
    assert sum(sizes) == 13


def test_overlapping_config_rejected():
    with pytest.raises(ValueError, match="overlap"):
        SubnetworkConfig(
            "bad", (Subnetwork("A", (0, 1)), Subnetwork("B", (1, 2)))
        )


def test_load_rejects_members_beyond_dataset(tmp_path):
    config = SubnetworkConfig("big", (Subnetwork("A", (0, 71)),))
    path = save_subnetwork_config(config, tmp_path / "subs.json")
    load_subnetwork_config(path, n_rois=72)
    with pytest.raises(ValueError, match="unknown ROI"):
        load_subnetwork_config(path, n_rois=10)
