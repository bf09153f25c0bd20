from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from bandnet.cli import main
from bandnet.dataio import SubnetworkConfig, save_dataset, save_subnetwork_config
from bandnet.metrics import compute_metric_table
from bandnet.model import Subnetwork
from bandnet.queries import task1_highest, task3_lowest_band_for_roi


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def manifest(tmp_path, synthetic7) -> Path:
    return save_dataset(synthetic7, tmp_path / "ds")


def _tree_bytes(root: Path) -> dict[str, bytes]:
    return {
        str(p.relative_to(root)): p.read_bytes()
        for p in sorted(root.rglob("*"))
        if p.is_file()
    }


def test_validate_ok(runner, manifest):
    result = runner.invoke(main, ["validate", str(manifest)])
    assert result.exit_code == 0
    assert result.output.startswith("ok: synthetic-7 (72 rois, 5 bands")


def test_validate_broken_dataset_exits_nonzero(runner, tmp_path, manifest):
    matrix_file = manifest.parent / json.loads(manifest.read_text())["matrix_files"][0]
    lines = matrix_file.read_text().splitlines()
    cells = lines[0].split(",")
    cells[0] = "0.5"  # nonzero diagonal
    lines[0] = ",".join(cells)
    matrix_file.write_text("\n".join(lines) + "\n")
    result = runner.invoke(main, ["validate", str(manifest)])
    assert result.exit_code == 1
    assert "nonzero diagonal at roi 0" in result.output


def test_validate_missing_manifest_is_usage_error(runner, tmp_path):
    result = runner.invoke(main, ["validate", str(tmp_path / "nope.json")])
    assert result.exit_code == 2


def test_metrics_output_is_byte_stable(runner, manifest, synthetic7):
    args = ["metrics", str(manifest), "--metric", "cc"]
    first = runner.invoke(main, args)
    second = runner.invoke(main, args)
    assert first.exit_code == 0
    assert first.output == second.output

    lines = first.output.splitlines()
    assert lines[0] == "roi,delta,theta,alpha,sigma,beta"
    assert len(lines) == 73


def test_metrics_exact_round_trips(runner, manifest, synthetic7, tmp_path):
    out = tmp_path / "table.csv"
    result = runner.invoke(
        main, ["metrics", str(manifest), "--metric", "cc", "--exact", "--out", str(out)]
    )
    assert result.exit_code == 0
    table = compute_metric_table(synthetic7.tensor, "cc")
    rows = out.read_text().splitlines()[1:]
    parsed = np.array([[float(c) for c in row.split(",")[1:]] for row in rows])
    assert np.array_equal(parsed, table.values)


def test_oracle_task1_matches_library(runner, manifest, synthetic7):
    result = runner.invoke(main, ["oracle", str(manifest), "--task", "1", "--exact"])
    assert result.exit_code == 0
    band, roi, value = task1_highest(compute_metric_table(synthetic7.tensor, "cc"))
    band_name = synthetic7.bands[band].name
    assert result.output.strip() == f"band={band_name} roi={roi} value={value!r}"


def test_oracle_task2_prints_one_line_per_band(runner, manifest):
    result = runner.invoke(main, ["oracle", str(manifest), "--task", "2"])
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert len(lines) == 5
    assert all(line.startswith("band=") for line in lines)


def test_oracle_task3_matches_library(runner, manifest, synthetic7):
    result = runner.invoke(
        main, ["oracle", str(manifest), "--task", "3", "--roi", "21", "--exact"]
    )
    assert result.exit_code == 0
    band, value = task3_lowest_band_for_roi(
        compute_metric_table(synthetic7.tensor, "cc"), 21
    )
    band_name = synthetic7.bands[band].name
    assert result.output.strip() == f"band={band_name} value={value!r}"


def test_oracle_task3_requires_roi(runner, manifest):
    result = runner.invoke(main, ["oracle", str(manifest), "--task", "3"])
    assert result.exit_code == 2


def test_oracle_task4_with_subnetworks_file(runner, manifest, tmp_path):
    config = SubnetworkConfig(
        "study",
        (
            Subnetwork("one", (1, 4, 9, 16, 25)),
            Subnetwork("two", (30, 31, 32)),
            Subnetwork("three", (50, 51, 52, 53, 54)),
        ),
    )
    subs_path = save_subnetwork_config(config, tmp_path / "subs.json")
    result = runner.invoke(
        main,
        ["oracle", str(manifest), "--task", "4", "--subnetworks", str(subs_path)],
    )
    assert result.exit_code == 0
    assert len(result.output.strip().splitlines()) == 5

    result = runner.invoke(main, ["oracle", str(manifest), "--task", "4"])
    assert result.exit_code == 2


def test_gen_is_deterministic(runner, tmp_path):
    base = ["gen", "--seed", "7", "--n-rois", "24", "--bands", "3", "--communities", "2"]
    first = runner.invoke(main, base + ["--out", str(tmp_path / "a")])
    second = runner.invoke(main, base + ["--out", str(tmp_path / "b")])
    assert first.exit_code == 0 and second.exit_code == 0
    assert _tree_bytes(tmp_path / "a") == _tree_bytes(tmp_path / "b")


def test_gen_output_validates(runner, tmp_path):
    result = runner.invoke(main, ["gen", "--seed", "3", "--out", str(tmp_path)])
    assert result.exit_code == 0
    manifest = result.output.strip()
    check = runner.invoke(main, ["validate", manifest])
    assert check.exit_code == 0


def test_usage_error_exit_code(runner):
    result = runner.invoke(main, ["oracle"])
    assert result.exit_code == 2
