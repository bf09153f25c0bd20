from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bandnet.metrics import compute_metric_table
from bandnet.model import ConnectivityTensor, FilterState, MetricTable, Subnetwork
from bandnet.queries import (
    apply_filter_state,
    filter_edges,
    histogram,
    shared_count_scale,
    task1_highest,
    task2_strongest_per_band,
    task3_lowest_band_for_roi,
    task4_strongest_in_subnetworks,
    top_percent_threshold,
)
from conftest import random_symmetric
from oracles import (
    bin_by_scan,
    edges_pair_scan,
    highest_cell_scan,
    lowest_band_scan,
    strongest_per_band_scan,
    top_percent_by_sort,
)


# --- histograms -------------------------------------------------------


def test_histogram_closes_last_bin():
    h = histogram([0, 0.25, 0.5, 0.75, 1], 4, (0.0, 1.0))
    assert h.counts == (1, 1, 1, 2)
    assert h.bin_edges == (0.0, 0.25, 0.5, 0.75, 1.0)


def test_histogram_empty_values():
    h = histogram([], 3, (0.0, 1.0))
    assert h.counts == (0, 0, 0)


def test_histogram_excludes_out_of_domain():
    h = histogram([-0.1, 0.5, 1.1], 2, (0.0, 1.0))
    assert sum(h.counts) == 1


def test_histogram_counts_match_scan_and_binomial_bound():
    rng = np.random.default_rng(17)
    values = rng.random(5000)
    h = histogram(values, 20, (0.0, 1.0))
    assert sum(h.counts) == 5000
    assert list(h.counts) == bin_by_scan(values, h.bin_edges)
    sigma = math.sqrt(5000 * 0.05 * 0.95)
    assert all(abs(c - 250) <= 5 * sigma for c in h.counts)


def test_histogram_invalid_spec():
    with pytest.raises(ValueError, match="invalid histogram spec"):
        histogram([1.0], 0, (0.0, 1.0))
    with pytest.raises(ValueError, match="invalid histogram spec"):
        histogram([1.0], 4, (1.0, 1.0))


def test_shared_count_scale():
    h1 = histogram([0.1, 0.6], 2, (0.0, 1.0))  # counts (1, 1)
    h2 = histogram([0.1, 0.2, 0.3, 0.4, 0.45], 2, (0.0, 1.0))  # counts (5, 0)
    assert shared_count_scale([h1, h2]) == 5
    assert shared_count_scale([histogram([], 2, (0.0, 1.0))]) == 0
    with pytest.raises(ValueError):
        shared_count_scale([])


def test_shared_count_scale_equals_flattened_max(synthetic7):
    table = compute_metric_table(synthetic7.tensor, "cc")
    lo, hi = float(table.values.min()), float(table.values.max())
    hists = [histogram(table.values[:, b], 20, (lo, hi)) for b in range(5)]
    flattened = [c for h in hists for c in h.counts]
    assert shared_count_scale(hists) == max(flattened)


# --- top percent ------------------------------------------------------


def test_top_percent_nearest_rank():
    values = list(range(1, 11))
    assert top_percent_threshold(values, 20) == 9
    assert {v for v in values if v >= 9} == {9, 10}


def test_top_percent_hundred_is_min():
    values = [3.0, 1.0, 2.0]
    assert top_percent_threshold(values, 100) == 1.0


def test_top_percent_errors():
    with pytest.raises(ValueError, match="no values"):
        top_percent_threshold([], 10)
    with pytest.raises(ValueError):
        top_percent_threshold([1.0], 0)
    with pytest.raises(ValueError):
        top_percent_threshold([1.0], 101)


def test_top_percent_on_metric_table_matches_sort_oracle(synthetic7):
    table = compute_metric_table(synthetic7.tensor, "cc")
    values = [float(v) for v in table.values.ravel()]
    threshold = top_percent_threshold(values, 5)
    expected_threshold, expected_sel = top_percent_by_sort(values, 5)
    assert math.ceil(0.05 * len(values)) == 18
    assert threshold == expected_threshold
    assert sorted(v for v in values if v >= threshold) == sorted(expected_sel)


@settings(max_examples=50, deadline=None)
@given(
    values=st.lists(st.floats(0, 100, allow_nan=False), min_size=1, max_size=60),
    p1=st.floats(0.5, 100),
    p2=st.floats(0.5, 100),
)
def test_top_percent_threshold_antitone_in_percent(values, p1, p2):
    lo_p, hi_p = min(p1, p2), max(p1, p2)
    assert top_percent_threshold(values, lo_p) >= top_percent_threshold(values, hi_p)
    thr = top_percent_threshold(values, hi_p)
    selected = [v for v in values if v >= thr]
    assert len(selected) >= math.ceil(hi_p / 100 * len(values))


# --- edge filtering ---------------------------------------------------


def _triangle_tensor():
    mat = np.array([[0, 0.2, 0.9], [0.2, 0, 0.5], [0.9, 0.5, 0]])
    return ConnectivityTensor([mat], symmetric=True)


def test_filter_edges_range():
    sel = filter_edges(_triangle_tensor(), 0, (0.4, 1.0))
    assert {(i, j) for i, j, _ in sel.edges} == {(0, 2), (1, 2)}
    assert {w for _, _, w in sel.edges} == {0.9, 0.5}


def test_filter_edges_subset_requires_both_endpoints():
    rng = np.random.default_rng(2)
    mat = random_symmetric(rng, 4)
    sel = filter_edges(ConnectivityTensor([mat]), 0, (0.0, 1.0), roi_subset={0, 1})
    assert [(i, j) for i, j, _ in sel.edges] == [(0, 1)]


def test_filter_edges_never_returns_zeros():
    mat = np.zeros((4, 4))
    mat[0, 1] = mat[1, 0] = 0.7
    sel = filter_edges(ConnectivityTensor([mat]), 0, (0.0, 1.0))
    assert sel.edges == ((0, 1, 0.7),)


def test_filter_edges_asymmetric_returns_both_directions():
    mat = np.zeros((3, 3))
    mat[0, 1] = 0.4
    mat[1, 0] = 0.6
    sel = filter_edges(ConnectivityTensor([mat], symmetric=False), 0, (0.0, 1.0))
    assert sel.edges == ((0, 1, 0.4), (1, 0, 0.6))


def test_filter_edges_invalid_inputs():
    with pytest.raises(ValueError, match="invalid band"):
        filter_edges(_triangle_tensor(), 5, (0.0, 1.0))
    with pytest.raises(ValueError, match="invalid strength range"):
        filter_edges(_triangle_tensor(), 0, (1.0, 0.0))


def test_filter_edges_top_percent_matches_pair_scan(synthetic7):
    tensor = synthetic7.tensor
    band = 2
    mat = tensor.band(band)
    positive = [float(w) for w in mat[np.triu_indices(72, k=1)] if w > 0]
    threshold = top_percent_threshold(positive, 5)
    sel = filter_edges(tensor, band, (threshold, float(mat.max())))
    expected = edges_pair_scan(mat, True, threshold, float(mat.max()))
    assert list(sel.edges) == expected


def test_filter_edges_antitone_in_range_width(synthetic7):
    tensor = synthetic7.tensor
    wide = filter_edges(tensor, 0, (0.2, 0.9))
    narrow = filter_edges(tensor, 0, (0.3, 0.8))
    assert set(narrow.edges) <= set(wide.edges)


# --- task oracles -----------------------------------------------------


def test_task1_unique_max():
    values = np.full((72, 5), 0.1)
    values[41, 3] = 0.93
    table = MetricTable("cc", values)
    assert task1_highest(table) == (3, 41, 0.93)


def test_task1_tie_breaks_to_lowest_band_then_roi():
    table = MetricTable("cc", np.full((4, 3), 0.5))
    assert task1_highest(table) == (0, 0, 0.5)


def test_task1_matches_exhaustive_scan(synthetic7):
    table = compute_metric_table(synthetic7.tensor, "cc")
    assert task1_highest(table) == highest_cell_scan(table.values)


def test_task2_single_positive_edge():
    mat = np.zeros((10, 10))
    mat[4, 9] = mat[9, 4] = 0.7
    tensor = ConnectivityTensor([mat], symmetric=True)
    assert task2_strongest_per_band(tensor) == [(4, 9, 0.7)]


def test_task2_all_zero_band_flagged_no_connection():
    tensor = ConnectivityTensor([np.zeros((5, 5))], symmetric=True)
    assert task2_strongest_per_band(tensor) == [None]


def test_task2_rejects_tiny_subset():
    with pytest.raises(ValueError, match="at least 2"):
        task2_strongest_per_band(_triangle_tensor(), roi_subset={1})


def test_task2_matches_pair_scan_on_subset(synthetic7):
    tensor = synthetic7.tensor
    subset = set(range(0, 5)) | set(range(20, 23)) | set(range(40, 45))
    assert len(subset) == 13
    got = task2_strongest_per_band(tensor, subset)
    expected = strongest_per_band_scan(tensor.bands, True, subset)
    assert got == expected


def test_task3_tie_breaks_to_lower_band():
    table = MetricTable("cc", np.array([[0.3, 0.1, 0.5, 0.1, 0.9]]))
    assert task3_lowest_band_for_roi(table, 0) == (1, 0.1)


def test_task3_constant_row():
    table = MetricTable("cc", np.full((2, 5), 0.4))
    assert task3_lowest_band_for_roi(table, 1) == (0, 0.4)


def test_task3_invalid_roi():
    table = MetricTable("cc", np.zeros((3, 2)))
    with pytest.raises(ValueError, match="invalid roi"):
        task3_lowest_band_for_roi(table, 3)


def test_task3_matches_scan(synthetic7):
    table = compute_metric_table(synthetic7.tensor, "cc")
    assert task3_lowest_band_for_roi(table, 21) == lowest_band_scan(table.values[21])


def test_task4_uses_union_of_subnetworks(synthetic7):
    subs = (
        Subnetwork("front", tuple(range(0, 5))),
        Subnetwork("mid", tuple(range(20, 23))),
        Subnetwork("back", tuple(range(40, 45))),
    )
    union = {m for s in subs for m in s.members}
    got = task4_strongest_in_subnetworks(synthetic7.tensor, subs)
    assert got == task2_strongest_per_band(synthetic7.tensor, union)


# --- filter state -----------------------------------------------------


def test_apply_filter_state_range():
    table = MetricTable("cc", np.array([[0.2], [0.6], [0.8]]))
    state = FilterState(metric_ranges=((0.5, 1.0),))
    assert apply_filter_state(table, state) == (frozenset({1, 2}),)


def test_apply_filter_state_no_ranges_keeps_everything():
    table = MetricTable("cc", np.random.default_rng(0).random((6, 3)))
    active = apply_filter_state(table, FilterState())
    assert active == (frozenset(range(6)),) * 3


def test_apply_filter_state_top_percent_button(synthetic7):
    table = compute_metric_table(synthetic7.tensor, "cc")
    band0 = [float(v) for v in table.values[:, 0]]
    threshold = top_percent_threshold(band0, 10)
    state = FilterState(
        metric_ranges=((threshold, float(max(band0))), None, None, None, None)
    )
    active = apply_filter_state(table, state)
    expected = {i for i, v in enumerate(band0) if v >= threshold}
    assert active[0] == frozenset(expected)


def test_apply_filter_state_antitone_in_range_width():
    rng = np.random.default_rng(8)
    table = MetricTable("cc", rng.random((20, 2)))
    wide = FilterState(metric_ranges=((0.1, 0.9), (0.1, 0.9)))
    narrow = FilterState(metric_ranges=((0.2, 0.8), (0.2, 0.8)))
    active_wide = apply_filter_state(table, wide)
    active_narrow = apply_filter_state(table, narrow)
    for b in range(2):
        assert active_narrow[b] <= active_wide[b]


def test_repeated_calls_are_identical(synthetic7):
    tensor = synthetic7.tensor
    table = compute_metric_table(tensor, "cc")
    assert task1_highest(table) == task1_highest(table)
    assert task2_strongest_per_band(tensor) == task2_strongest_per_band(tensor)
    sel1 = filter_edges(tensor, 1, (0.3, 0.7))
    sel2 = filter_edges(tensor, 1, (0.3, 0.7))
    assert sel1 == sel2
