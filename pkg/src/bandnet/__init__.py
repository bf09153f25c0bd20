"""Compute engine for exploring multi-frequency connectivity networks.

Derives nodal graph metrics, histograms, filters, deterministic task
answers, and render-ready geometry from ROI x ROI x frequency connectivity
tensors, and exposes them through a library, a CLI, and an HTTP service.
"""

from .model import (
    ConnectivityTensor,
    FilterState,
    FrequencyBand,
    MetricTable,
    Roi,
    Subnetwork,
    ValidationReport,
    default_bands,
    default_rois,
    validate_dataset,
)
from .metrics import (
    NormalizedBandMatrix,
    clustering_coefficient,
    compute_metric_table,
    node_strength,
    normalize_weights,
)
from .queries import (
    EdgeSelection,
    Histogram,
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
from .layout import (
    ColorSpec,
    RingLayout,
    brain_projection,
    dynamic_domain,
    ring_layout,
    saturation_color,
)
from .dataio import (
    Dataset,
    SubnetworkConfig,
    generate_synthetic,
    load_dataset,
    load_subnetwork_config,
    save_dataset,
    save_subnetwork_config,
)

__version__ = "0.1.0"

__all__ = [
    "ConnectivityTensor",
    "FilterState",
    "FrequencyBand",
    "MetricTable",
    "Roi",
    "Subnetwork",
    "ValidationReport",
    "default_bands",
    "default_rois",
    "validate_dataset",
    "NormalizedBandMatrix",
    "clustering_coefficient",
    "compute_metric_table",
    "node_strength",
    "normalize_weights",
    "EdgeSelection",
    "Histogram",
    "apply_filter_state",
    "filter_edges",
    "histogram",
    "shared_count_scale",
    "task1_highest",
    "task2_strongest_per_band",
    "task3_lowest_band_for_roi",
    "task4_strongest_in_subnetworks",
    "top_percent_threshold",
    "ColorSpec",
    "RingLayout",
    "brain_projection",
    "dynamic_domain",
    "ring_layout",
    "saturation_color",
    "Dataset",
    "SubnetworkConfig",
    "generate_synthetic",
    "load_dataset",
    "load_subnetwork_config",
    "save_dataset",
    "save_subnetwork_config",
]
