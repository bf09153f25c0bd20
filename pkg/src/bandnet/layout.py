"""Server-side geometry and color mapping for both dashboard encodings.

Everything here is pure: the ring layout depends only on counts, gaps,
radii, and the active subnetworks, never on data values, and the color
mapping is a monotone value-to-darkness ramp at a fixed hue per band.
Angles are radians measured clockwise from 12 o'clock; points are (x, y)
with y up on circles of unit-free radius, so any client renders the same
picture after its own viewport transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .model import Subnetwork

TWO_PI = 2.0 * math.pi

# Hue per band in degrees: red, green, blue, orange, purple.
DEFAULT_BAND_HUES = (0.0, 120.0, 240.0, 30.0, 270.0)

DEFAULT_GAP_ANGLE = math.radians(0.2)
DEFAULT_R_INNER = 0.55
DEFAULT_RING_THICKNESS = 0.075

BRAIN_VIEWS = ("superior", "lateral", "posterior")


@dataclass(frozen=True)
class Arc:
    """One ring segment: angular span and radial band."""

    start_angle: float
    end_angle: float
    inner_radius: float
    outer_radius: float


@dataclass(frozen=True)
class SubnetworkArc:
    """Outer marker arc spanning a subnetwork's contiguous members."""

    name: str
    start_angle: float
    end_angle: float
    radius: float


@dataclass(frozen=True)
class RingLayout:
    """Arcs for B concentric rings of N segments plus chord anchor points.

    order holds roi ids in angular slot order; arcs[band][roi] is indexed
    by roi id. Chord endpoints for an edge sit at the angular midpoints of
    the two ROIs' segments on the innermost circle.
    """

    n_rois: int
    n_bands: int
    gap_angle: float
    r_inner: float
    ring_thickness: float
    order: tuple[int, ...]
    arcs: tuple[tuple[Arc, ...], ...]
    subnetwork_arcs: tuple[SubnetworkArc, ...]
    slot_of: tuple[int, ...] = field(repr=False, default=())

    def segment(self, band: int, roi: int) -> Arc:
        return self.arcs[band][roi]

    def anchor_angle(self, roi: int) -> float:
        """Angular midpoint of the roi's segment."""
        arc = self.arcs[0][roi]
        return (arc.start_angle + arc.end_angle) / 2.0

    def chord_point(self, roi: int) -> tuple[float, float]:
        """Chord endpoint for the roi on the innermost circle."""
        theta = self.anchor_angle(roi)
        return (self.r_inner * math.sin(theta), self.r_inner * math.cos(theta))

    def chord_endpoints(
        self, i: int, j: int
    ) -> tuple[tuple[float, float], tuple[float, float]]:
        """Both endpoints of the chord for edge (i, j), in argument order."""
        return (self.chord_point(i), self.chord_point(j))


def _ring_order(n_rois: int, subnetworks: Sequence[Subnetwork]) -> tuple[int, ...]:
    """Roi ids in angular order: subnetwork members contiguous, rest by id."""
    if not subnetworks:
        return tuple(range(n_rois))
    grouped: list[int] = []
    taken: set[int] = set()
    for sub in subnetworks:
        grouped.extend(sub.members)
        taken.update(sub.members)
    rest = [i for i in range(n_rois) if i not in taken]
    return tuple(grouped + rest)


def ring_layout(
    n_rois: int,
    n_bands: int,
    gap_angle: float = DEFAULT_GAP_ANGLE,
    r_inner: float = DEFAULT_R_INNER,
    ring_thickness: float = DEFAULT_RING_THICKNESS,
    subnetworks: Sequence[Subnetwork] = (),
    subnetwork_margin: float = 0.02,
) -> RingLayout:
    """Lay out B concentric rings of N equal segments.

    Slot k spans [k*(2*pi/n) + gap/2, (k+1)*(2*pi/n) - gap/2); band b
    occupies radii [r_inner + b*t, r_inner + (b+1)*t). With subnetworks
    active, their members are reordered into contiguous runs and each
    group gets an outer arc just beyond the outermost ring.
    """
    if n_rois < 1:
        raise ValueError("need at least one roi")
    if n_bands < 1:
        raise ValueError("need at least one band")
    if gap_angle < 0 or gap_angle * n_rois >= TWO_PI:
        raise ValueError(
            f"infeasible gap: {n_rois} gaps of {gap_angle} rad exceed the circle"
        )
    order = _ring_order(n_rois, subnetworks)
    slot_of = [0] * n_rois
    for slot, roi in enumerate(order):
        slot_of[roi] = slot

    slot_width = TWO_PI / n_rois
    half_gap = gap_angle / 2.0
    arcs: list[tuple[Arc, ...]] = []
    for b in range(n_bands):
        r0 = r_inner + b * ring_thickness
        r1 = r_inner + (b + 1) * ring_thickness
        band_arcs = []
        for roi in range(n_rois):
            k = slot_of[roi]
            band_arcs.append(
                Arc(k * slot_width + half_gap, (k + 1) * slot_width - half_gap, r0, r1)
            )
        arcs.append(tuple(band_arcs))

    outer_r = r_inner + n_bands * ring_thickness + subnetwork_margin
    sub_arcs = []
    for sub in subnetworks:
        slots = [slot_of[m] for m in sub.members]
        first, last = min(slots), max(slots)
        sub_arcs.append(
            SubnetworkArc(
                sub.name,
                first * slot_width + half_gap,
                (last + 1) * slot_width - half_gap,
                outer_r,
            )
        )

    return RingLayout(
        n_rois=n_rois,
        n_bands=n_bands,
        gap_angle=gap_angle,
        r_inner=r_inner,
        ring_thickness=ring_thickness,
        order=order,
        arcs=tuple(arcs),
        subnetwork_arcs=tuple(sub_arcs),
        slot_of=tuple(slot_of),
    )


@dataclass(frozen=True)
class ColorSpec:
    """Hue-per-band color scale mapping values to darkness.

    mode "log" stretches low values and requires a strictly positive
    domain. A degenerate domain (vmin == vmax) maps everything to the
    darkest endpoint.
    """

    band_hues: tuple[float, ...] = DEFAULT_BAND_HUES
    mode: str = "linear"
    vmin: float = 0.0
    vmax: float = 1.0
    saturation: float = 0.75
    light_lightness: float = 0.92
    dark_lightness: float = 0.22

    def __post_init__(self):
        if self.mode not in ("linear", "log"):
            raise ValueError(f"unknown color mode {self.mode!r}")
        if self.vmin > self.vmax:
            raise ValueError(f"color domain has vmin > vmax: [{self.vmin},{self.vmax}]")
        if self.mode == "log" and self.vmin <= 0:
            raise ValueError("log scale requires positive domain")
        if not self.dark_lightness < self.light_lightness:
            raise ValueError("dark endpoint must be darker than light endpoint")


def saturation_color(value: float, spec: ColorSpec, band: int) -> tuple[float, float, float]:
    """Map a value to (hue, saturation, lightness); darker means larger.

    Values outside the domain are clamped. Hue is fixed by the band,
    saturation is constant, and lightness falls affinely from the light
    endpoint at vmin to the dark endpoint at vmax (log-scaled when the
    spec says so).
    """
    hue = spec.band_hues[band % len(spec.band_hues)]
    v = min(max(float(value), spec.vmin), spec.vmax)
    if spec.vmin == spec.vmax:
        t = 1.0
    elif spec.mode == "log":
        t = (math.log(v) - math.log(spec.vmin)) / (
            math.log(spec.vmax) - math.log(spec.vmin)
        )
    else:
        t = (v - spec.vmin) / (spec.vmax - spec.vmin)
    lightness = spec.light_lightness * (1.0 - t) + spec.dark_lightness * t
    return (hue, spec.saturation, lightness)


def hsl_css(color: tuple[float, float, float]) -> str:
    """CSS hsl() string for a (hue, saturation, lightness) triple."""
    h, s, l = color
    return f"hsl({h:g}, {s * 100:.1f}%, {l * 100:.1f}%)"


def dynamic_domain(values) -> tuple[float, float]:
    """Min/max of the values currently in scope, for re-stretched scales."""
    arr = np.asarray(list(values), dtype=float)
    if arr.size == 0:
        raise ValueError("empty scope")
    return (float(arr.min()), float(arr.max()))


def brain_projection(coords, view: str) -> np.ndarray:
    """Axis-drop orthographic projection of ROI coords into the unit square.

    superior keeps (x, y), lateral keeps (y, z), posterior keeps (x, z);
    inputs normalized to [-1, 1] map affinely onto [0, 1] per axis.
    """
    if coords is None:
        raise ValueError("no coordinates")
    arr = np.asarray(coords, dtype=float)
    if arr.size == 0:
        raise ValueError("no coordinates")
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError("coords must be an N x 3 array")
    axes = {"superior": (0, 1), "lateral": (1, 2), "posterior": (0, 2)}
    if view not in axes:
        raise ValueError(f"unknown view {view!r}, expected one of {BRAIN_VIEWS}")
    a, b = axes[view]
    return (arr[:, (a, b)] + 1.0) / 2.0
