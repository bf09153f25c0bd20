"""HTTP API over datasets, metrics, filters, layouts, and task answers.

One analyst per service instance: session state (active dataset, filters,
subnetworks, bar sort) is held server-side, mutations are serialized
behind a lock, and readers always see a consistent immutable snapshot.
All payloads are JSON; field names are documented in API.md.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import layout as geom
from . import metrics as metrics_mod
from . import queries
from .dataio import Dataset, SubnetworkConfig
from .model import FilterState, Subnetwork, check_subnetworks

BAR_SORT_ORDERS = ("none", "ascending", "descending")


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message
        super().__init__(message)


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": {"code": code, "message": message}}
    )


@dataclass(frozen=True)
class SessionState:
    """Server-held analyst session; replaced wholesale on every mutation."""

    dataset_id: Optional[str]
    filters: FilterState
    subnetworks: Optional[SubnetworkConfig]
    bar_sort: str = "none"


class ServiceState:
    """Datasets, the session, and the per-(dataset, metric) table cache."""

    def __init__(self, datasets: Sequence[Dataset]):
        self.datasets: dict[str, Dataset] = {}
        for ds in datasets:
            self.datasets[self._unique_id(ds.name)] = ds
        first = next(iter(self.datasets), None)
        self.session = SessionState(
            dataset_id=first, filters=FilterState(), subnetworks=None
        )
        self._tables: dict[tuple[str, str], object] = {}
        self.lock = threading.Lock()

    def _unique_id(self, name: str) -> str:
        base = re.sub(r"[^a-z0-9_-]+", "-", name.lower()).strip("-") or "dataset"
        candidate = base
        n = 2
        while candidate in self.datasets:
            candidate = f"{base}-{n}"
            n += 1
        return candidate

    def dataset(self, dataset_id: str) -> Dataset:
        ds = self.datasets.get(dataset_id)
        if ds is None:
            raise ApiError(404, "not_found", f"no dataset {dataset_id!r}")
        return ds

    def active(self) -> tuple[str, Dataset]:
        session = self.session
        if session.dataset_id is None:
            raise ApiError(400, "no_dataset", "no active dataset in session")
        return session.dataset_id, self.dataset(session.dataset_id)

    def metric_table(self, dataset_id: str, metric_id: str):
        key = (dataset_id, metric_id)
        table = self._tables.get(key)
        if table is None:
            ds = self.dataset(dataset_id)
            if metric_id not in metrics_mod.SUPPORTED_METRICS:
                raise ApiError(400, "unsupported_metric", f"unsupported metric: {metric_id!r}")
            with self.lock:
                table = self._tables.get(key)
                if table is None:
                    table = metrics_mod.compute_metric_table(ds.tensor, metric_id)
                    self._tables[key] = table
        return table


def _band_index(ds: Dataset, band: int) -> int:
    if not 0 <= band < ds.tensor.n_bands:
        raise ApiError(400, "invalid_band", f"invalid band index {band}")
    return band


def _parse_range(lo, hi, fallback: tuple[float, float]) -> tuple[float, float]:
    out_lo = fallback[0] if lo is None else float(lo)
    out_hi = fallback[1] if hi is None else float(hi)
    if out_lo > out_hi:
        raise ApiError(400, "invalid_range", f"range lo > hi: [{out_lo},{out_hi}]")
    return out_lo, out_hi


def _resolve_subnetworks(
    state: ServiceState, names_param: Optional[str]
) -> Optional[list[Subnetwork]]:
    """Comma-separated subnetwork names against the session config."""
    if names_param is None or names_param == "":
        return None
    config = state.session.subnetworks
    if config is None:
        raise ApiError(400, "no_subnetworks", "no subnetworks configured in session")
    by_name = {s.name: s for s in config.subnetworks}
    chosen = []
    for name in names_param.split(","):
        sub = by_name.get(name)
        if sub is None:
            raise ApiError(400, "unknown_subnetwork", f"no subnetwork named {name!r}")
        chosen.append(sub)
    return chosen


def _color_payload(color: tuple[float, float, float]) -> dict:
    h, s, l = color
    return {"h": h, "s": s, "l": l, "css": geom.hsl_css(color)}


def _session_payload(state: ServiceState) -> dict:
    session = state.session
    filters = session.filters
    return {
        "dataset_id": session.dataset_id,
        "filters": {
            "metric_ranges": [
                None if r is None else [r[0], r[1]] for r in filters.metric_ranges
            ],
            "connectivity_range": (
                None
                if filters.connectivity_range is None
                else list(filters.connectivity_range)
            ),
            "selected_band": filters.selected_band,
        },
        "subnetworks": (
            None
            if session.subnetworks is None
            else {
                "name": session.subnetworks.name,
                "subnetworks": [
                    {"name": s.name, "members": list(s.members)}
                    for s in session.subnetworks.subnetworks
                ],
            }
        ),
        "bar_sort": session.bar_sort,
    }


def _strongest_entries(ds: Dataset, results) -> list[dict]:
    entries = []
    for b, entry in enumerate(results):
        if entry is None:
            entries.append(
                {"band": b, "band_name": ds.bands[b].name, "no_connection": True}
            )
        else:
            i, j, value = entry
            entries.append(
                {
                    "band": b,
                    "band_name": ds.bands[b].name,
                    "i": i,
                    "j": j,
                    "value": value,
                    "no_connection": False,
                }
            )
    return entries


def create_app(datasets: Sequence[Dataset]) -> FastAPI:
    state = ServiceState(datasets)
    app = FastAPI(title="bandnet service", docs_url=None, redoc_url=None)
    app.state.service = state

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return _error_response(exc.status, exc.code, exc.message)

    @app.exception_handler(RequestValidationError)
    async def _bad_request(request: Request, exc: RequestValidationError):
        return _error_response(400, "invalid_request", str(exc.errors()[:3]))

    @app.get("/datasets")
    def list_datasets():
        return {
            "datasets": [
                {
                    "id": ds_id,
                    "name": ds.name,
                    "n_rois": ds.tensor.n_rois,
                    "n_bands": ds.tensor.n_bands,
                }
                for ds_id, ds in state.datasets.items()
            ]
        }

    @app.get("/datasets/{dataset_id}/summary")
    def dataset_summary(dataset_id: str):
        ds = state.dataset(dataset_id)
        return {
            "id": dataset_id,
            "name": ds.name,
            "n_rois": ds.tensor.n_rois,
            "n_bands": ds.tensor.n_bands,
            "band_names": [b.name for b in ds.bands],
            "roi_labels": [r.label for r in ds.rois],
            "symmetric": ds.tensor.symmetric,
            "has_coords": ds.has_coords,
        }

    @app.get("/datasets/{dataset_id}/metrics")
    def dataset_metrics(dataset_id: str, metric: str = "cc"):
        table = state.metric_table(dataset_id, metric)
        return {
            "metric": metric,
            "n_rois": table.n_rois,
            "n_bands": table.n_bands,
            "values": [[float(v) for v in row] for row in table.values],
            "band_min": [float(v) for v in table.band_min],
            "band_max": [float(v) for v in table.band_max],
        }

    @app.get("/datasets/{dataset_id}/edges")
    def dataset_edges(
        dataset_id: str,
        band: Optional[int] = None,
        lo: Optional[float] = None,
        hi: Optional[float] = None,
        subnetworks: Optional[str] = None,
        layout: Optional[str] = None,
        mode: str = "linear",
        dynamic: bool = False,
    ):
        ds = state.dataset(dataset_id)
        b = _band_index(ds, state.session.filters.selected_band if band is None else band)
        mat = ds.tensor.band(b)
        session_range = state.session.filters.connectivity_range
        fallback = session_range if session_range is not None else (0.0, float(mat.max()))
        strength_range = _parse_range(lo, hi, fallback)
        scoped = _resolve_subnetworks(state, subnetworks)
        subset = None
        if scoped is not None:
            subset = set()
            for sub in scoped:
                subset.update(sub.members)
        selection = queries.filter_edges(ds.tensor, b, strength_range, subset)

        edges = [
            {"i": i, "j": j, "strength": w} for i, j, w in selection.edges
        ]
        payload = {
            "band": b,
            "band_name": ds.bands[b].name,
            "range": [strength_range[0], strength_range[1]],
            "count": len(edges),
            "edges": edges,
        }
        if layout == "ring":
            active = state.session.subnetworks
            ring = geom.ring_layout(
                ds.tensor.n_rois,
                ds.tensor.n_bands,
                subnetworks=active.subnetworks if active else (),
            )
            strengths = [w for _, _, w in selection.edges]
            if strengths and dynamic:
                vmin, vmax = geom.dynamic_domain(strengths)
            else:
                vmin, vmax = 0.0, float(mat.max()) if mat.max() > 0 else 1.0
            try:
                spec = geom.ColorSpec(mode=mode, vmin=vmin, vmax=vmax)
            except ValueError as exc:
                raise ApiError(400, "invalid_color_scale", str(exc)) from None
            for edge in edges:
                p1, p2 = ring.chord_endpoints(edge["i"], edge["j"])
                edge["endpoints"] = [list(p1), list(p2)]
                edge["color"] = _color_payload(
                    geom.saturation_color(edge["strength"], spec, b)
                )
        return payload

    @app.get("/datasets/{dataset_id}/histograms")
    def dataset_histograms(
        dataset_id: str,
        target: str = "metric",
        metric: str = "cc",
        band: Optional[int] = None,
        bins: int = 20,
    ):
        ds = state.dataset(dataset_id)
        if bins < 1:
            raise ApiError(400, "invalid_histogram", f"bin count must be >= 1, got {bins}")
        if target == "metric":
            table = state.metric_table(dataset_id, metric)
            vmin = float(table.values.min())
            vmax = float(table.values.max())
            if vmin == vmax:
                vmax = vmin + 1.0
            hists = [
                queries.histogram(table.values[:, b], bins, (vmin, vmax))
                for b in range(table.n_bands)
            ]
            return {
                "target": "metric",
                "metric": metric,
                "bins": bins,
                "domain": [vmin, vmax],
                "shared_max": queries.shared_count_scale(hists),
                "histograms": [
                    {
                        "band": b,
                        "band_name": ds.bands[b].name,
                        "counts": list(h.counts),
                        "bin_edges": list(h.bin_edges),
                    }
                    for b, h in enumerate(hists)
                ],
            }
        if target == "connectivity":
            b = _band_index(
                ds, state.session.filters.selected_band if band is None else band
            )
            mat = ds.tensor.band(b)
            positive = mat[mat > 0]
            vmax = float(positive.max()) if positive.size else 1.0
            hist = queries.histogram(positive, bins, (0.0, vmax))
            return {
                "target": "connectivity",
                "band": b,
                "band_name": ds.bands[b].name,
                "bins": bins,
                "domain": [0.0, vmax],
                "shared_max": queries.shared_count_scale([hist]),
                "histograms": [
                    {
                        "band": b,
                        "band_name": ds.bands[b].name,
                        "counts": list(hist.counts),
                        "bin_edges": list(hist.bin_edges),
                    }
                ],
            }
        raise ApiError(400, "invalid_target", f"unknown histogram target {target!r}")

    @app.get("/datasets/{dataset_id}/threshold")
    def dataset_threshold(
        dataset_id: str,
        percent: float,
        target: str = "metric",
        metric: str = "cc",
        band: Optional[int] = None,
    ):
        ds = state.dataset(dataset_id)
        b = _band_index(ds, state.session.filters.selected_band if band is None else band)
        if target == "metric":
            table = state.metric_table(dataset_id, metric)
            values = [float(v) for v in table.band_values(b)]
        elif target == "connectivity":
            mat = ds.tensor.band(b)
            values = [float(v) for v in mat[mat > 0]]
        else:
            raise ApiError(400, "invalid_target", f"unknown threshold target {target!r}")
        try:
            threshold = queries.top_percent_threshold(values, percent)
        except ValueError as exc:
            raise ApiError(400, "invalid_percent", str(exc)) from None
        return {
            "target": target,
            "metric": metric if target == "metric" else None,
            "band": b,
            "percent": percent,
            "threshold": threshold,
            "max": max(values),
            "selected_count": sum(1 for v in values if v >= threshold),
        }

    @app.get("/datasets/{dataset_id}/layout/ring")
    def dataset_ring_layout(
        dataset_id: str,
        metric: str = "cc",
        mode: str = "linear",
        dynamic: bool = False,
    ):
        ds = state.dataset(dataset_id)
        table = state.metric_table(dataset_id, metric)
        session = state.session
        config = session.subnetworks
        ring = geom.ring_layout(
            ds.tensor.n_rois,
            ds.tensor.n_bands,
            subnetworks=config.subnetworks if config else (),
        )
        active_sets = queries.apply_filter_state(table, session.filters)

        if dynamic:
            visible = [
                float(table.values[roi, b])
                for b in range(table.n_bands)
                for roi in active_sets[b]
            ]
            if not visible:
                raise ApiError(400, "empty_scope", "no values pass the active filters")
            vmin, vmax = geom.dynamic_domain(visible)
        else:
            vmin = float(table.values.min())
            vmax = float(table.values.max())
        try:
            spec = geom.ColorSpec(mode=mode, vmin=vmin, vmax=vmax)
        except ValueError as exc:
            raise ApiError(400, "invalid_color_scale", str(exc)) from None

        segments = []
        for b in range(table.n_bands):
            for roi in range(table.n_rois):
                arc = ring.segment(b, roi)
                value = float(table.values[roi, b])
                segments.append(
                    {
                        "band": b,
                        "roi": roi,
                        "start_angle": arc.start_angle,
                        "end_angle": arc.end_angle,
                        "inner_radius": arc.inner_radius,
                        "outer_radius": arc.outer_radius,
                        "value": value,
                        "active": roi in active_sets[b],
                        "color": _color_payload(geom.saturation_color(value, spec, b)),
                    }
                )
        return {
            "metric": metric,
            "mode": mode,
            "domain": [vmin, vmax],
            "r_inner": ring.r_inner,
            "ring_thickness": ring.ring_thickness,
            "order": list(ring.order),
            "segments": segments,
            "chord_anchors": [list(ring.chord_point(r)) for r in range(ring.n_rois)],
            "subnetwork_arcs": [
                {
                    "name": arc.name,
                    "start_angle": arc.start_angle,
                    "end_angle": arc.end_angle,
                    "radius": arc.radius,
                }
                for arc in ring.subnetwork_arcs
            ],
        }

    @app.get("/datasets/{dataset_id}/layout/brain")
    def dataset_brain_layout(dataset_id: str, view: str = "superior"):
        ds = state.dataset(dataset_id)
        coords = ds.coords_array()
        if coords is None:
            raise ApiError(400, "no_coordinates", "dataset has no ROI coordinates")
        try:
            points = geom.brain_projection(coords, view)
        except ValueError as exc:
            raise ApiError(400, "invalid_view", str(exc)) from None
        return {
            "view": view,
            "points": [[float(x), float(y)] for x, y in points],
        }

    @app.get("/tasks/1")
    def task1(metric: str = "cc"):
        ds_id, ds = state.active()
        table = state.metric_table(ds_id, metric)
        band, roi, value = queries.task1_highest(table)
        return {
            "task": 1,
            "metric": metric,
            "band": band,
            "band_name": ds.bands[band].name,
            "roi": roi,
            "roi_label": ds.rois[roi].label,
            "value": value,
        }

    @app.get("/tasks/2")
    def task2(subnetworks: Optional[str] = None):
        ds_id, ds = state.active()
        scoped = _resolve_subnetworks(state, subnetworks)
        subset = None
        if scoped is not None:
            subset = set()
            for sub in scoped:
                subset.update(sub.members)
        try:
            results = queries.task2_strongest_per_band(ds.tensor, subset)
        except ValueError as exc:
            raise ApiError(400, "invalid_subset", str(exc)) from None
        return {"task": 2, "entries": _strongest_entries(ds, results)}

    @app.get("/tasks/3")
    def task3(roi: int, metric: str = "cc"):
        ds_id, ds = state.active()
        table = state.metric_table(ds_id, metric)
        try:
            band, value = queries.task3_lowest_band_for_roi(table, roi)
        except ValueError as exc:
            raise ApiError(400, "invalid_roi", str(exc)) from None
        return {
            "task": 3,
            "metric": metric,
            "roi": roi,
            "roi_label": ds.rois[roi].label,
            "band": band,
            "band_name": ds.bands[band].name,
            "value": value,
        }

    @app.get("/tasks/4")
    def task4(subnetworks: Optional[str] = None):
        ds_id, ds = state.active()
        scoped = _resolve_subnetworks(state, subnetworks)
        if scoped is None:
            config = state.session.subnetworks
            if config is None or not config.subnetworks:
                raise ApiError(
                    400, "no_subnetworks", "task 4 needs active subnetworks in session"
                )
            scoped = list(config.subnetworks)
        try:
            results = queries.task4_strongest_in_subnetworks(ds.tensor, scoped)
        except ValueError as exc:
            raise ApiError(400, "invalid_subset", str(exc)) from None
        return {
            "task": 4,
            "scope": sorted({m for sub in scoped for m in sub.members}),
            "entries": _strongest_entries(ds, results),
        }

    @app.get("/session")
    def get_session():
        return _session_payload(state)

    @app.put("/session/dataset")
    def put_session_dataset(payload: dict = Body(...)):
        dataset_id = payload.get("id")
        state.dataset(dataset_id)
        with state.lock:
            state.session = SessionState(
                dataset_id=dataset_id,
                filters=FilterState(),
                subnetworks=None,
                bar_sort="none",
            )
        return _session_payload(state)

    @app.get("/session/filters")
    def get_filters():
        return _session_payload(state)["filters"]

    @app.put("/session/filters")
    def put_filters(payload: dict = Body(...)):
        ds_id, ds = state.active()
        n_bands = ds.tensor.n_bands
        current = state.session.filters

        metric_ranges = list(current.metric_ranges) or [None] * n_bands
        if len(metric_ranges) < n_bands:
            metric_ranges += [None] * (n_bands - len(metric_ranges))
        if "metric_ranges" in payload:
            raw = payload["metric_ranges"]
            if not isinstance(raw, list) or len(raw) > n_bands:
                raise ApiError(400, "invalid_range", "metric_ranges must list <= B ranges")
            metric_ranges = [None] * n_bands
            for b, r in enumerate(raw):
                if r is None:
                    continue
                lo, hi = _parse_range(r[0], r[1], (0.0, 0.0))
                metric_ranges[b] = (lo, hi)

        connectivity = current.connectivity_range
        if "connectivity_range" in payload:
            raw = payload["connectivity_range"]
            connectivity = None
            if raw is not None:
                connectivity = _parse_range(raw[0], raw[1], (0.0, 0.0))

        selected = payload.get("selected_band", current.selected_band)
        if not isinstance(selected, int) or not 0 <= selected < n_bands:
            raise ApiError(400, "invalid_band", f"invalid band index {selected}")

        bar_sort = payload.get("bar_sort", state.session.bar_sort)
        if bar_sort not in BAR_SORT_ORDERS:
            raise ApiError(400, "invalid_sort", f"bar_sort must be one of {BAR_SORT_ORDERS}")

        config = state.session.subnetworks
        filters = FilterState(
            metric_ranges=tuple(metric_ranges),
            connectivity_range=connectivity,
            selected_band=selected,
            active_subnetworks=config.subnetworks if config else (),
        )
        with state.lock:
            state.session = replace(state.session, filters=filters, bar_sort=bar_sort)
        return _session_payload(state)["filters"]

    @app.get("/session/subnetworks")
    def get_subnetworks():
        return _session_payload(state)["subnetworks"]

    @app.put("/session/subnetworks")
    def put_subnetworks(payload: dict = Body(...)):
        ds_id, ds = state.active()
        try:
            config = SubnetworkConfig(
                name=str(payload.get("name", "session")),
                subnetworks=tuple(
                    Subnetwork(str(s["name"]), tuple(int(m) for m in s["members"]))
                    for s in payload.get("subnetworks", [])
                ),
            )
            check_subnetworks(config.subnetworks, ds.tensor.n_rois)
        except (KeyError, TypeError, ValueError) as exc:
            raise ApiError(400, "invalid_subnetworks", str(exc)) from None
        filters = replace(
            state.session.filters, active_subnetworks=config.subnetworks
        )
        with state.lock:
            state.session = replace(state.session, subnetworks=config, filters=filters)
        return _session_payload(state)["subnetworks"]

    return app
