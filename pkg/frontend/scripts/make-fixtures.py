"""Regenerate the dashboard test fixtures from the live service.

Every fixture is the verbatim response body (bytes) of one API call against
the deterministic seed-7 dataset, so frontend tests assert against exactly
what the service sends. Run from the repo root:

    python3 frontend/scripts/make-fixtures.py
"""

from __future__ import annotations

from pathlib import Path

from fastapi.testclient import TestClient

from bandnet.dataio import generate_synthetic
from bandnet.service import create_app

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

STUDY_SUBNETWORKS = {
    "name": "study",
    "subnetworks": [
        {"name": "one", "members": [1, 4, 9, 16, 25]},
        {"name": "two", "members": [30, 31, 32]},
        {"name": "three", "members": [50, 51, 52, 53, 54]},
    ],
}


def dump(name: str, resp) -> None:
    assert resp.status_code in (200, 400), f"{name}: {resp.status_code} {resp.text}"
    (OUT / name).write_bytes(resp.content)
    print(f"wrote {name} ({len(resp.content)} bytes)")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    app = create_app([generate_synthetic(7, name="synthetic-7")])
    client = TestClient(app)

    dump("summary.json", client.get("/datasets/synthetic-7/summary"))
    dump("metrics_cc.json", client.get("/datasets/synthetic-7/metrics?metric=cc"))
    dump("tasks_1.json", client.get("/tasks/1"))

    # Overlap rejection payload for the editor test, before any config is set.
    dump(
        "subnetworks_overlap_error.json",
        client.put(
            "/session/subnetworks",
            json={
                "name": "bad",
                "subnetworks": [
                    {"name": "a", "members": [0, 1]},
                    {"name": "b", "members": [1, 2]},
                ],
            },
        ),
    )

    dump(
        "subnetworks_ok.json",
        client.put("/session/subnetworks", json=STUDY_SUBNETWORKS),
    )
    dump("session.json", client.get("/session"))
    dump("ring.json", client.get("/datasets/synthetic-7/layout/ring"))
    dump(
        "histograms_metric.json",
        client.get("/datasets/synthetic-7/histograms?target=metric&bins=20"),
    )
    dump(
        "histograms_connectivity_band0.json",
        client.get("/datasets/synthetic-7/histograms?target=connectivity&band=0&bins=20"),
    )
    for view in ("superior", "lateral", "posterior"):
        dump(f"brain_{view}.json", client.get(f"/datasets/synthetic-7/layout/brain?view={view}"))

    conn_threshold = client.get(
        "/datasets/synthetic-7/threshold?target=connectivity&band=0&percent=10"
    )
    dump("threshold_connectivity_band0_p10.json", conn_threshold)
    thr = conn_threshold.json()
    dump(
        "edges_band0_top10.json",
        client.get(
            "/datasets/synthetic-7/edges"
            f"?band=0&lo={thr['threshold']!r}&hi={thr['max']!r}&layout=ring"
        ),
    )

    metric_threshold = client.get(
        "/datasets/synthetic-7/threshold?target=metric&band=0&percent=10"
    )
    dump("threshold_metric_band0_p10.json", metric_threshold)
    mthr = metric_threshold.json()
    dump(
        "filters_after_brush.json",
        client.put(
            "/session/filters",
            json={"metric_ranges": [[mthr["threshold"], mthr["max"]], None, None, None, None]},
        ),
    )
    dump("ring_filtered.json", client.get("/datasets/synthetic-7/layout/ring"))


if __name__ == "__main__":
    main()
