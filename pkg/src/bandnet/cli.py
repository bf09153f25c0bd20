"""Batch access for scripting and CI: validate, metrics, oracle, gen, serve.

Exit codes: 0 ok, 1 validation or data error, 2 usage error. Output for
metrics and oracles is byte-stable given fixed inputs: rows are sorted and
numbers use 6 significant digits unless --exact asks for full precision.
"""

from __future__ import annotations

import csv
import sys

import click

from . import dataio, metrics, queries
from .service import create_app

MAX_REPORT_LINES = 50


def _fmt(value: float, exact: bool) -> str:
    return repr(float(value)) if exact else format(float(value), ".6g")


def _load(manifest: str) -> dataio.Dataset:
    try:
        return dataio.load_dataset(manifest)
    except dataio.DatasetValidationError as exc:
        lines = list(exc.report.issues[:MAX_REPORT_LINES])
        if len(exc.report) > MAX_REPORT_LINES:
            lines.append(f"... and {len(exc.report) - MAX_REPORT_LINES} more")
        raise click.ClickException("dataset invalid:\n  " + "\n  ".join(lines)) from None
    except (dataio.DatasetFormatError, OSError) as exc:
        raise click.ClickException(str(exc)) from None


@click.group()
def main():
    """Multi-frequency connectivity network toolbox."""


@main.command()
@click.argument("manifest", type=click.Path(exists=True, dir_okay=False))
def validate(manifest):
    """Validate a dataset; exit 0 only when the report is clean."""
    try:
        ds = dataio.load_dataset(manifest)
    except dataio.DatasetValidationError as exc:
        for line in exc.report.issues[:MAX_REPORT_LINES]:
            click.echo(line)
        if len(exc.report) > MAX_REPORT_LINES:
            click.echo(f"... and {len(exc.report) - MAX_REPORT_LINES} more")
        sys.exit(1)
    except (dataio.DatasetFormatError, OSError) as exc:
        click.echo(str(exc))
        sys.exit(1)
    click.echo(
        f"ok: {ds.name} ({ds.tensor.n_rois} rois, {ds.tensor.n_bands} bands, "
        f"symmetric={ds.tensor.symmetric})"
    )


@main.command("metrics")
@click.argument("manifest", type=click.Path(exists=True, dir_okay=False))
@click.option("--metric", "metric_id", default="cc", show_default=True,
              type=click.Choice(metrics.SUPPORTED_METRICS))
@click.option("--out", default="-", show_default=True,
              help="Output CSV path, - for stdout.")
@click.option("--exact", is_flag=True, help="Full round-trip precision.")
def metrics_cmd(manifest, metric_id, out, exact):
    """Write the N x B nodal metric table as CSV."""
    ds = _load(manifest)
    table = metrics.compute_metric_table(ds.tensor, metric_id)
    stream = sys.stdout if out == "-" else open(out, "w", encoding="utf-8", newline="")
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["roi"] + [b.name for b in ds.bands])
        for roi in ds.rois:
            writer.writerow(
                [roi.label] + [_fmt(v, exact) for v in table.values[roi.id]]
            )
    finally:
        if stream is not sys.stdout:
            stream.close()


def _print_strongest(ds: dataio.Dataset, results, exact: bool) -> None:
    for b, entry in enumerate(results):
        name = ds.bands[b].name
        if entry is None:
            click.echo(f"band={name} no connection")
        else:
            i, j, value = entry
            click.echo(f"band={name} i={i} j={j} value={_fmt(value, exact)}")


@main.command()
@click.argument("manifest", type=click.Path(exists=True, dir_okay=False))
@click.option("--task", type=click.IntRange(1, 4), required=True)
@click.option("--roi", type=int, default=None, help="ROI id (task 3).")
@click.option("--subnetworks", "subnetworks_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Subnetwork config JSON (task 4 scope).")
@click.option("--metric", "metric_id", default="cc", show_default=True,
              type=click.Choice(metrics.SUPPORTED_METRICS))
@click.option("--exact", is_flag=True, help="Full round-trip precision.")
def oracle(manifest, task, roi, subnetworks_path, metric_id, exact):
    """Print the deterministic answer to one of the four analysis tasks."""
    ds = _load(manifest)
    if task in (1, 3):
        table = metrics.compute_metric_table(ds.tensor, metric_id)
    if task == 1:
        band, best_roi, value = queries.task1_highest(table)
        click.echo(
            f"band={ds.bands[band].name} roi={best_roi} value={_fmt(value, exact)}"
        )
    elif task == 2:
        _print_strongest(ds, queries.task2_strongest_per_band(ds.tensor), exact)
    elif task == 3:
        if roi is None:
            raise click.UsageError("task 3 needs --roi")
        try:
            band, value = queries.task3_lowest_band_for_roi(table, roi)
        except ValueError as exc:
            raise click.ClickException(str(exc)) from None
        click.echo(f"band={ds.bands[band].name} value={_fmt(value, exact)}")
    else:
        if subnetworks_path is None:
            raise click.UsageError("task 4 needs --subnetworks")
        try:
            config = dataio.load_subnetwork_config(subnetworks_path, ds.tensor.n_rois)
            results = queries.task4_strongest_in_subnetworks(
                ds.tensor, config.subnetworks
            )
        except ValueError as exc:
            raise click.ClickException(str(exc)) from None
        _print_strongest(ds, results, exact)


@main.command()
@click.option("--seed", type=int, required=True)
@click.option("--n-rois", "--n", "n_rois", type=int, default=72, show_default=True)
@click.option("--bands", "n_bands", type=int, default=5, show_default=True)
@click.option("--communities", "n_communities", type=int, default=4, show_default=True)
@click.option("--noise", "noise_level", type=float, default=0.1, show_default=True)
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--name", default=None, help="Dataset name (default synthetic-SEED).")
def gen(seed, n_rois, n_bands, n_communities, noise_level, out_dir, name):
    """Write a deterministic synthetic dataset to a directory."""
    try:
        ds = dataio.generate_synthetic(
            seed, n_rois, n_bands, n_communities, noise_level, name=name
        )
    except ValueError as exc:
        raise click.ClickException(str(exc)) from None
    manifest_path = dataio.save_dataset(ds, out_dir)
    click.echo(str(manifest_path))


@main.command()
@click.argument("manifests", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--subnetworks", "subnetworks_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Pre-load a subnetwork config into the session.")
@click.option("--frontend", "frontend_dir", default=None,
              type=click.Path(exists=True, file_okay=False),
              help="Also serve a built dashboard (e.g. frontend/dist) at /.")
def serve(manifests, host, port, subnetworks_path, frontend_dir):
    """Serve the HTTP API over one or more datasets."""
    import uvicorn

    datasets = [_load(m) for m in manifests]
    app = create_app(datasets)
    if frontend_dir is not None:
        from starlette.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="dashboard")
    if subnetworks_path is not None:
        state = app.state.service
        try:
            config = dataio.load_subnetwork_config(
                subnetworks_path, datasets[0].tensor.n_rois
            )
        except ValueError as exc:
            raise click.ClickException(str(exc)) from None
        from dataclasses import replace

        state.session = replace(
            state.session,
            subnetworks=config,
            filters=replace(
                state.session.filters, active_subnetworks=config.subnetworks
            ),
        )
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
