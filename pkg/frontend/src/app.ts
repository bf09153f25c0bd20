// Dashboard composition: one toolbar, two interchangeable prototypes
// (A: layered ring + histograms, B: bar charts + heatmap), a schematic
// brain in both, and a server-held session. Toggling prototypes touches
// no session state; superseded responses are discarded.

import type {
  Api,
  BarSort,
  BrainViewName,
  DatasetSummary,
  SessionFilters,
  SessionPayload,
  SubnetworkConfigPayload,
} from './api';
import { ApiRequestError } from './api';
import { LinkedHighlight, type Prototype } from './state';
import { Tooltip } from './tooltip';
import { BarView } from './views/barView';
import { BrainView } from './views/brainView';
import { HeatmapView } from './views/heatmapView';
import { HistogramPanel } from './views/histogramView';
import { RingView } from './views/ringView';
import { SubnetworkEditor } from './views/subnetworkEditor';

const BRAIN_VIEWS: BrainViewName[] = ['superior', 'lateral', 'posterior'];
const QUICK_PERCENTS = [5, 10, 25];

export class Dashboard {
  readonly linked = new LinkedHighlight();
  readonly tooltip: Tooltip;

  prototype: Prototype = 'A';
  halfHeatmap = false;
  colorMode: 'linear' | 'log' = 'linear';
  dynamicScale = false;

  private seq = 0;
  private datasetId = '';
  private summary: DatasetSummary | null = null;
  private filters: SessionFilters = {
    metric_ranges: [],
    connectivity_range: null,
    selected_band: 0,
  };
  private barSort: BarSort = 'none';

  private readonly banner: HTMLDivElement;
  private readonly protoARoot: HTMLDivElement;
  private readonly protoBRoot: HTMLDivElement;

  readonly ringView: RingView;
  readonly metricHistograms: HistogramPanel;
  readonly connectivityHistogram: HistogramPanel;
  readonly brainA: BrainView;
  readonly barView: BarView;
  readonly heatmapView: HeatmapView;
  readonly brainB: BrainView;
  readonly editor: SubnetworkEditor;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: Api,
    storage?: Storage,
  ) {
    this.tooltip = new Tooltip(root);

    this.banner = document.createElement('div');
    this.banner.className = 'banner hidden';
    root.appendChild(this.banner);

    root.appendChild(this.buildToolbar());

    this.protoARoot = document.createElement('div');
    this.protoARoot.className = 'prototype prototype-a';
    this.protoBRoot = document.createElement('div');
    this.protoBRoot.className = 'prototype prototype-b hidden';
    root.append(this.protoARoot, this.protoBRoot);

    const ringPanel = document.createElement('div');
    ringPanel.className = 'ring-panel';
    this.protoARoot.appendChild(ringPanel);
    this.ringView = new RingView(ringPanel, this.tooltip, this.linked, {
      onBandSelect: (band) => void this.selectBand(band),
    });
    const sideA = document.createElement('div');
    sideA.className = 'side-panel';
    this.protoARoot.appendChild(sideA);
    this.metricHistograms = new HistogramPanel(sideA, 'metric distribution', (band, range) =>
      void this.setMetricRange(band, range),
    );
    this.connectivityHistogram = new HistogramPanel(
      sideA,
      'connection strengths',
      (_band, range) => void this.setConnectivityRange(range),
    );
    this.brainA = new BrainView(this.protoARoot, this.linked);

    this.barView = new BarView(this.protoBRoot, this.tooltip, this.linked);
    const heatmapPanel = document.createElement('div');
    heatmapPanel.className = 'heatmap-panel';
    this.protoBRoot.appendChild(heatmapPanel);
    this.heatmapView = new HeatmapView(heatmapPanel, this.tooltip, this.linked);
    this.brainB = new BrainView(this.protoBRoot, this.linked);

    this.editor = new SubnetworkEditor(
      root,
      api,
      (config) => this.onSubnetworksApplied(config),
      storage,
    );
  }

  private buildToolbar(): HTMLDivElement {
    const bar = document.createElement('div');
    bar.className = 'toolbar';

    for (const proto of ['A', 'B'] as Prototype[]) {
      const btn = document.createElement('button');
      btn.textContent = `prototype ${proto}`;
      btn.dataset.prototype = proto;
      btn.className = proto === this.prototype ? 'active' : '';
      btn.addEventListener('click', () => this.setPrototype(proto));
      bar.appendChild(btn);
    }

    const bandGroup = document.createElement('span');
    bandGroup.className = 'band-buttons';
    bar.appendChild(bandGroup);

    const topGroup = document.createElement('span');
    topGroup.className = 'top-percent';
    topGroup.append('top ');
    for (const p of QUICK_PERCENTS) {
      const btn = document.createElement('button');
      btn.textContent = `${p}%`;
      btn.dataset.percent = String(p);
      btn.addEventListener('click', () => void this.applyTopPercent(p));
      topGroup.appendChild(btn);
    }
    const custom = document.createElement('input');
    custom.type = 'number';
    custom.min = '0';
    custom.max = '100';
    custom.step = 'any';
    custom.placeholder = 'custom %';
    custom.className = 'custom-percent';
    const customApply = document.createElement('button');
    customApply.textContent = 'apply';
    customApply.dataset.action = 'apply-custom-percent';
    customApply.addEventListener('click', () => {
      const p = Number(custom.value);
      if (p > 0 && p <= 100) void this.applyTopPercent(p);
    });
    const clear = document.createElement('button');
    clear.textContent = 'clear filters';
    clear.dataset.action = 'clear-filters';
    clear.addEventListener('click', () => void this.clearFilters());
    topGroup.append(custom, customApply, clear);
    bar.appendChild(topGroup);

    const sort = document.createElement('select');
    sort.className = 'bar-sort';
    for (const order of ['none', 'ascending', 'descending'] as BarSort[]) {
      sort.appendChild(new Option(`sort: ${order}`, order));
    }
    sort.addEventListener('change', () => void this.setBarSort(sort.value as BarSort));
    bar.appendChild(sort);

    const halfLabel = document.createElement('label');
    halfLabel.className = 'half-heatmap';
    const half = document.createElement('input');
    half.type = 'checkbox';
    half.addEventListener('change', () => {
      this.halfHeatmap = half.checked;
      void this.refresh();
    });
    halfLabel.append(half, ' half heatmap');
    bar.appendChild(halfLabel);

    const colorMode = document.createElement('select');
    colorMode.className = 'color-mode';
    colorMode.append(new Option('linear colors', 'linear'), new Option('log colors', 'log'));
    colorMode.addEventListener('change', () => {
      this.colorMode = colorMode.value as 'linear' | 'log';
      void this.refresh();
    });
    bar.appendChild(colorMode);

    const dynamicLabel = document.createElement('label');
    dynamicLabel.className = 'dynamic-scale';
    const dynamic = document.createElement('input');
    dynamic.type = 'checkbox';
    dynamic.addEventListener('change', () => {
      this.dynamicScale = dynamic.checked;
      void this.refresh();
    });
    dynamicLabel.append(dynamic, ' dynamic scale');
    bar.appendChild(dynamicLabel);

    const subsBtn = document.createElement('button');
    subsBtn.textContent = 'subnetworks';
    subsBtn.dataset.action = 'open-subnetworks';
    subsBtn.addEventListener('click', () => this.editor.show());
    bar.appendChild(subsBtn);

    return bar;
  }

  private renderBandButtons(): void {
    const group = this.root.querySelector('.band-buttons');
    if (!group || !this.summary) return;
    group.replaceChildren(
      ...this.summary.band_names.map((name, band) => {
        const btn = document.createElement('button');
        btn.textContent = name;
        btn.dataset.band = String(band);
        btn.className = `band-button band-${band}${
          band === this.filters.selected_band ? ' active' : ''
        }`;
        btn.addEventListener('click', () => void this.selectBand(band));
        return btn;
      }),
    );
  }

  async init(): Promise<void> {
    await this.guard(async () => {
      const listing = await this.api.datasets();
      if (!listing.datasets.length) throw new ApiRequestError(0, 'no_dataset', 'no datasets served');
      this.datasetId = listing.datasets[0].id;
      this.summary = await this.api.summary(this.datasetId);
      const session: SessionPayload = await this.api.session();
      this.filters = session.filters;
      this.barSort = session.bar_sort;
      this.renderBandButtons();
    });
    await this.refresh();
  }

  setPrototype(proto: Prototype): void {
    this.prototype = proto;
    this.protoARoot.classList.toggle('hidden', proto !== 'A');
    this.protoBRoot.classList.toggle('hidden', proto !== 'B');
    this.root.querySelectorAll<HTMLButtonElement>('[data-prototype]').forEach((btn) => {
      btn.classList.toggle('active', btn.dataset.prototype === proto);
    });
    void this.refresh();
  }

  /** Fetch and render everything the active prototype needs. */
  async refresh(): Promise<void> {
    if (!this.summary) return;
    const summary = this.summary;
    const mySeq = ++this.seq;
    await this.guard(async () => {
      const brains = Promise.all(
        summary.has_coords
          ? BRAIN_VIEWS.map((v) => this.api.brainLayout(this.datasetId, v))
          : [],
      );
      if (this.prototype === 'A') {
        const [ring, edges, metricHists, connHist, brainPayloads] = await Promise.all([
          this.api.ringLayout(this.datasetId, {
            mode: this.colorMode,
            dynamic: this.dynamicScale,
          }),
          this.api.edges(this.datasetId, {
            band: this.filters.selected_band,
            layout: 'ring',
            mode: this.colorMode,
            dynamic: this.dynamicScale,
          }),
          this.api.histograms(this.datasetId, 'metric'),
          this.api.histograms(this.datasetId, 'connectivity', {
            band: this.filters.selected_band,
          }),
          brains,
        ]);
        if (mySeq !== this.seq) return;
        this.ringView.render(ring, summary);
        this.ringView.renderChords(edges);
        this.metricHistograms.render(metricHists);
        this.connectivityHistogram.render(connHist);
        this.brainA.render(brainPayloads);
      } else {
        const [metrics, edges, brainPayloads] = await Promise.all([
          this.api.metrics(this.datasetId),
          this.api.edges(this.datasetId, {
            band: this.filters.selected_band,
            layout: 'ring',
            mode: this.colorMode,
            dynamic: this.dynamicScale,
          }),
          brains,
        ]);
        if (mySeq !== this.seq) return;
        this.barView.render(metrics, summary, this.barSort, this.filters.selected_band);
        this.heatmapView.render(edges, summary, this.barView.roiOrder, this.halfHeatmap);
        this.brainB.render(brainPayloads);
      }
      this.renderBandButtons();
      this.banner.classList.add('hidden');
    });
  }

  async selectBand(band: number): Promise<void> {
    await this.guard(async () => {
      this.filters = await this.api.putFilters({ selected_band: band });
    });
    await this.refresh();
  }

  async setMetricRange(band: number, range: [number, number] | null): Promise<void> {
    if (!this.summary) return;
    const ranges: ([number, number] | null)[] = [];
    for (let b = 0; b < this.summary.n_bands; b++) {
      ranges.push(this.filters.metric_ranges[b] ?? null);
    }
    ranges[band] = range;
    await this.guard(async () => {
      this.filters = await this.api.putFilters({ metric_ranges: ranges });
    });
    await this.refresh();
  }

  async setConnectivityRange(range: [number, number] | null): Promise<void> {
    await this.guard(async () => {
      this.filters = await this.api.putFilters({ connectivity_range: range });
    });
    await this.refresh();
  }

  /** Top-X% quick filter: per-band metric thresholds from the service. */
  async applyTopPercent(percent: number): Promise<void> {
    if (!this.summary) return;
    const summary = this.summary;
    await this.guard(async () => {
      const thresholds = await Promise.all(
        summary.band_names.map((_n, band) =>
          this.api.threshold(this.datasetId, { percent, target: 'metric', band }),
        ),
      );
      this.filters = await this.api.putFilters({
        metric_ranges: thresholds.map((t) => [t.threshold, t.max] as [number, number]),
      });
    });
    await this.refresh();
  }

  async clearFilters(): Promise<void> {
    if (!this.summary) return;
    const nulls = this.summary.band_names.map(() => null);
    await this.guard(async () => {
      this.filters = await this.api.putFilters({
        metric_ranges: nulls,
        connectivity_range: null,
      });
    });
    await this.refresh();
  }

  async setBarSort(order: BarSort): Promise<void> {
    await this.guard(async () => {
      await this.api.putFilters({ bar_sort: order });
      this.barSort = order;
    });
    await this.refresh();
  }

  private onSubnetworksApplied(config: SubnetworkConfigPayload): void {
    void config;
    void this.refresh();
  }

  get currentFilters(): SessionFilters {
    return this.filters;
  }

  private async guard(work: () => Promise<void>): Promise<void> {
    try {
      await work();
    } catch (err) {
      const message =
        err instanceof ApiRequestError ? `${err.code}: ${err.message}` : String(err);
      this.banner.textContent = `service error - ${message}`;
      this.banner.classList.remove('hidden');
    }
  }

  get bannerElement(): HTMLDivElement {
    return this.banner;
  }
}
