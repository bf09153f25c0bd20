// Bar charts, one per band, all sharing a single y-scale so heights are
// comparable across frequencies. Bar order is shared with the heatmap so
// its columns stay vertically aligned with the bars.

import * as d3 from 'd3';
import type { BarSort, DatasetSummary, MetricsPayload } from '../api';
import { LinkedHighlight } from '../state';
import type { Tooltip } from '../tooltip';

const WIDTH = 720;
const HEIGHT = 64;
const MARGIN = { top: 2, right: 4, bottom: 12, left: 34 };

interface Bar {
  roi: number;
  value: number;
}

export class BarView {
  private readonly root: HTMLDivElement;
  private order: number[] = [];

  constructor(
    container: HTMLElement,
    private readonly tooltip: Tooltip,
    private readonly linked: LinkedHighlight,
  ) {
    this.root = document.createElement('div');
    this.root.className = 'bar-view';
    container.appendChild(this.root);
    this.linked.onChange((target) => this.applyHighlight(LinkedHighlight.rois(target)));
  }

  /** Current left-to-right ROI order; the heatmap mirrors it. */
  get roiOrder(): number[] {
    return this.order;
  }

  render(
    metrics: MetricsPayload,
    summary: DatasetSummary,
    sort: BarSort,
    sortBand: number,
  ): void {
    const n = metrics.n_rois;
    this.order = d3.range(n);
    if (sort !== 'none') {
      const key = (roi: number) => metrics.values[roi][sortBand];
      this.order.sort((a, b) => (sort === 'ascending' ? key(a) - key(b) : key(b) - key(a)));
    }

    const yMax = Math.max(...metrics.band_max, 0) || 1;
    const y = d3.scaleLinear().domain([0, yMax]).range([HEIGHT - MARGIN.bottom, MARGIN.top]);
    const x = d3
      .scaleBand<number>()
      .domain(this.order)
      .range([MARGIN.left, WIDTH - MARGIN.right])
      .paddingInner(0.15);

    this.root.querySelectorAll('.bar-chart').forEach((el) => el.remove());
    for (let band = 0; band < metrics.n_bands; band++) {
      const chart = document.createElement('div');
      chart.className = 'bar-chart';
      chart.dataset.band = String(band);

      const caption = document.createElement('span');
      caption.className = 'bar-caption';
      caption.textContent = summary.band_names[band];
      chart.appendChild(caption);

      const bars: Bar[] = this.order.map((roi) => ({ roi, value: metrics.values[roi][band] }));
      const svg = d3
        .select(chart)
        .append('svg')
        .attr('viewBox', `0 0 ${WIDTH} ${HEIGHT}`)
        .attr('class', `bars band-${band}`);

      svg
        .selectAll<SVGRectElement, Bar>('rect.bar')
        .data(bars, (b) => b.roi)
        .join('rect')
        .attr('class', `bar band-${band}`)
        .attr('data-roi', (b) => b.roi)
        .attr('data-band', band)
        .attr('x', (b) => x(b.roi) ?? 0)
        .attr('width', x.bandwidth())
        .attr('y', (b) => y(b.value))
        .attr('height', (b) => y(0) - y(b.value))
        .on('mouseover', (event: MouseEvent, b) => {
          const label = `${summary.roi_labels[b.roi]} (${summary.band_names[band]})`;
          this.tooltip.show(label, b.value, event.clientX, event.clientY);
          this.linked.hover({ roi: b.roi });
        })
        .on('mouseout', () => {
          this.tooltip.hide();
          this.linked.hover(null);
        });

      this.root.appendChild(chart);
    }
  }

  private applyHighlight(rois: number[]): void {
    const set = new Set(rois);
    d3.select(this.root)
      .selectAll<SVGRectElement, Bar>('rect.bar')
      .classed('highlight', (b) => set.has(b.roi));
  }

  get element(): HTMLDivElement {
    return this.root;
  }
}
