// Distribution panels with range brushing. The metric panel shows one
// histogram per band on a shared count scale; the connectivity panel shows
// the selected band's strength distribution. Brushes translate pixel
// extents back into value ranges and hand them to the dashboard, which
// owns the session round-trip.

import * as d3 from 'd3';
import type { HistogramsPayload } from '../api';

const WIDTH = 190;
const HEIGHT = 80;
const MARGIN = { top: 4, right: 6, bottom: 14, left: 6 };

export type RangeCallback = (band: number, range: [number, number] | null) => void;

export class HistogramPanel {
  private readonly root: HTMLDivElement;
  private payload: HistogramsPayload | null = null;

  constructor(
    container: HTMLElement,
    title: string,
    private readonly onRange: RangeCallback,
  ) {
    this.root = document.createElement('div');
    this.root.className = 'histogram-panel';
    const heading = document.createElement('h3');
    heading.textContent = title;
    this.root.appendChild(heading);
    container.appendChild(this.root);
  }

  render(payload: HistogramsPayload): void {
    this.payload = payload;
    this.root.querySelectorAll('.histogram-chart').forEach((el) => el.remove());

    const [lo, hi] = payload.domain;
    const x = d3.scaleLinear().domain([lo, hi]).range([MARGIN.left, WIDTH - MARGIN.right]);
    const y = d3
      .scaleLinear()
      .domain([0, Math.max(payload.shared_max, 1)])
      .range([HEIGHT - MARGIN.bottom, MARGIN.top]);

    for (const hist of payload.histograms) {
      const chart = document.createElement('div');
      chart.className = 'histogram-chart';
      chart.dataset.band = String(hist.band);

      const caption = document.createElement('span');
      caption.className = 'histogram-caption';
      caption.textContent = hist.band_name;
      chart.appendChild(caption);

      const svg = d3
        .select(chart)
        .append('svg')
        .attr('viewBox', `0 0 ${WIDTH} ${HEIGHT}`)
        .attr('class', `histogram band-${hist.band}`);

      svg
        .selectAll('rect.bin')
        .data(hist.counts)
        .join('rect')
        .attr('class', 'bin')
        .attr('x', (_c, k) => x(hist.bin_edges[k]))
        .attr('width', (_c, k) => Math.max(x(hist.bin_edges[k + 1]) - x(hist.bin_edges[k]) - 0.5, 0.5))
        .attr('y', (c) => y(c))
        .attr('height', (c) => y(0) - y(c));

      const brush = d3
        .brushX<unknown>()
        .extent([
          [MARGIN.left, MARGIN.top],
          [WIDTH - MARGIN.right, HEIGHT - MARGIN.bottom],
        ])
        .on('end', (event: d3.D3BrushEvent<unknown>) => {
          if (!event.selection) {
            this.selectValueRange(hist.band, null);
            return;
          }
          const [px0, px1] = event.selection as [number, number];
          this.selectValueRange(hist.band, [x.invert(px0), x.invert(px1)]);
        });
      svg.append('g').attr('class', 'brush').call(brush);

      this.root.appendChild(chart);
    }
  }

  /** Shared path for brush-end and the top-X% buttons; null clears. */
  selectValueRange(band: number, range: [number, number] | null): void {
    this.onRange(band, range);
  }

  get bands(): number[] {
    return this.payload?.histograms.map((h) => h.band) ?? [];
  }

  get element(): HTMLDivElement {
    return this.root;
  }
}
