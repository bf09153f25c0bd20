// Connectivity heatmap for the selected band. Cell colors come from the
// edges payload verbatim; zero-strength pairs are simply not drawn.
// Columns follow the bar view's ROI order so the two stay aligned, and a
// symmetric dataset can be reduced to its i < j half.

import * as d3 from 'd3';
import type { DatasetSummary, EdgePayload, EdgesPayload } from '../api';
import { LinkedHighlight } from '../state';
import type { Tooltip } from '../tooltip';

const SIZE = 720;
const MARGIN = 34;

interface Cell {
  i: number; // roi drawn on the row
  j: number; // roi drawn on the column
  strength: number;
  css: string;
}

export class HeatmapView {
  private readonly svg: d3.Selection<SVGSVGElement, unknown, null, undefined>;
  private readonly cellLayer: d3.Selection<SVGGElement, unknown, null, undefined>;
  private readonly markerLayer: d3.Selection<SVGGElement, unknown, null, undefined>;
  private position = new Map<number, number>();
  private cellSize = 0;

  constructor(
    container: HTMLElement,
    private readonly tooltip: Tooltip,
    private readonly linked: LinkedHighlight,
  ) {
    this.svg = d3
      .select(container)
      .append('svg')
      .attr('class', 'heatmap-view')
      .attr('viewBox', `0 0 ${SIZE} ${SIZE}`);
    this.cellLayer = this.svg.append('g').attr('class', 'cells');
    this.markerLayer = this.svg.append('g').attr('class', 'markers');
    this.linked.onChange((target) => {
      if (target === null) this.clearCrosshair();
    });
  }

  render(
    edges: EdgesPayload,
    summary: DatasetSummary,
    order: number[],
    halfOnly: boolean,
  ): void {
    const n = order.length;
    this.position = new Map(order.map((roi, index) => [roi, index]));
    this.cellSize = (SIZE - MARGIN) / n;

    const half = halfOnly && summary.symmetric;
    const cells: Cell[] = [];
    for (const edge of edges.edges) {
      cells.push(this.cell(edge, edge.i, edge.j));
      if (summary.symmetric && !half && edge.i !== edge.j) {
        cells.push(this.cell(edge, edge.j, edge.i));
      }
    }
    const visible = half ? cells.filter((c) => c.i < c.j) : cells;

    this.cellLayer
      .selectAll<SVGRectElement, Cell>('rect.cell')
      .data(visible, (c) => `${c.i}:${c.j}`)
      .join('rect')
      .attr('class', 'cell')
      .attr('data-i', (c) => c.i)
      .attr('data-j', (c) => c.j)
      .attr('x', (c) => MARGIN + (this.position.get(c.j) ?? 0) * this.cellSize)
      .attr('y', (c) => (this.position.get(c.i) ?? 0) * this.cellSize)
      .attr('width', Math.max(this.cellSize - 0.25, 0.5))
      .attr('height', Math.max(this.cellSize - 0.25, 0.5))
      .attr('fill', (c) => c.css)
      .on('mouseover', (event: MouseEvent, c) => {
        const label =
          `${summary.roi_labels[c.i]} - ${summary.roi_labels[c.j]} (${edges.band_name})`;
        this.tooltip.show(label, c.strength, event.clientX, event.clientY);
        this.showCrosshair(c);
        this.linked.hover({ roi: c.i, partner: c.j });
      })
      .on('mouseout', () => {
        this.tooltip.hide();
        this.linked.hover(null);
      });
  }

  private cell(edge: EdgePayload, i: number, j: number): Cell {
    return { i, j, strength: edge.strength, css: edge.color?.css ?? '#888' };
  }

  private showCrosshair(cell: Cell): void {
    const row = this.position.get(cell.i) ?? 0;
    const col = this.position.get(cell.j) ?? 0;
    const extent = this.position.size * this.cellSize;
    const marks = [
      { kind: 'row', x: MARGIN, y: row * this.cellSize, w: extent, h: this.cellSize },
      { kind: 'col', x: MARGIN + col * this.cellSize, y: 0, w: this.cellSize, h: extent },
    ];
    this.markerLayer
      .selectAll<SVGRectElement, (typeof marks)[number]>('rect.crosshair')
      .data(marks, (m) => m.kind)
      .join('rect')
      .attr('class', (m) => `crosshair crosshair-${m.kind}`)
      .attr('x', (m) => m.x)
      .attr('y', (m) => m.y)
      .attr('width', (m) => m.w)
      .attr('height', (m) => m.h);
  }

  private clearCrosshair(): void {
    this.markerLayer.selectAll('rect.crosshair').remove();
  }

  get element(): SVGSVGElement {
    return this.svg.node() as SVGSVGElement;
  }
}
