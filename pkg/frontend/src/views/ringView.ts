// Layered ring: B concentric rings of N segments colored by metric value,
// connectivity chords inside the innermost circle, and outer arcs marking
// subnetworks. All geometry and colors come from the service; this view
// only converts polar coordinates to SVG paths.

import * as d3 from 'd3';
import type { DatasetSummary, EdgesPayload, RingPayload, RingSegmentPayload } from '../api';
import { LinkedHighlight } from '../state';
import type { Tooltip } from '../tooltip';

export interface RingViewOptions {
  onBandSelect?: (band: number) => void;
}

/** Server angles are clockwise from 12 o'clock with y up; SVG has y down. */
function polar(angle: number, radius: number): [number, number] {
  return [radius * Math.sin(angle), -radius * Math.cos(angle)];
}

function segmentPath(seg: RingSegmentPayload): string {
  const [x0, y0] = polar(seg.start_angle, seg.outer_radius);
  const [x1, y1] = polar(seg.end_angle, seg.outer_radius);
  const [x2, y2] = polar(seg.end_angle, seg.inner_radius);
  const [x3, y3] = polar(seg.start_angle, seg.inner_radius);
  const large = seg.end_angle - seg.start_angle > Math.PI ? 1 : 0;
  return (
    `M${x0},${y0}` +
    `A${seg.outer_radius},${seg.outer_radius} 0 ${large} 1 ${x1},${y1}` +
    `L${x2},${y2}` +
    `A${seg.inner_radius},${seg.inner_radius} 0 ${large} 0 ${x3},${y3}Z`
  );
}

export class RingView {
  private readonly svg: d3.Selection<SVGSVGElement, unknown, null, undefined>;
  private readonly chordLayer: d3.Selection<SVGGElement, unknown, null, undefined>;
  private readonly segmentLayer: d3.Selection<SVGGElement, unknown, null, undefined>;
  private readonly subnetLayer: d3.Selection<SVGGElement, unknown, null, undefined>;
  private summary: DatasetSummary | null = null;

  constructor(
    container: HTMLElement,
    private readonly tooltip: Tooltip,
    private readonly linked: LinkedHighlight,
    private readonly options: RingViewOptions = {},
  ) {
    this.svg = d3
      .select(container)
      .append('svg')
      .attr('class', 'ring-view')
      .attr('viewBox', '-1.05 -1.05 2.1 2.1');
    this.chordLayer = this.svg.append('g').attr('class', 'chords');
    this.segmentLayer = this.svg.append('g').attr('class', 'segments');
    this.subnetLayer = this.svg.append('g').attr('class', 'subnetworks');
    this.linked.onChange((target) => this.applyHighlight(LinkedHighlight.rois(target)));
  }

  render(ring: RingPayload, summary: DatasetSummary): void {
    this.summary = summary;

    this.segmentLayer
      .selectAll<SVGPathElement, RingSegmentPayload>('path.segment')
      .data(ring.segments, (s) => `${s.band}:${s.roi}`)
      .join('path')
      .attr('class', (s) => `segment band-${s.band}${s.active ? '' : ' inactive'}`)
      .attr('data-band', (s) => s.band)
      .attr('data-roi', (s) => s.roi)
      .attr('d', segmentPath)
      .attr('fill', (s) => (s.active ? s.color.css : '#e4e4e4'))
      .on('mouseover', (event: MouseEvent, s) => {
        const label = `${summary.roi_labels[s.roi]} (${summary.band_names[s.band]})`;
        this.tooltip.show(label, s.value, event.clientX, event.clientY);
        this.linked.hover({ roi: s.roi });
      })
      .on('mouseout', () => {
        this.tooltip.hide();
        this.linked.hover(null);
      })
      .on('click', (_event, s) => this.options.onBandSelect?.(s.band));

    this.subnetLayer
      .selectAll<SVGPathElement, RingPayload['subnetwork_arcs'][number]>('path.subnetwork-arc')
      .data(ring.subnetwork_arcs, (a) => a.name)
      .join('path')
      .attr('class', 'subnetwork-arc')
      .attr('data-name', (a) => a.name)
      .attr('d', (a) => {
        const [x0, y0] = polar(a.start_angle, a.radius);
        const [x1, y1] = polar(a.end_angle, a.radius);
        const large = a.end_angle - a.start_angle > Math.PI ? 1 : 0;
        return `M${x0},${y0}A${a.radius},${a.radius} 0 ${large} 1 ${x1},${y1}`;
      });
  }

  /** Chords for the selected band, curved toward the center. */
  renderChords(edges: EdgesPayload): void {
    this.chordLayer
      .selectAll<SVGPathElement, EdgesPayload['edges'][number]>('path.chord')
      .data(edges.edges, (e) => `${e.i}:${e.j}`)
      .join('path')
      .attr('class', 'chord')
      .attr('data-i', (e) => e.i)
      .attr('data-j', (e) => e.j)
      .attr('d', (e) => {
        const [[x0, y0], [x1, y1]] = e.endpoints ?? [
          [0, 0],
          [0, 0],
        ];
        return `M${x0},${-y0}Q0,0 ${x1},${-y1}`;
      })
      .attr('stroke', (e) => e.color?.css ?? '#999')
      .on('mouseover', (event: MouseEvent, e) => {
        const labels = this.summary?.roi_labels ?? [];
        const label = `${labels[e.i] ?? e.i} - ${labels[e.j] ?? e.j} (${edges.band_name})`;
        this.tooltip.show(label, e.strength, event.clientX, event.clientY);
        this.linked.hover({ roi: e.i, partner: e.j });
      })
      .on('mouseout', () => {
        this.tooltip.hide();
        this.linked.hover(null);
      });
  }

  private applyHighlight(rois: number[]): void {
    const set = new Set(rois);
    this.segmentLayer
      .selectAll<SVGPathElement, RingSegmentPayload>('path.segment')
      .classed('highlight', (s) => set.has(s.roi));
    this.chordLayer
      .selectAll<SVGPathElement, EdgesPayload['edges'][number]>('path.chord')
      .classed('highlight', (e) => set.has(e.i) || set.has(e.j));
  }

  get element(): SVGSVGElement {
    return this.svg.node() as SVGSVGElement;
  }
}
