// Schematic brain: ROI dots in three orthographic projections
// (superior, lateral, posterior). Points arrive in the unit square.

import * as d3 from 'd3';
import type { BrainPayload, BrainViewName } from '../api';
import { LinkedHighlight } from '../state';

const SIZE = 110;
const PAD = 8;

export class BrainView {
  private readonly root: HTMLDivElement;
  private readonly panels = new Map<
    BrainViewName,
    d3.Selection<SVGSVGElement, unknown, null, undefined>
  >();

  constructor(container: HTMLElement, private readonly linked: LinkedHighlight) {
    this.root = document.createElement('div');
    this.root.className = 'brain-view';
    container.appendChild(this.root);
    this.linked.onChange((target) => this.applyHighlight(LinkedHighlight.rois(target)));
  }

  render(payloads: BrainPayload[]): void {
    for (const payload of payloads) {
      let svg = this.panels.get(payload.view);
      if (!svg) {
        const panel = document.createElement('figure');
        panel.className = 'brain-panel';
        const caption = document.createElement('figcaption');
        caption.textContent = payload.view;
        svg = d3
          .select(panel)
          .append('svg')
          .attr('viewBox', `0 0 ${SIZE} ${SIZE}`)
          .attr('class', `brain brain-${payload.view}`);
        panel.appendChild(caption);
        this.root.appendChild(panel);
        this.panels.set(payload.view, svg);
      }
      const scale = d3.scaleLinear().domain([0, 1]).range([PAD, SIZE - PAD]);
      svg
        .selectAll<SVGCircleElement, [number, number]>('circle.roi-dot')
        .data(payload.points)
        .join('circle')
        .attr('class', 'roi-dot')
        .attr('data-roi', (_p, roi) => roi)
        .attr('cx', (p) => scale(p[0]))
        .attr('cy', (p) => SIZE - scale(p[1]))
        .attr('r', 2.2)
        .on('mouseover', (event: MouseEvent) => {
          const roi = Number((event.currentTarget as SVGCircleElement).dataset.roi);
          this.linked.hover({ roi });
        })
        .on('mouseout', () => this.linked.hover(null));
    }
  }

  private applyHighlight(rois: number[]): void {
    const set = new Set(rois);
    for (const svg of this.panels.values()) {
      svg.selectAll<SVGCircleElement, [number, number]>('circle.roi-dot').classed(
        'highlight',
        function () {
          return set.has(Number(this.dataset.roi));
        },
      );
    }
  }

  get element(): HTMLDivElement {
    return this.root;
  }
}
