// Shared view state: the linked-highlight hub and the prototype toggle.
// Hovering an element in any view highlights the same ROI(s) everywhere.

export type Prototype = 'A' | 'B';

export interface HoverTarget {
  /** Primary ROI under the cursor. */
  roi: number;
  /** Second ROI for edge-like targets (chords, heatmap cells). */
  partner?: number;
}

export type HoverListener = (target: HoverTarget | null) => void;

/** Single-target hover state fanned out to every registered view. */
export class LinkedHighlight {
  private listeners: HoverListener[] = [];
  private current: HoverTarget | null = null;

  onChange(listener: HoverListener): void {
    this.listeners.push(listener);
  }

  hover(target: HoverTarget | null): void {
    this.current = target;
    for (const listener of this.listeners) {
      listener(target);
    }
  }

  get target(): HoverTarget | null {
    return this.current;
  }

  /** ROI ids a view should highlight for the current target. */
  static rois(target: HoverTarget | null): number[] {
    if (target === null) return [];
    return target.partner !== undefined && target.partner !== target.roi
      ? [target.roi, target.partner]
      : [target.roi];
  }
}
