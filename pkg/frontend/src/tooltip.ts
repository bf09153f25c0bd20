// One floating tooltip for the whole dashboard. The value element always
// carries the exact service value text, untouched by any formatting.

import { formatExactValue } from './api';

export class Tooltip {
  private readonly el: HTMLDivElement;
  private readonly labelEl: HTMLSpanElement;
  private readonly valueEl: HTMLSpanElement;

  constructor(parent: HTMLElement = document.body) {
    this.el = document.createElement('div');
    this.el.className = 'tooltip hidden';
    this.labelEl = document.createElement('span');
    this.labelEl.className = 'tooltip-label';
    this.valueEl = document.createElement('span');
    this.valueEl.className = 'tooltip-value';
    this.el.append(this.labelEl, ' ', this.valueEl);
    parent.appendChild(this.el);
  }

  show(label: string, value: number, x: number, y: number): void {
    this.labelEl.textContent = label;
    this.valueEl.textContent = formatExactValue(value);
    this.el.style.left = `${x + 12}px`;
    this.el.style.top = `${y + 12}px`;
    this.el.classList.remove('hidden');
  }

  hide(): void {
    this.el.classList.add('hidden');
  }

  get element(): HTMLDivElement {
    return this.el;
  }
}
