/**
 * Obligations panel: the norms in force right now, each with the server's
 * display sentence and a deadline countdown against the session clock.
 */

import { clearChildren, h } from '../dom.js';
import type { StatePayload } from '../types.js';
import { countdownText, obligationRows, terminalBadge } from '../viewmodel.js';

export class ObligationsView {
  readonly root: HTMLElement;
  private readonly clockBox: HTMLElement;
  private readonly list: HTMLElement;
  private readonly badge: HTMLElement;

  constructor() {
    this.clockBox = h('div', { class: 'clock-box' });
    this.list = h('ul', { class: 'norm-list' });
    this.badge = h('div', { class: 'terminal-badge' });
    this.badge.style.display = 'none';
    this.root = h(
      'section',
      { class: 'panel obligations-panel' },
      h('h2', {}, 'In force'),
      this.clockBox,
      this.badge,
      this.list,
    );
  }

  render(payload: StatePayload): void {
    this.clockBox.textContent = `clock: minute ${payload.clock}`;
    clearChildren(this.list);
    const badge = terminalBadge(payload);
    if (badge) {
      this.badge.style.display = '';
      this.badge.className = `terminal-badge badge-${badge.outcome}`;
      this.badge.textContent = badge.text;
      return;
    }
    this.badge.style.display = 'none';
    const rows = obligationRows(payload);
    if (rows.length === 0) {
      this.list.append(h('li', { class: 'norm-row empty' }, 'nothing in force'));
      return;
    }
    for (const row of rows) {
      this.list.append(
        h(
          'li',
          { class: `norm-row norm-${row.kind}` },
          h('code', { class: 'norm-text' }, row.text),
          h('span', { class: 'norm-display' }, row.display),
          h(
            'span',
            { class: 'norm-deadline', 'data-derived': 'countdown' },
            countdownText(row.remaining),
          ),
        ),
      );
    }
  }
}
