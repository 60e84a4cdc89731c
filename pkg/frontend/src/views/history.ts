/** Timeline of everything that has happened in the session. */

import { clearChildren, h } from '../dom.js';
import type { RecordDoc } from '../types.js';

export class HistoryView {
  readonly root: HTMLElement;
  private readonly list: HTMLElement;

  constructor() {
    this.list = h('ol', { class: 'history-list' });
    this.root = h(
      'section',
      { class: 'panel history-panel' },
      h('h2', {}, 'Timeline'),
      this.list,
    );
  }

  render(records: RecordDoc[]): void {
    clearChildren(this.list);
    if (records.length === 0) {
      this.list.append(h('li', { class: 'history-row empty' }, 'nothing yet'));
      return;
    }
    for (const record of records) {
      this.list.append(
        h(
          'li',
          { class: `history-row history-${record.trigger}` },
          h('span', { class: 'history-at' }, `t=${record.at}`),
          h('span', { class: 'history-trigger' }, record.trigger),
          h('code', { class: 'history-label' }, record.label.text),
          ...record.discharged.map((a) => h('code', { class: 'history-minus' }, `- ${a.text}`)),
          ...record.activated.map((a) => h('code', { class: 'history-plus' }, `+ ${a.text}`)),
        ),
      );
    }
  }
}
