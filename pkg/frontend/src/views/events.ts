/**
 * Event entry: actor, action, timestamp, and attribute rows; submits to the
 * session and surfaces gateway rejections verbatim. A separate clock widget
 * advances time explicitly; the panel never moves the clock on its own.
 */

import { clearChildren, h } from '../dom.js';
import type { AttrValue, EventDoc } from '../types.js';

export interface EventFormSubmission {
  event: EventDoc;
}

export class EventFormView {
  readonly root: HTMLElement;
  readonly actor: HTMLInputElement;
  readonly act: HTMLInputElement;
  readonly at: HTMLInputElement;
  readonly exercise: HTMLInputElement;
  readonly clockTo: HTMLInputElement;
  private readonly attrRows: HTMLElement;
  private readonly errorBox: HTMLElement;
  private readonly submitButton: HTMLButtonElement;
  private readonly clockButton: HTMLButtonElement;

  constructor(
    private readonly onSubmit: (event: EventDoc) => Promise<void>,
    private readonly onAdvance: (to: number) => Promise<void>,
  ) {
    this.actor = h('input', { type: 'text', placeholder: 'actor (e.g. susan)' });
    this.act = h('input', { type: 'text', placeholder: 'action (proposition name)' });
    this.at = h('input', { type: 'number', min: '0', value: '0' });
    this.exercise = h('input', { type: 'checkbox' });
    this.attrRows = h('div', { class: 'attr-rows' });
    this.errorBox = h('div', { class: 'event-errors' });
    this.submitButton = h(
      'button',
      { class: 'primary', onclick: () => void this.submit() },
      'Report event',
    );
    this.clockTo = h('input', { type: 'number', min: '0', value: '0' });
    this.clockButton = h(
      'button',
      { onclick: () => void this.advance() },
      'Advance clock',
    );
    this.root = h(
      'section',
      { class: 'panel event-panel' },
      h('h2', {}, 'Report performance'),
      h(
        'div',
        { class: 'event-grid' },
        h('label', {}, 'at minute ', this.at),
        h('label', {}, 'actor ', this.actor),
        h('label', {}, 'does ', this.act),
        h('label', { class: 'exercise-toggle' }, this.exercise, ' exercise a power instead'),
      ),
      h(
        'div',
        { class: 'attr-header' },
        'attributes ',
        h('button', { class: 'small', onclick: () => this.addAttrRow() }, '+ attribute'),
      ),
      this.attrRows,
      this.submitButton,
      h(
        'div',
        { class: 'clock-widget' },
        h('label', {}, 'clock to minute ', this.clockTo),
        this.clockButton,
      ),
      this.errorBox,
    );
  }

  addAttrRow(key = '', value = '', kind: 'text' | 'amount' = 'text'): void {
    const keyInput = h('input', { type: 'text', placeholder: 'key', value: key });
    const valueInput = h('input', { type: 'text', placeholder: 'value', value });
    const kindSelect = h('select', {});
    kindSelect.append(h('option', { value: 'text' }, 'text'));
    kindSelect.append(h('option', { value: 'amount' }, 'amount'));
    kindSelect.value = kind;
    const row = h(
      'div',
      { class: 'attr-row' },
      keyInput,
      valueInput,
      kindSelect,
      h('button', { class: 'small', onclick: () => row.remove() }, 'x'),
    );
    this.attrRows.append(row);
  }

  clearAttrs(): void {
    clearChildren(this.attrRows);
  }

  setEnabled(enabled: boolean): void {
    this.submitButton.disabled = !enabled;
    this.actor.disabled = !enabled;
    this.act.disabled = !enabled;
    this.at.disabled = !enabled;
    this.exercise.disabled = !enabled;
  }

  get enabled(): boolean {
    return !this.submitButton.disabled;
  }

  showError(message: string): void {
    clearChildren(this.errorBox);
    this.errorBox.append(h('div', { class: 'diag error' }, message));
  }

  clearError(): void {
    clearChildren(this.errorBox);
  }

  collectAttrs(): Record<string, AttrValue> {
    const attrs: Record<string, AttrValue> = {};
    for (const row of Array.from(this.attrRows.children)) {
      const [keyInput, valueInput, kindSelect] = Array.from(row.children) as [
        HTMLInputElement,
        HTMLInputElement,
        HTMLSelectElement,
      ];
      if (!keyInput.value) continue;
      attrs[keyInput.value] = {
        kind: kindSelect.value === 'amount' ? 'amount' : 'text',
        value: valueInput.value,
      };
    }
    return attrs;
  }

  buildEvent(): EventDoc {
    const at = Number(this.at.value || '0');
    if (this.exercise.checked) {
      return { at, actor: this.actor.value, act: { kind: 'exercise' }, attrs: {} };
    }
    return {
      at,
      actor: this.actor.value,
      act: { kind: 'perform', prop: this.act.value },
      attrs: this.collectAttrs(),
    };
  }

  async submit(): Promise<void> {
    this.clearError();
    try {
      await this.onSubmit(this.buildEvent());
    } catch (error) {
      this.showError(error instanceof Error ? error.message : String(error));
    }
  }

  async advance(): Promise<void> {
    this.clearError();
    try {
      await this.onAdvance(Number(this.clockTo.value || '0'));
    } catch (error) {
      this.showError(error instanceof Error ? error.message : String(error));
    }
  }
}
