/**
 * Contract editor: source textarea, bundled-example picker, and inline
 * diagnostics rendered per line under the text, straight from the gateway.
 */

import { Api, ApiError } from '../api.js';
import { clearChildren, h } from '../dom.js';
import type { Diagnostic } from '../types.js';
import { lineMarkers } from '../viewmodel.js';

export class EditorView {
  readonly root: HTMLElement;
  readonly textarea: HTMLTextAreaElement;
  private readonly picker: HTMLSelectElement;
  private readonly diagnosticsBox: HTMLElement;
  private readonly status: HTMLElement;

  constructor(
    private readonly api: Api,
    private readonly onLoaded: (contractId: string, name: string) => void,
  ) {
    this.textarea = h('textarea', {
      class: 'editor-text',
      rows: '18',
      spellcheck: 'false',
      placeholder: '# write a contract here, or pick an example',
    });
    this.picker = h('select', { class: 'editor-picker' });
    this.picker.append(h('option', { value: '' }, 'load an example...'));
    this.picker.addEventListener('change', () => void this.loadExample());
    this.diagnosticsBox = h('div', { class: 'diagnostics' });
    this.status = h('span', { class: 'editor-status' });
    this.root = h(
      'section',
      { class: 'panel editor-panel' },
      h('h2', {}, 'Contract'),
      h(
        'div',
        { class: 'editor-toolbar' },
        this.picker,
        h('button', { class: 'primary', onclick: () => void this.check() }, 'Check & load'),
        this.status,
      ),
      this.textarea,
      this.diagnosticsBox,
    );
  }

  async init(): Promise<void> {
    try {
      const entries = await this.api.corpus();
      for (const entry of entries) {
        this.picker.append(h('option', { value: entry.name }, entry.name));
      }
    } catch {
      // examples are a convenience; the editor works without them
    }
  }

  private async loadExample(): Promise<void> {
    const name = this.picker.value;
    if (!name) return;
    const entries = await this.api.corpus();
    const entry = entries.find((e) => e.name === name);
    if (entry) this.textarea.value = entry.source;
  }

  setSource(source: string): void {
    this.textarea.value = source;
  }

  async check(): Promise<string | null> {
    clearChildren(this.diagnosticsBox);
    this.status.textContent = 'checking...';
    try {
      const created = await this.api.postContract(this.textarea.value);
      this.renderDiagnostics(created.diagnostics);
      this.status.textContent = `loaded ${created.name} (${created.id})`;
      this.onLoaded(created.id, created.name);
      return created.id;
    } catch (error) {
      this.status.textContent = 'not loaded';
      if (error instanceof ApiError && error.body && typeof error.body === 'object') {
        const body = error.body as { diagnostics?: Diagnostic[]; error?: string };
        this.renderDiagnostics(body.diagnostics ?? []);
        if (!body.diagnostics?.length && body.error) {
          this.diagnosticsBox.append(h('div', { class: 'diag error' }, body.error));
        }
      } else {
        this.diagnosticsBox.append(h('div', { class: 'diag error' }, String(error)));
      }
      return null;
    }
  }

  private renderDiagnostics(diagnostics: Diagnostic[]): void {
    clearChildren(this.diagnosticsBox);
    for (const marker of lineMarkers(diagnostics)) {
      this.diagnosticsBox.append(
        h(
          'div',
          { class: `diag ${marker.severity}`, 'data-line': String(marker.line) },
          h('span', { class: 'diag-line' }, `line ${marker.line}`),
          ...marker.messages.map((m) => h('span', { class: 'diag-message' }, m)),
        ),
      );
    }
  }
}
