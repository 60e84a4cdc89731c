/**
 * Workbench wiring: one contract, one session, five panels. All contract
 * semantics come from the gateway; this class only moves payloads between
 * the API client and the views.
 */

import { Api, ApiError } from './api.js';
import { clearChildren, h } from './dom.js';
import type { StatePayload } from './types.js';
import { EditorView } from './views/editor.js';
import { EventFormView } from './views/events.js';
import { ExplorerView } from './views/explorer.js';
import { GraphView } from './views/graph.js';
import { HistoryView } from './views/history.js';
import { ObligationsView } from './views/obligations.js';

export class Workbench {
  readonly api: Api;
  readonly editor: EditorView;
  readonly graph: GraphView;
  readonly obligations: ObligationsView;
  readonly eventForm: EventFormView;
  readonly explorer: ExplorerView;
  readonly history: HistoryView;
  readonly banner: HTMLElement;
  readonly sessionInfo: HTMLElement;

  contractId: string | null = null;
  sessionId: string | null = null;
  lastState: StatePayload | null = null;
  /** in-flight contract/session setup, awaitable by tests */
  pendingLoad: Promise<void> | null = null;

  constructor(api: Api) {
    this.api = api;
    this.banner = h('div', { class: 'banner' });
    this.banner.style.display = 'none';
    this.sessionInfo = h('div', { class: 'session-info' }, 'no session yet');
    this.editor = new EditorView(api, (contractId) => {
      this.pendingLoad = this.onContractLoaded(contractId);
    });
    this.graph = new GraphView();
    this.obligations = new ObligationsView();
    this.eventForm = new EventFormView(
      (event) => this.submitEvent(event),
      (to) => this.advanceClock(to),
    );
    this.explorer = new ExplorerView((depth) => this.explore(depth));
    this.history = new HistoryView();
    this.eventForm.setEnabled(false);
  }

  mount(root: Element): void {
    clearChildren(root);
    root.append(
      this.banner,
      h(
        'header',
        { class: 'topbar' },
        h('h1', {}, 'pacta workbench'),
        this.sessionInfo,
      ),
      h(
        'main',
        { class: 'columns' },
        h('div', { class: 'column' }, this.editor.root, this.eventForm.root),
        h('div', { class: 'column wide' }, this.graph.root, this.obligations.root),
        h('div', { class: 'column' }, this.explorer.root, this.history.root),
      ),
    );
  }

  async init(): Promise<void> {
    try {
      await this.api.health();
      this.banner.style.display = 'none';
    } catch {
      this.showBanner('gateway unreachable; is `pacta serve` running?');
    }
    await this.editor.init();
  }

  private showBanner(message: string): void {
    clearChildren(this.banner);
    this.banner.style.display = '';
    this.banner.append(
      h('span', {}, message),
      h('button', { class: 'small', onclick: () => void this.init() }, 'retry'),
    );
  }

  async onContractLoaded(contractId: string): Promise<void> {
    this.contractId = contractId;
    const doc = await this.api.graph(contractId);
    this.graph.render(doc, this.api.graphDotUrl(contractId));
    await this.openSession(0);
  }

  /** Programmatic equivalent of typing a contract and pressing Check & load. */
  async loadContract(source: string): Promise<string | null> {
    this.editor.setSource(source);
    const id = await this.editor.check();
    if (this.pendingLoad) await this.pendingLoad;
    return id;
  }

  async openSession(epoch: number): Promise<StatePayload | null> {
    if (!this.contractId) return null;
    const payload = await this.api.createSession(this.contractId, epoch);
    this.sessionId = payload.session_id;
    this.applyState(payload);
    this.history.render([]);
    return payload;
  }

  private applyState(payload: StatePayload): void {
    this.lastState = payload;
    this.sessionInfo.textContent =
      `${payload.contract} / session ${payload.session_id} / minute ${payload.clock}`;
    this.obligations.render(payload);
    this.graph.highlight(payload.state.key);
    const terminated = payload.state.kind === 'terminated';
    this.eventForm.setEnabled(!terminated);
  }

  async refreshState(): Promise<void> {
    if (!this.sessionId) return;
    this.applyState(await this.api.state(this.sessionId));
  }

  async refreshHistory(): Promise<void> {
    if (!this.sessionId) return;
    const answer = await this.api.history(this.sessionId);
    this.history.render(answer.records);
  }

  async submitEvent(event: Parameters<Api['postEvent']>[1]): Promise<void> {
    if (!this.sessionId) throw new Error('open a session first');
    try {
      const answer = await this.api.postEvent(this.sessionId, event);
      this.applyState(answer.state);
      await this.refreshHistory();
    } catch (error) {
      if (error instanceof ApiError) {
        await this.refreshState(); // lapses may have fired even on rejection
        await this.refreshHistory();
      }
      throw error;
    }
  }

  async advanceClock(to: number): Promise<void> {
    if (!this.sessionId) throw new Error('open a session first');
    const answer = await this.api.advanceClock(this.sessionId, to);
    this.applyState(answer.state);
    await this.refreshHistory();
  }

  async explore(depth: number): Promise<void> {
    if (!this.sessionId) throw new Error('open a session first');
    const answer = await this.api.exploreDepth(this.sessionId, depth);
    this.explorer.render(answer.tree);
  }
}

export function start(root: Element, base = ''): Workbench {
  const workbench = new Workbench(new Api(base));
  workbench.mount(root);
  void workbench.init();
  return workbench;
}
