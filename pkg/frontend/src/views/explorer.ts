/**
 * What-if explorer: a depth slider expands the scenario tree from the
 * session's current state; each first-level branch becomes a card, and
 * clicking a card previews the norms that branch would leave in force —
 * without committing anything to the session.
 */

import { clearChildren, h } from '../dom.js';
import type { ScenarioNodeDoc } from '../types.js';
import { branchCards } from '../viewmodel.js';

export class ExplorerView {
  readonly root: HTMLElement;
  readonly depth: HTMLInputElement;
  private readonly depthLabel: HTMLElement;
  private readonly cardsBox: HTMLElement;
  private readonly preview: HTMLElement;

  constructor(private readonly onExplore: (depth: number) => Promise<void>) {
    this.depth = h('input', {
      type: 'range',
      min: '1',
      max: '4',
      value: '1',
      class: 'depth-slider',
    });
    this.depthLabel = h('span', { class: 'depth-label' }, 'depth 1');
    this.depth.addEventListener('input', () => {
      this.depthLabel.textContent = `depth ${this.depth.value}`;
    });
    this.cardsBox = h('div', { class: 'branch-cards' });
    this.preview = h('div', { class: 'branch-preview' });
    this.root = h(
      'section',
      { class: 'panel explorer-panel' },
      h('h2', {}, 'What if...'),
      h(
        'div',
        { class: 'explorer-toolbar' },
        this.depth,
        this.depthLabel,
        h('button', { class: 'primary', onclick: () => void this.explore() }, 'Explore'),
      ),
      this.cardsBox,
      this.preview,
    );
  }

  async explore(): Promise<void> {
    await this.onExplore(Number(this.depth.value));
  }

  render(tree: ScenarioNodeDoc): void {
    clearChildren(this.cardsBox);
    clearChildren(this.preview);
    const cards = branchCards(tree);
    if (cards.length === 0) {
      this.cardsBox.append(h('div', { class: 'branch-card empty' }, 'no moves from here'));
      return;
    }
    for (const card of cards) {
      const el = h(
        'div',
        { class: `branch-card branch-${card.viaKind}` },
        h('code', { class: 'branch-via' }, card.viaText),
        h('span', { class: 'branch-state' }, card.stateText),
        card.revisit ? h('span', { class: 'branch-revisit' }, 'returns to an earlier state') : null,
      );
      el.addEventListener('click', () => this.showPreview(card.viaText, card.normTexts));
      this.cardsBox.append(el);
    }
  }

  private showPreview(viaText: string, normTexts: string[]): void {
    clearChildren(this.preview);
    this.preview.append(
      h('h3', {}, 'after ', h('code', {}, viaText)),
      normTexts.length
        ? h('ul', {}, ...normTexts.map((t) => h('li', {}, h('code', {}, t))))
        : h('p', {}, 'nothing would remain in force'),
    );
  }
}
