/**
 * State-graph view: SVG rendering of the structured graph document with the
 * deterministic layered layout. The session's current state is highlighted;
 * terminal nodes take their happy/unhappy class from the document. DOT is
 * offered as a download link, not rendered here.
 */

import { clearChildren, h, svgEl } from '../dom.js';
import { layoutGraph } from '../layout.js';
import type { GraphDoc } from '../types.js';

const NODE_W = 170;
const NODE_H = 54;

export class GraphView {
  readonly root: HTMLElement;
  private readonly canvas: HTMLElement;
  private readonly dotLink: HTMLAnchorElement;
  private doc: GraphDoc | null = null;
  private currentKey: string | null = null;

  constructor() {
    this.canvas = h('div', { class: 'graph-canvas' });
    this.dotLink = h('a', { class: 'dot-link', download: 'contract.dot' }, 'download DOT');
    this.dotLink.style.display = 'none';
    this.root = h(
      'section',
      { class: 'panel graph-panel' },
      h('h2', {}, 'State space'),
      this.canvas,
      this.dotLink,
    );
  }

  render(doc: GraphDoc, dotUrl: string): void {
    this.doc = doc;
    this.dotLink.href = dotUrl;
    this.dotLink.style.display = '';
    this.redraw();
  }

  highlight(stateKey: string | null): void {
    this.currentKey = stateKey;
    if (this.doc) this.redraw();
  }

  private redraw(): void {
    const doc = this.doc;
    if (!doc) return;
    clearChildren(this.canvas);
    const layout = layoutGraph(doc);
    const svg = svgEl('svg', {
      viewBox: `0 0 ${layout.width} ${layout.height}`,
      width: String(layout.width),
      height: String(layout.height),
      class: 'graph-svg',
    });

    const marker = svgEl('marker', {
      id: 'arrow',
      viewBox: '0 0 10 10',
      refX: '9',
      refY: '5',
      markerWidth: '7',
      markerHeight: '7',
      orient: 'auto-start-reverse',
    });
    const tip = svgEl('path', { d: 'M 0 0 L 10 5 L 0 10 z', fill: '#666' });
    marker.append(tip);
    const defs = svgEl('defs');
    defs.append(marker);
    svg.append(defs);

    for (const edge of doc.edges) {
      const from = layout.positions.get(edge.source);
      const to = layout.positions.get(edge.target);
      if (!from || !to) continue;
      const selfLoop = edge.source === edge.target;
      const x1 = from.x + NODE_W / 2;
      const y1 = from.y;
      const x2 = to.x - NODE_W / 2;
      const y2 = to.y;
      let path: SVGElement;
      let labelX: number;
      let labelY: number;
      if (selfLoop) {
        path = svgEl('path', {
          d: `M ${from.x + NODE_W / 2} ${y1 - 10} C ${x1 + 60} ${y1 - 40}, ${x1 + 60} ${y1 + 40}, ${x1} ${y1 + 10}`,
          class: 'edge',
          'marker-end': 'url(#arrow)',
          fill: 'none',
        });
        labelX = x1 + 64;
        labelY = y1;
      } else {
        path = svgEl('path', {
          d: `M ${x1} ${y1} C ${x1 + 60} ${y1}, ${x2 - 60} ${y2}, ${x2} ${y2}`,
          class: 'edge',
          'marker-end': 'url(#arrow)',
          fill: 'none',
        });
        labelX = (x1 + x2) / 2;
        labelY = (y1 + y2) / 2 - 6;
      }
      svg.append(path);
      const text = svgEl('text', {
        x: String(labelX),
        y: String(labelY),
        class: `edge-label edge-${edge.label.kind}`,
        'text-anchor': 'middle',
      });
      text.textContent = edge.label.text;
      svg.append(text);
    }

    for (const node of doc.nodes) {
      const pos = layout.positions.get(node.key);
      if (!pos) continue;
      const group = svgEl('g', { class: 'node-group' });
      const classes = ['node'];
      if (node.kind === 'terminated') {
        classes.push(doc.terminals[node.key] === 'happy' ? 'node-happy' : 'node-unhappy');
      }
      if (node.key === doc.initial) classes.push('node-initial');
      if (node.key === this.currentKey) classes.push('node-current');
      const rect = svgEl('rect', {
        x: String(pos.x - NODE_W / 2),
        y: String(pos.y - NODE_H / 2),
        width: String(NODE_W),
        height: String(NODE_H),
        rx: '10',
        class: classes.join(' '),
        'data-key': node.key,
      });
      group.append(rect);
      const lines =
        node.kind === 'terminated' ? [node.text] : (node.norms ?? []).map((n) => n.text);
      const shown = lines.length > 0 ? lines : [node.text];
      shown.slice(0, 3).forEach((line, index) => {
        const text = svgEl('text', {
          x: String(pos.x),
          y: String(pos.y - 8 + index * 15),
          class: 'node-label',
          'text-anchor': 'middle',
        });
        text.textContent = line;
        group.append(text);
      });
      svg.append(group);
    }
    this.canvas.append(svg);
  }
}
