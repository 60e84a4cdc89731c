import { describe, expect, it } from 'vitest';

import { layerAssignment, layoutGraph } from '../src/layout.js';
import type { GraphDoc, Label } from '../src/types.js';

function label(text: string): Label {
  return { kind: 'fulfil', agent: 'a', prop: 'p', qualifier: null, text };
}

const DIAMOND: GraphDoc = {
  contract: 'demo',
  initial: 'k0',
  nodes: [
    { kind: 'active', key: 'k0', norms: [], text: '{}' },
    { kind: 'active', key: 'k1', norms: [], text: '{}' },
    { kind: 'active', key: 'k2', norms: [], text: '{}' },
    { kind: 'terminated', key: 'k3', outcome: 'happy', text: 'terminated happy' },
  ],
  edges: [
    { source: 'k0', label: label('a'), target: 'k1' },
    { source: 'k0', label: label('b'), target: 'k2' },
    { source: 'k1', label: label('c'), target: 'k3' },
    { source: 'k2', label: label('d'), target: 'k3' },
  ],
  terminals: { k3: 'happy' },
};

describe('layer assignment', () => {
  it('uses shortest distance from the initial node', () => {
    const layers = layerAssignment(DIAMOND);
    expect(layers.get('k0')).toBe(0);
    expect(layers.get('k1')).toBe(1);
    expect(layers.get('k2')).toBe(1);
    expect(layers.get('k3')).toBe(2);
  });

  it('parks unreachable nodes in a trailing layer', () => {
    const doc: GraphDoc = {
      ...DIAMOND,
      nodes: [...DIAMOND.nodes, { kind: 'active', key: 'island', norms: [], text: '{}' }],
    };
    const layers = layerAssignment(doc);
    expect(layers.get('island')).toBe(3);
  });
});

describe('layout', () => {
  it('is deterministic', () => {
    const first = layoutGraph(DIAMOND);
    const second = layoutGraph(DIAMOND);
    expect([...first.positions.entries()]).toEqual([...second.positions.entries()]);
  });

  it('separates nodes in the same layer and orders them by key', () => {
    const layout = layoutGraph(DIAMOND);
    const k1 = layout.positions.get('k1')!;
    const k2 = layout.positions.get('k2')!;
    expect(k1.x).toBe(k2.x);
    expect(k1.y).toBeLessThan(k2.y); // 'k1' sorts before 'k2'
    expect(layout.width).toBeGreaterThan(0);
    expect(layout.height).toBeGreaterThan(0);
  });

  it('gives every node a position', () => {
    const layout = layoutGraph(DIAMOND);
    for (const node of DIAMOND.nodes) {
      expect(layout.positions.has(node.key)).toBe(true);
    }
  });
});
