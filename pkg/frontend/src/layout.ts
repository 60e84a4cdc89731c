/**
 * Deterministic layered layout for the state graph.
 *
 * Layers are shortest-path depth from the initial node; unreachable nodes
 * (possible only in degenerate documents) go to a trailing layer. Within a
 * layer, nodes sort by key. Pure function of the document, so two renders
 * of the same graph always coincide.
 */

import type { GraphDoc } from './types.js';

export interface NodePosition {
  key: string;
  x: number;
  y: number;
  layer: number;
}

export interface GraphLayout {
  positions: Map<string, NodePosition>;
  width: number;
  height: number;
}

export const COLUMN_WIDTH = 220;
export const ROW_HEIGHT = 90;
export const MARGIN = 60;

export function layerAssignment(doc: GraphDoc): Map<string, number> {
  const adjacency = new Map<string, string[]>();
  for (const node of doc.nodes) adjacency.set(node.key, []);
  for (const edge of doc.edges) {
    adjacency.get(edge.source)?.push(edge.target);
  }
  const layers = new Map<string, number>();
  layers.set(doc.initial, 0);
  const queue = [doc.initial];
  while (queue.length > 0) {
    const key = queue.shift() as string;
    const depth = layers.get(key) as number;
    for (const next of adjacency.get(key) ?? []) {
      if (!layers.has(next)) {
        layers.set(next, depth + 1);
        queue.push(next);
      }
    }
  }
  const fallback = Math.max(0, ...layers.values()) + 1;
  for (const node of doc.nodes) {
    if (!layers.has(node.key)) layers.set(node.key, fallback);
  }
  return layers;
}

export function layoutGraph(doc: GraphDoc): GraphLayout {
  const layers = layerAssignment(doc);
  const byLayer = new Map<number, string[]>();
  for (const node of doc.nodes) {
    const layer = layers.get(node.key) as number;
    const bucket = byLayer.get(layer) ?? [];
    bucket.push(node.key);
    byLayer.set(layer, bucket);
  }
  const positions = new Map<string, NodePosition>();
  let maxRows = 1;
  for (const [layer, keys] of byLayer) {
    keys.sort();
    maxRows = Math.max(maxRows, keys.length);
    keys.forEach((key, index) => {
      positions.set(key, {
        key,
        layer,
        x: MARGIN + layer * COLUMN_WIDTH,
        y: MARGIN + index * ROW_HEIGHT,
      });
    });
  }
  const maxLayer = Math.max(0, ...byLayer.keys());
  return {
    positions,
    width: MARGIN * 2 + (maxLayer + 1) * COLUMN_WIDTH,
    height: MARGIN * 2 + maxRows * ROW_HEIGHT,
  };
}
