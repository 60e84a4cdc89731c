/**
 * Pure derivations from gateway payloads to what the panels show.
 *
 * Deliberately dumb: every semantic string (norm, label, state text) is
 * passed through from the server untouched; the only client-side arithmetic
 * is deadline countdowns against the session clock.
 */

import type {
  Diagnostic,
  NormEntry,
  ScenarioNodeDoc,
  StatePayload,
} from './types.js';

export interface ObligationRow {
  text: string;
  display: string;
  deadline: number | null;
  /** minutes until the deadline; negative means it has passed */
  remaining: number | null;
  kind: 'obligation' | 'power';
}

export function obligationRows(payload: StatePayload): ObligationRow[] {
  return payload.norms.map((norm: NormEntry) => ({
    text: norm.text,
    display: norm.display,
    deadline: norm.deadline,
    remaining: norm.deadline === null ? null : norm.deadline - payload.clock,
    kind: norm.kind,
  }));
}

export function countdownText(remaining: number | null): string {
  if (remaining === null) return 'no deadline';
  if (remaining < 0) return `deadline passed ${-remaining} min ago`;
  return `${remaining} min left`;
}

export interface TerminalBadge {
  outcome: 'happy' | 'unhappy';
  text: string;
}

export function terminalBadge(payload: StatePayload): TerminalBadge | null {
  if (payload.state.kind !== 'terminated') return null;
  return { outcome: payload.state.outcome as 'happy' | 'unhappy', text: payload.state.text };
}

export interface BranchCard {
  viaText: string;
  viaKind: 'fulfil' | 'violate' | 'exercise';
  stateText: string;
  stateKey: string;
  normTexts: string[];
  revisit: string | null;
}

/** One card per first-level branch of an exploration tree. */
export function branchCards(tree: ScenarioNodeDoc): BranchCard[] {
  return tree.children.map((child) => ({
    viaText: child.via ? child.via.text : '',
    viaKind: child.via ? child.via.kind : 'fulfil',
    stateText: child.state.text,
    stateKey: child.state.key,
    normTexts: (child.state.norms ?? []).map((n) => n.text),
    revisit: child.revisit,
  }));
}

export interface LineMarker {
  line: number;
  severity: 'error' | 'warning';
  messages: string[];
}

/** Group diagnostics by source line for inline display next to the editor. */
export function lineMarkers(diagnostics: Diagnostic[]): LineMarker[] {
  const byLine = new Map<number, LineMarker>();
  for (const diag of diagnostics) {
    const marker = byLine.get(diag.line) ?? {
      line: diag.line,
      severity: 'warning' as const,
      messages: [],
    };
    marker.messages.push(`${diag.col_start}: ${diag.message}`);
    if (diag.severity === 'error') marker.severity = 'error';
    byLine.set(diag.line, marker);
  }
  return [...byLine.values()].sort((a, b) => a.line - b.line);
}
