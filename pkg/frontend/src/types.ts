/**
 * Wire types for the pacta gateway. These mirror the JSON documented in the
 * gateway README; the workbench renders the server's `text` and `display`
 * strings verbatim and never re-derives contract semantics client-side.
 */

export interface TerminatedEffect {
  kind: 'terminated';
  outcome: 'happy' | 'unhappy';
}

export interface ObligationAtom {
  kind: 'obligation';
  bearer: string;
  prop: string;
  text: string;
}

export interface PowerAtom {
  kind: 'power';
  bearer: string;
  effect: ObligationAtom | TerminatedEffect;
  text: string;
}

export type NormAtom = ObligationAtom | PowerAtom;

export interface Qualifier {
  kind: 'before' | 'after' | 'between';
  t?: number;
  t1?: number;
  t2?: number;
}

export interface Refinement {
  nonconforming: boolean;
  late: boolean;
  wrong_performer: boolean;
  lapse: boolean;
}

export interface Label {
  kind: 'fulfil' | 'violate' | 'exercise';
  agent: string;
  prop?: string;
  refinement?: Refinement | null;
  effect?: ObligationAtom | TerminatedEffect;
  qualifier: Qualifier | null;
  text: string;
}

export interface StateDoc {
  kind: 'active' | 'terminated';
  key: string;
  norms?: NormAtom[];
  outcome?: 'happy' | 'unhappy';
  text: string;
}

export interface Diagnostic {
  severity: 'error' | 'warning';
  message: string;
  line: number;
  col_start: number;
  col_end: number;
}

export interface ContractCreated {
  id: string;
  name: string;
  diagnostics: Diagnostic[];
}

export interface GraphDoc {
  contract: string;
  initial: string;
  nodes: StateDoc[];
  edges: { source: string; label: Label; target: string }[];
  terminals: Record<string, 'happy' | 'unhappy'>;
}

export interface NormEntry extends Record<string, unknown> {
  kind: 'obligation' | 'power';
  text: string;
  deadline: number | null;
  display: string;
}

export interface StatePayload {
  session_id: string;
  contract_id: string;
  contract: string;
  epoch: number;
  clock: number;
  state: StateDoc;
  norms: NormEntry[];
  record_count: number;
}

export interface AttrValue {
  kind: 'text' | 'amount';
  value: string;
}

export interface EventDoc {
  at: number;
  actor: string | null;
  act:
    | { kind: 'perform'; prop: string }
    | { kind: 'tick' }
    | { kind: 'exercise'; effect?: unknown };
  attrs: Record<string, AttrValue>;
}

export interface RecordDoc {
  at: number;
  trigger: 'event' | 'lapse';
  event: EventDoc | null;
  label: Label;
  before_key: string;
  after_key: string;
  activated: NormAtom[];
  discharged: NormAtom[];
}

export interface EventAnswer {
  record: RecordDoc | null;
  lapses: RecordDoc[];
  state: StatePayload;
}

export interface ClockAnswer {
  records: RecordDoc[];
  state: StatePayload;
}

export interface HistoryAnswer {
  session_id: string;
  records: RecordDoc[];
  rejected: { event: EventDoc; reason: string }[];
}

export interface ScenarioNodeDoc {
  state: StateDoc;
  via: Label | null;
  revisit: string | null;
  children: ScenarioNodeDoc[];
}

export interface ExploreTreeAnswer {
  tree: ScenarioNodeDoc;
}

export interface WhatIfAnswer {
  state: StateDoc;
  records: RecordDoc[];
  errors: { index: number; reason: string }[];
}

export interface CorpusEntry {
  name: string;
  source: string;
}
