/** Thin typed client for the gateway; every view talks through this. */

import type {
  ClockAnswer,
  ContractCreated,
  CorpusEntry,
  EventAnswer,
  EventDoc,
  ExploreTreeAnswer,
  GraphDoc,
  HistoryAnswer,
  StatePayload,
  WhatIfAnswer,
} from './types.js';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: unknown,
    message: string,
  ) {
    super(message);
  }
}

function describe(body: unknown, status: number): string {
  if (body && typeof body === 'object' && 'error' in body) {
    return String((body as { error: unknown }).error);
  }
  return `request failed with status ${status}`;
}

export class Api {
  constructor(
    private readonly base: string = '',
    private readonly fetchFn: FetchLike = (input, init) => globalThis.fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { 'Content-Type': 'application/json' };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.base + path, init);
    const text = await response.text();
    let parsed: unknown = null;
    if (text) {
      try {
        parsed = JSON.parse(text);
      } catch {
        parsed = text;
      }
    }
    if (!response.ok) {
      throw new ApiError(response.status, parsed, describe(parsed, response.status));
    }
    return parsed as T;
  }

  health(): Promise<{ status: string }> {
    return this.request('GET', '/health');
  }

  corpus(): Promise<CorpusEntry[]> {
    return this.request('GET', '/corpus');
  }

  postContract(source: string): Promise<ContractCreated> {
    return this.request('POST', '/contracts', { source });
  }

  graph(contractId: string): Promise<GraphDoc> {
    return this.request('GET', `/contracts/${contractId}/graph?format=structured`);
  }

  graphDotUrl(contractId: string): string {
    return `${this.base}/contracts/${contractId}/graph?format=dot`;
  }

  createSession(contractId: string, epoch = 0, token?: string): Promise<StatePayload> {
    const body: Record<string, unknown> = { contract_id: contractId, epoch };
    if (token) body.token = token;
    return this.request('POST', '/sessions', body);
  }

  state(sessionId: string): Promise<StatePayload> {
    return this.request('GET', `/sessions/${sessionId}/state`);
  }

  postEvent(sessionId: string, event: EventDoc, token?: string): Promise<EventAnswer> {
    const body: Record<string, unknown> = { event };
    if (token) body.token = token;
    return this.request('POST', `/sessions/${sessionId}/events`, body);
  }

  advanceClock(sessionId: string, to: number): Promise<ClockAnswer> {
    return this.request('POST', `/sessions/${sessionId}/clock`, { to });
  }

  history(sessionId: string): Promise<HistoryAnswer> {
    return this.request('GET', `/sessions/${sessionId}/history`);
  }

  exploreDepth(sessionId: string, depth: number): Promise<ExploreTreeAnswer> {
    return this.request('POST', `/sessions/${sessionId}/explore`, { depth });
  }

  exploreEvents(sessionId: string, events: EventDoc[]): Promise<WhatIfAnswer> {
    return this.request('POST', `/sessions/${sessionId}/explore`, { events });
  }
}
