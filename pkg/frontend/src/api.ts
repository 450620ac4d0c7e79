/**
 * Thin fetch client for the tradeforge service.
 *
 * Each function maps to one endpoint and returns the parsed JSON body.
 * Non-2xx responses throw an ApiError carrying the service's error body so
 * controllers can route messages to the right part of the page.
 */

import type {
  ApiErrorBody,
  LeagueSummary,
  RunConfigRequest,
  RunHandle,
  TradeEvaluationBody,
  TradeRequest,
} from './types.js';

let apiBase = '';

/** Point the client at a service origin; '' means same-origin. */
export const setApiBase = (base: string): void => {
  apiBase = base.replace(/\/+$/, '');
};

export const getApiBase = (): string => apiBase;

export class ApiError extends Error {
  readonly status: number;
  readonly body: ApiErrorBody;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.name = 'ApiError';
    this.status = status;
    this.body = body;
  }
}

const request = async <T>(
  method: string,
  path: string,
  body?: string
): Promise<T> => {
  const response = await fetch(apiBase + path, {
    method,
    headers: body === undefined ? undefined : { 'Content-Type': 'application/json' },
    body,
  });
  let payload: unknown = null;
  let parsed = true;
  try {
    payload = await response.json();
  } catch {
    parsed = false;
  }
  if (!response.ok) {
    const fallback: ApiErrorBody = {
      code: 'http_error',
      message: `request failed with status ${response.status}`,
    };
    const errBody =
      payload && typeof payload === 'object' && 'message' in (payload as object)
        ? (payload as ApiErrorBody)
        : fallback;
    throw new ApiError(response.status, errBody);
  }
  if (!parsed) {
    throw new ApiError(response.status, {
      code: 'bad_body',
      message: 'service response was not JSON',
    });
  }
  return payload as T;
};

/** Upload a snapshot JSON document (raw file text) and get the league summary. */
export const uploadSnapshot = (rawJson: string): Promise<LeagueSummary> =>
  request<LeagueSummary>('POST', '/snapshots', rawJson);

export const fetchLeague = (snapshotId: string): Promise<LeagueSummary> =>
  request<LeagueSummary>('GET', `/snapshots/${encodeURIComponent(snapshotId)}/league`);

export const startRun = (
  snapshotId: string,
  config: RunConfigRequest
): Promise<RunHandle> =>
  request<RunHandle>(
    'POST',
    '/runs',
    JSON.stringify({ snapshot_id: snapshotId, config })
  );

export const fetchRun = (runId: string): Promise<RunHandle> =>
  request<RunHandle>('GET', `/runs/${encodeURIComponent(runId)}`);

export const cancelRun = (runId: string): Promise<RunHandle> =>
  request<RunHandle>('DELETE', `/runs/${encodeURIComponent(runId)}`);

/** Evaluate a hand-built trade with the given config (what-if panel). */
export const evaluateTrade = (
  snapshotId: string,
  trade: TradeRequest,
  config: RunConfigRequest
): Promise<TradeEvaluationBody> =>
  request<TradeEvaluationBody>(
    'POST',
    '/evaluate',
    JSON.stringify({ snapshot_id: snapshotId, trade, config })
  );
