/**
 * Fetch stubbing: route requests to canned responses and record every
 * exchange so tests can check what went over the wire (and, for the
 * no-local-math tests, that everything on screen came back over it).
 */

import { vi } from 'vitest';

export interface RoutedResponse {
  status?: number;
  body: unknown;
}

export type RouteHandler = (
  method: string,
  path: string,
  requestBody: unknown
) => RoutedResponse | undefined;

export interface RecordedExchange {
  method: string;
  path: string;
  requestBody: unknown;
  status: number;
  responseBody: unknown;
}

const stripOrigin = (url: string): string => url.replace(/^https?:\/\/[^/]+/, '');

const parseMaybeJson = (raw: unknown): unknown => {
  if (typeof raw !== 'string') return raw;
  try {
    return JSON.parse(raw);
  } catch {
    return raw;
  }
};

/** Replace global fetch with a router; returns the exchange log. */
export const installFetchStub = (handler: RouteHandler): RecordedExchange[] => {
  const exchanges: RecordedExchange[] = [];
  vi.stubGlobal(
    'fetch',
    async (url: string | URL, init?: RequestInit): Promise<Response> => {
      const method = init?.method ?? 'GET';
      const path = stripOrigin(String(url));
      const requestBody = parseMaybeJson(init?.body);
      const routed = handler(method, path, requestBody);
      if (!routed) {
        throw new Error(`no route for ${method} ${path}`);
      }
      const status = routed.status ?? 200;
      exchanges.push({ method, path, requestBody, status, responseBody: routed.body });
      return new Response(JSON.stringify(routed.body), {
        status,
        headers: { 'Content-Type': 'application/json' },
      });
    }
  );
  return exchanges;
};

/**
 * Wrap the real fetch, recording every JSON response body. Used by the
 * live-service tests to prove displayed numbers arrived over the wire.
 */
export const installRecordingFetch = (): unknown[] => {
  const real = globalThis.fetch.bind(globalThis);
  const responses: unknown[] = [];
  vi.stubGlobal(
    'fetch',
    async (url: string | URL, init?: RequestInit): Promise<Response> => {
      const response = await real(url, init);
      // Read the body once and hand the consumer a rebuilt response;
      // happy-dom's clone() can drop bytes that are still in flight.
      const text = await response.text();
      try {
        responses.push(JSON.parse(text));
      } catch {
        // non-JSON body; nothing to record
      }
      return new Response(text, { status: response.status, headers: response.headers });
    }
  );
  return responses;
};

/** Every number reachable inside a JSON-ish value. */
export const collectNumbers = (value: unknown, into: number[] = []): number[] => {
  if (typeof value === 'number') {
    into.push(value);
  } else if (Array.isArray(value)) {
    for (const item of value) collectNumbers(item, into);
  } else if (value && typeof value === 'object') {
    for (const item of Object.values(value)) collectNumbers(item, into);
  }
  return into;
};
