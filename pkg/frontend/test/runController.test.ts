import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';

import { bindRunList, getSelectedRun, resetRunState, trackRun } from '../src/runController.js';
import { queuedHandle } from './fixtures.js';
import type { RunHandle } from '../src/types.js';

let container: HTMLElement;

beforeEach(() => {
  vi.useFakeTimers();
  document.body.innerHTML = '<div id="runs"></div>';
  container = document.querySelector('#runs') as HTMLElement;
});

afterEach(() => {
  resetRunState();
  vi.useRealTimers();
  vi.unstubAllGlobals();
});

interface WireLog {
  gets: number;
  deletes: number;
}

/** Serve poll responses in order (last repeats); DELETE gets its own body. */
const stubRunWire = (
  polls: RunHandle[],
  onDelete: () => { status?: number; body: unknown }
): WireLog => {
  const log: WireLog = { gets: 0, deletes: 0 };
  vi.stubGlobal('fetch', async (_url: string | URL, init?: RequestInit): Promise<Response> => {
    if ((init?.method ?? 'GET') === 'DELETE') {
      log.deletes += 1;
      const routed = onDelete();
      return new Response(JSON.stringify(routed.body), { status: routed.status ?? 200 });
    }
    log.gets += 1;
    const handle = polls[Math.min(log.gets - 1, polls.length - 1)] as RunHandle;
    return new Response(JSON.stringify(handle), { status: 200 });
  });
  return log;
};

const running = (done: number): RunHandle =>
  queuedHandle({ state: 'running', progress: { done, total: 100 } });

const cancelled = (): RunHandle =>
  queuedHandle({ state: 'failed', progress: { done: 7, total: 100 }, reason: 'cancelled' });

const clickCancel = (): void => {
  const btn = container.querySelector<HTMLButtonElement>('[data-role="cancelBtn"]');
  expect(btn).not.toBeNull();
  btn?.click();
};

describe('cancelling runs', () => {
  it('keeps polling a running run until the service reports the final state', async () => {
    const log = stubRunWire([running(5), cancelled()], () => ({ body: running(6) }));
    bindRunList(container, { onRunsChanged: () => undefined });
    trackRun(running(0), {});
    await vi.advanceTimersByTimeAsync(0);

    clickCancel();
    await vi.advanceTimersByTimeAsync(0);
    expect(log.deletes).toBe(1);
    // DELETE answered with a still-running handle, so the card must not
    // freeze there: the next poll delivers the cancelled state.
    expect(container.textContent).toContain('running');
    await vi.advanceTimersByTimeAsync(1000);
    expect(container.textContent).toContain('failed');
    expect(container.textContent).toContain('cancelled');
    expect(container.querySelector('[data-role="cancelBtn"]')).toBeNull();

    const gets = log.gets;
    await vi.advanceTimersByTimeAsync(5000);
    expect(log.gets).toBe(gets);
  });

  it('stops polling when a queued run is cancelled before it starts', async () => {
    const log = stubRunWire([queuedHandle()], () => ({ body: cancelled() }));
    bindRunList(container, { onRunsChanged: () => undefined });
    trackRun(queuedHandle(), {});
    await vi.advanceTimersByTimeAsync(0);

    clickCancel();
    await vi.advanceTimersByTimeAsync(0);
    expect(container.textContent).toContain('cancelled');
    await vi.advanceTimersByTimeAsync(10000);
    expect(log.gets).toBe(1);
  });

  it('shrugs off a cancel that raced completion', async () => {
    const done = queuedHandle({ state: 'done', progress: { done: 100, total: 100 }, trades: [] });
    const log = stubRunWire([running(99), done], () => ({
      status: 404,
      body: { code: 'not_found', message: 'unknown run' },
    }));
    bindRunList(container, { onRunsChanged: () => undefined });
    trackRun(running(98), {});
    await vi.advanceTimersByTimeAsync(0);

    clickCancel();
    await vi.advanceTimersByTimeAsync(0);
    expect(log.deletes).toBe(1);
    await vi.advanceTimersByTimeAsync(1000);
    expect(container.textContent).toContain('done');
  });
});

describe('run selection', () => {
  it('selects the clicked card and reports it to the hook', async () => {
    stubRunWire([running(1)], () => ({ body: running(1) }));
    const selections: Array<string | null> = [];
    bindRunList(container, {
      onRunsChanged: (selected) => selections.push(selected?.handle.run_id ?? null),
    });
    trackRun(queuedHandle({ run_id: 'run-1', state: 'running' }), {});
    trackRun(queuedHandle({ run_id: 'run-2', state: 'running' }), {});
    expect(getSelectedRun()?.handle.run_id).toBe('run-2');

    container.querySelector<HTMLElement>('[data-run-id="run-1"]')?.click();
    expect(getSelectedRun()?.handle.run_id).toBe('run-1');
    expect(selections.at(-1)).toBe('run-1');
    expect(container.querySelector('[data-run-id="run-1"]')?.className).toContain('selected');
  });
});
