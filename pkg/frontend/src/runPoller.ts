/**
 * Run polling loop.
 *
 * One poller per run, one request in flight at a time: the next poll is
 * scheduled only after the previous response lands. While the run is queued
 * the delay backs off 1s, 2s, 4s, then holds at 5s; once it is running the
 * delay snaps back to 1s. The loop ends itself on done or failed.
 */

import { fetchRun } from './api.js';
import type { RunHandle } from './types.js';

export const ACTIVE_POLL_MS = 1000;
export const QUEUED_POLL_CAP_MS = 5000;

export interface RunPoller {
  stop(): void;
}

export interface PollerHooks {
  onUpdate(handle: RunHandle): void;
  onError(err: unknown): void;
}

export const pollRun = (runId: string, hooks: PollerHooks): RunPoller => {
  let stopped = false;
  let timer: ReturnType<typeof setTimeout> | null = null;
  let queuedPolls = 0;

  const delayFor = (handle: RunHandle): number => {
    if (handle.state !== 'queued') {
      queuedPolls = 0;
      return ACTIVE_POLL_MS;
    }
    const delay = Math.min(
      QUEUED_POLL_CAP_MS,
      ACTIVE_POLL_MS * 2 ** queuedPolls
    );
    queuedPolls += 1;
    return delay;
  };

  const tick = async (): Promise<void> => {
    let handle: RunHandle;
    try {
      handle = await fetchRun(runId);
    } catch (err) {
      if (stopped) return;
      hooks.onError(err);
      return;
    }
    if (stopped) return;
    hooks.onUpdate(handle);
    if (handle.state === 'done' || handle.state === 'failed') return;
    timer = setTimeout(() => void tick(), delayFor(handle));
  };

  void tick();

  return {
    stop: () => {
      stopped = true;
      if (timer !== null) clearTimeout(timer);
    },
  };
};
