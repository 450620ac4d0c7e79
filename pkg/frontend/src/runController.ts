/**
 * Run cards: launch feedback, live progress, cancel, and selection.
 *
 * Each started run gets a card and its own poller. The selected run is the
 * one whose trades the table shows; starting a new run selects it.
 */

import { ApiError, cancelRun } from './api.js';
import { $, escapeHtml } from './dom.js';
import { fmtPoints, fmtProgress } from './format.js';
import { pollRun, type RunPoller } from './runPoller.js';
import type { RunConfigRequest, RunHandle } from './types.js';

export interface RunRecord {
  handle: RunHandle;
  configUsed: RunConfigRequest;
  poller: RunPoller | null;
}

const records: RunRecord[] = [];
let selectedRunId: string | null = null;
let listEl: HTMLElement | null = null;
let hooks: RunHooks | null = null;

export interface RunHooks {
  /** Fired on every poll update and on selection changes. */
  onRunsChanged(selected: RunRecord | null): void;
}

export const getSelectedRun = (): RunRecord | null =>
  records.find((r) => r.handle.run_id === selectedRunId) ?? null;

export const resetRunState = (): void => {
  for (const record of records) record.poller?.stop();
  records.length = 0;
  selectedRunId = null;
};

const findRecord = (runId: string): RunRecord | null =>
  records.find((r) => r.handle.run_id === runId) ?? null;

const progressPercent = (handle: RunHandle): number => {
  if (handle.state === 'done') return 100;
  if (handle.progress.total <= 0) return 0;
  return Math.min(100, Math.round((100 * handle.progress.done) / handle.progress.total));
};

const cardHtml = (record: RunRecord): string => {
  const handle = record.handle;
  const selected = handle.run_id === selectedRunId ? ' selected' : '';
  const cancellable = handle.state === 'queued' || handle.state === 'running';
  const best =
    handle.best_cost_so_far === undefined
      ? ''
      : `<span class="muted">best cost ${escapeHtml(fmtPoints(handle.best_cost_so_far))}</span>`;
  const reason = handle.reason
    ? `<span class="run-reason">${escapeHtml(handle.reason)}</span>`
    : '';
  const evals =
    handle.evaluations === undefined
      ? ''
      : `<span class="muted">${handle.evaluations} evaluations</span>`;
  return `
    <div class="run-card${selected}" data-run-id="${escapeHtml(handle.run_id)}">
      <div class="run-head">
        <strong>${escapeHtml(handle.run_id)}</strong>
        <span class="state state-${escapeHtml(handle.state)}">${escapeHtml(handle.state)}</span>
        ${cancellable ? '<button type="button" data-role="cancelBtn">cancel</button>' : ''}
      </div>
      <div class="progress-track">
        <div class="progress-fill" style="width: ${progressPercent(handle)}%"></div>
      </div>
      <div class="run-meta">
        <span>generation ${escapeHtml(fmtProgress(handle.progress.done, handle.progress.total))}</span>
        ${best} ${evals} ${reason}
      </div>
    </div>
  `;
};

const render = (): void => {
  if (!listEl) return;
  if (!records.length) {
    listEl.innerHTML = '<p class="muted">no runs yet</p>';
    return;
  }
  listEl.innerHTML = records.map(cardHtml).join('');
};

const notify = (): void => {
  render();
  hooks?.onRunsChanged(getSelectedRun());
};

/** Track a freshly started run: select it, render a card, begin polling. */
export const trackRun = (handle: RunHandle, configUsed: RunConfigRequest): void => {
  const record: RunRecord = { handle, configUsed, poller: null };
  records.unshift(record);
  selectedRunId = handle.run_id;
  record.poller = pollRun(handle.run_id, {
    onUpdate: (update) => {
      record.handle = update;
      notify();
    },
    onError: () => {
      // poller stops on transport errors; leave the card at its last state
      notify();
    },
  });
  notify();
};

export const bindRunList = (container: HTMLElement, runHooks: RunHooks): void => {
  listEl = container;
  hooks = runHooks;
  render();

  container.addEventListener('click', (event) => {
    const target = event.target as HTMLElement;
    const card = target.closest<HTMLElement>('[data-run-id]');
    if (!card) return;
    const runId = card.dataset['runId'] ?? '';
    if (target.closest('[data-role="cancelBtn"]')) {
      void (async () => {
        try {
          const handle = await cancelRun(runId);
          const record = findRecord(runId);
          if (record) {
            record.handle = handle;
            // A running run only reports cancelled once the worker notices
            // the flag, so keep polling unless the state is already final.
            if (handle.state === 'done' || handle.state === 'failed') {
              record.poller?.stop();
            }
          }
        } catch (err) {
          if (!(err instanceof ApiError)) throw err;
          // cancel raced completion; the next poll shows the final state
        }
        notify();
      })();
      return;
    }
    if (selectedRunId !== runId) {
      selectedRunId = runId;
      notify();
    }
  });
};
