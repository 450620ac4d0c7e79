/**
 * What-if trade builder.
 *
 * Pick an opponent, tick up to m players on each side, and the panel shows
 * the service's evaluation for that exact trade under the current form
 * config. Evaluations are debounced and stale responses are dropped.
 *
 * The lock buttons feed the same locked-player set the trade table greys
 * rows with; a lock never blocks building a trade here.
 */

import { ApiError, evaluateTrade } from './api.js';
import { $, escapeHtml, setErrorText } from './dom.js';
import { fmtFeasible, fmtPoints } from './format.js';
import { isLocked, onLocksChanged, toggleLock } from './locks.js';
import { findTeam, getSnapshot } from './snapshotController.js';
import type {
  LeagueSummary,
  RunConfigRequest,
  SnapshotPlayer,
  TradeEvaluationBody,
  TradeRow,
} from './types.js';

export const DEBOUNCE_MS = 300;

export interface EvalContext {
  snapshotId: string;
  config: RunConfigRequest;
}

export interface WhatIfHooks {
  getMaxPerSide(): number;
  /** Snapshot id and config to evaluate under; null while the form is invalid. */
  getEvalContext(): Promise<EvalContext | null>;
}

interface BuilderState {
  opponentId: string;
  giving: Set<string>;
  receiving: Set<string>;
}

let container: HTMLElement | null = null;
let hooks: WhatIfHooks | null = null;
let summary: LeagueSummary | null = null;
let state: BuilderState = { opponentId: '', giving: new Set(), receiving: new Set() };
let debounceTimer: ReturnType<typeof setTimeout> | null = null;
let requestToken = 0;

export const resetWhatIf = (league: LeagueSummary): void => {
  summary = league;
  state = { opponentId: '', giving: new Set(), receiving: new Set() };
  renderBuilder();
};

const rosterItemHtml = (player: SnapshotPlayer, side: 'give' | 'get', checked: boolean): string => {
  const locked = isLocked(player.player_id);
  return `
    <li class="roster-item${locked ? ' locked' : ''}">
      <label>
        <input type="checkbox" data-side="${side}" data-player="${escapeHtml(player.player_id)}"${checked ? ' checked' : ''}>
        ${escapeHtml(player.name)} <span class="muted">${escapeHtml(player.position)}</span>
      </label>
      <button type="button" data-role="lockBtn" data-player="${escapeHtml(player.player_id)}">
        ${locked ? 'unlock' : 'lock'}
      </button>
    </li>`;
};

const renderRosters = (): void => {
  if (!container || !summary) return;
  const givingList = $('[data-role="givingList"]', container);
  const receivingList = $('[data-role="receivingList"]', container);
  if (!givingList || !receivingList) return;
  const userTeam = findTeam(summary.user_team_id);
  givingList.innerHTML = (userTeam?.players ?? [])
    .map((p) => rosterItemHtml(p, 'give', state.giving.has(p.player_id)))
    .join('');
  const opponent = state.opponentId ? findTeam(state.opponentId) : null;
  receivingList.innerHTML = opponent
    ? opponent.players
        .map((p) => rosterItemHtml(p, 'get', state.receiving.has(p.player_id)))
        .join('')
    : '<li class="muted">pick an opponent</li>';
};

const renderBuilder = (): void => {
  if (!container) return;
  const select = $<HTMLSelectElement>('[data-role="opponentSelect"]', container);
  if (select && summary) {
    const options = ['<option value="">choose...</option>'];
    for (const team of summary.teams) {
      if (team.team_id === summary.user_team_id) continue;
      const chosen = team.team_id === state.opponentId ? ' selected' : '';
      options.push(
        `<option value="${escapeHtml(team.team_id)}"${chosen}>${escapeHtml(team.team_name)}</option>`
      );
    }
    select.innerHTML = options.join('');
  }
  renderRosters();
  renderIdlePanel();
};

const panelEl = (): HTMLElement | null =>
  container ? $('[data-role="evalPanel"]', container) : null;

const renderIdlePanel = (): void => {
  const panel = panelEl();
  if (!panel) return;
  panel.innerHTML = '<p class="muted">pick an opponent and players on both sides</p>';
};

const weeklyRowsHtml = (evaluation: TradeEvaluationBody): string => {
  const playoff = new Set(summary?.playoff_weeks ?? []);
  return Object.keys(evaluation.weekly_gain_a)
    .map((week) => {
      const badge = playoff.has(Number(week))
        ? ' <span class="tag tag-playoff">playoff</span>'
        : '';
      return `
        <tr data-role="weeklyRow" data-week="${escapeHtml(week)}">
          <td>week ${escapeHtml(week)}${badge}</td>
          <td data-role="weekGainA">${escapeHtml(fmtPoints(evaluation.weekly_gain_a[week] ?? 0))}</td>
          <td data-role="weekGainB">${escapeHtml(fmtPoints(evaluation.weekly_gain_b[week] ?? 0))}</td>
        </tr>`;
    })
    .join('');
};

const renderEvaluation = (evaluation: TradeEvaluationBody): void => {
  const panel = panelEl();
  if (!panel) return;
  panel.innerHTML = `
    <table class="weekly-table">
      <thead><tr><th>Week</th><th>Team A Gain</th><th>Team B Gain</th></tr></thead>
      <tbody>${weeklyRowsHtml(evaluation)}</tbody>
    </table>
    <div class="eval-summary">
      <span>Team A Pt Gain <b data-role="gainA">${escapeHtml(fmtPoints(evaluation.gain_a))}</b></span>
      <span>Team B Pt Gain <b data-role="gainB">${escapeHtml(fmtPoints(evaluation.gain_b))}</b></span>
      <span>weighted Team A gain <b data-role="weightedGainA">${escapeHtml(
        fmtPoints(evaluation.weighted_gain_a)
      )}</b></span>
      <span>Cost <b data-role="cost">${escapeHtml(fmtPoints(evaluation.cost))}</b></span>
      <span data-role="feasible" class="feas-${evaluation.feasible}">${escapeHtml(
        fmtFeasible(evaluation.feasible)
      )}</span>
    </div>
  `;
};

const renderPanelError = (message: string): void => {
  const panel = panelEl();
  if (!panel) return;
  panel.innerHTML = `<p class="error-line" data-role="evalError">${escapeHtml(message)}</p>`;
};

const evaluateNow = async (): Promise<void> => {
  if (!hooks) return;
  const snapshot = getSnapshot();
  if (!snapshot) return;
  if (!state.opponentId || !state.giving.size || !state.receiving.size) {
    renderIdlePanel();
    return;
  }
  const token = ++requestToken;
  const context = await hooks.getEvalContext();
  if (token !== requestToken) return;
  if (!context) {
    renderPanelError('fix the config form first');
    return;
  }
  try {
    const evaluation = await evaluateTrade(
      context.snapshotId,
      {
        opponent_team_id: state.opponentId,
        giving: [...state.giving].sort(),
        receiving: [...state.receiving].sort(),
      },
      context.config
    );
    if (token !== requestToken) return;
    renderEvaluation(evaluation);
  } catch (err) {
    if (token !== requestToken) return;
    if (err instanceof ApiError) {
      renderPanelError(err.body.message);
    } else {
      renderPanelError('evaluation failed, is the service running?');
    }
  }
};

const scheduleEvaluate = (): void => {
  if (debounceTimer !== null) clearTimeout(debounceTimer);
  debounceTimer = setTimeout(() => {
    debounceTimer = null;
    void evaluateNow();
  }, DEBOUNCE_MS);
};

/** Load a GA-produced trade into the builder and evaluate it. */
export const loadTrade = (row: TradeRow): void => {
  state = {
    opponentId: row.opponent_team_id,
    giving: new Set(row.giving.map((p) => p.player_id)),
    receiving: new Set(row.receiving.map((p) => p.player_id)),
  };
  renderBuilder();
  scheduleEvaluate();
};

export const bindWhatIf = (whatIfContainer: HTMLElement, whatIfHooks: WhatIfHooks): void => {
  container = whatIfContainer;
  hooks = whatIfHooks;
  container.innerHTML = `
    <label class="knob">opponent
      <select data-role="opponentSelect"><option value="">choose...</option></select>
    </label>
    <div class="rosters">
      <div class="roster-col">
        <h3>you give</h3>
        <ul class="roster-list" data-role="givingList"></ul>
      </div>
      <div class="roster-col">
        <h3>you get</h3>
        <ul class="roster-list" data-role="receivingList"></ul>
      </div>
    </div>
    <div class="error-line" data-role="capHint"></div>
    <div data-role="evalPanel"></div>
  `;
  renderBuilder();

  onLocksChanged(renderRosters);

  container.addEventListener('change', (event) => {
    const target = event.target as HTMLElement;
    if (target.matches('[data-role="opponentSelect"]')) {
      state.opponentId = (target as HTMLSelectElement).value;
      state.receiving = new Set();
      renderRosters();
      scheduleEvaluate();
      return;
    }
    if (target.matches('input[data-side]')) {
      const checkbox = target as HTMLInputElement;
      const playerId = checkbox.dataset['player'] ?? '';
      const side = checkbox.dataset['side'] === 'give' ? state.giving : state.receiving;
      const capHint = container ? $('[data-role="capHint"]', container) : null;
      if (checkbox.checked) {
        const cap = hooks?.getMaxPerSide() ?? 3;
        if (side.size >= cap) {
          checkbox.checked = false;
          setErrorText(capHint, `a trade side holds at most ${cap} players`);
          return;
        }
        side.add(playerId);
      } else {
        side.delete(playerId);
      }
      setErrorText(capHint, '');
      scheduleEvaluate();
    }
  });

  container.addEventListener('click', (event) => {
    const lockBtn = (event.target as HTMLElement).closest<HTMLElement>('[data-role="lockBtn"]');
    if (lockBtn) {
      toggleLock(lockBtn.dataset['player'] ?? '');
    }
  });
};
