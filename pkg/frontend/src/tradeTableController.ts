/**
 * Ranked trade table for a finished run.
 *
 * Column labels follow the CSV export ("Team A" is the user's side) with
 * the opponent's name added. Clicking a header sorts, clicking a row opens
 * a per-week drilldown, and rows touching a locked player are greyed out
 * or hidden as a negotiation filter.
 */

import { $, escapeHtml } from './dom.js';
import { fmtFeasible, fmtPlayers, fmtPoints } from './format.js';
import { lockedIds, onLocksChanged } from './locks.js';
import {
  defaultTableState,
  toggleSort,
  visibleRows,
  type SortKey,
  type TableState,
} from './tableState.js';
import type { LeagueSummary, TradeRow } from './types.js';

let rows: TradeRow[] | null = null;
let state: TableState = defaultTableState();
let expandedIndex: number | null = null;
let playoffWeeks: Set<number> = new Set();
let container: HTMLElement | null = null;
let hooks: TradeTableHooks | null = null;

export interface TradeTableHooks {
  onWhatIf(row: TradeRow): void;
}

const SORTABLE: Array<{ key: SortKey; label: string }> = [
  { key: 'opponent', label: 'Opponent' },
  { key: 'cost', label: 'Cost' },
  { key: 'gain_a', label: 'Team A Pt Gain' },
  { key: 'gain_b', label: 'Team B Pt Gain' },
];

export const setLeagueContext = (summary: LeagueSummary): void => {
  playoffWeeks = new Set(summary.playoff_weeks);
  rows = null;
  state = defaultTableState();
  expandedIndex = null;
  renderTable();
};

/** Show a finished run's rows (empty array renders the empty state). */
export const setTableRows = (tradeRows: TradeRow[] | null): void => {
  rows = tradeRows;
  expandedIndex = null;
  syncOpponentOptions();
  renderTable();
};

const syncOpponentOptions = (): void => {
  if (!container) return;
  const select = $<HTMLSelectElement>('[data-role="opponentFilter"]', container);
  if (!select) return;
  const seen = new Map<string, string>();
  for (const row of rows ?? []) {
    seen.set(row.opponent_team_id, row.opponent_team_name);
  }
  const previous = select.value;
  const options = ['<option value="">all opponents</option>'];
  for (const [teamId, name] of seen) {
    options.push(`<option value="${escapeHtml(teamId)}">${escapeHtml(name)}</option>`);
  }
  select.innerHTML = options.join('');
  select.value = seen.has(previous) ? previous : '';
  state = { ...state, opponentFilter: select.value };
};

const weeklyRowsHtml = (row: TradeRow): string => {
  const weeks = Object.keys(row.evaluation.weekly_gain_a);
  return weeks
    .map((week) => {
      const playoff = playoffWeeks.has(Number(week))
        ? ' <span class="tag tag-playoff">playoff</span>'
        : '';
      const gainA = row.evaluation.weekly_gain_a[week] ?? 0;
      const gainB = row.evaluation.weekly_gain_b[week] ?? 0;
      return `
        <tr data-role="weeklyRow" data-week="${escapeHtml(week)}">
          <td>week ${escapeHtml(week)}${playoff}</td>
          <td data-role="weekGainA">${escapeHtml(fmtPoints(gainA))}</td>
          <td data-role="weekGainB">${escapeHtml(fmtPoints(gainB))}</td>
        </tr>`;
    })
    .join('');
};

const drilldownHtml = (row: TradeRow): string => `
  <tr class="drilldown">
    <td colspan="6">
      <table class="weekly-table">
        <thead><tr><th>Week</th><th>Team A Gain</th><th>Team B Gain</th></tr></thead>
        <tbody>${weeklyRowsHtml(row)}</tbody>
      </table>
      <div class="drilldown-meta">
        <span>weighted Team A gain: <span data-role="weightedGainA">${escapeHtml(
          fmtPoints(row.evaluation.weighted_gain_a)
        )}</span></span>
        <span data-role="feasible">${escapeHtml(fmtFeasible(row.evaluation.feasible))}</span>
        <button type="button" data-role="whatIfBtn">open in what-if</button>
      </div>
    </td>
  </tr>
`;

const headerHtml = (): string => {
  const cells = SORTABLE.map((col) => {
    let marker = '';
    if (state.sortKey === col.key) {
      marker = state.sortDir === 'asc' ? ' ▲' : ' ▼';
    }
    return `<th data-sort-key="${col.key}">${escapeHtml(col.label)}${marker}</th>`;
  }).join('');
  return `<tr>${cells}<th>Team A Players to Trade</th><th>Team B Players to Trade</th></tr>`;
};

const renderTable = (): void => {
  if (!container) return;
  const body = $('[data-role="tableBody"]', container);
  if (!body) return;
  if (rows === null) {
    body.innerHTML = '<p class="muted">run a search to see trades</p>';
    return;
  }
  if (!rows.length) {
    body.innerHTML = '<p class="muted" data-role="emptyState">no trades found</p>';
    return;
  }
  const display = visibleRows(rows, state, lockedIds());
  const bodyRows = display
    .map((item) => {
      const row = item.row;
      const classes = ['trade-row'];
      if (item.locked) classes.push('locked-row');
      if (item.index === expandedIndex) classes.push('expanded');
      const main = `
        <tr class="${classes.join(' ')}" data-index="${item.index}">
          <td>${escapeHtml(row.opponent_team_name)}</td>
          <td data-role="cost">${escapeHtml(fmtPoints(row.evaluation.cost))}</td>
          <td data-role="gainA">${escapeHtml(fmtPoints(row.evaluation.gain_a))}</td>
          <td data-role="gainB">${escapeHtml(fmtPoints(row.evaluation.gain_b))}</td>
          <td>${escapeHtml(fmtPlayers(row.giving))}</td>
          <td>${escapeHtml(fmtPlayers(row.receiving))}</td>
        </tr>`;
      return item.index === expandedIndex ? main + drilldownHtml(row) : main;
    })
    .join('');
  body.innerHTML = `
    <table class="trade-table">
      <thead>${headerHtml()}</thead>
      <tbody>${bodyRows}</tbody>
    </table>
  `;
};

export const bindTradeTable = (
  tableContainer: HTMLElement,
  tableHooks: TradeTableHooks
): void => {
  container = tableContainer;
  hooks = tableHooks;
  container.innerHTML = `
    <div class="table-toolbar">
      <select data-role="opponentFilter"><option value="">all opponents</option></select>
      <label class="toolbar-check">
        <input type="checkbox" data-role="hideLocked"> hide locked
      </label>
    </div>
    <div data-role="tableBody"></div>
  `;
  renderTable();

  onLocksChanged(renderTable);

  const select = $<HTMLSelectElement>('[data-role="opponentFilter"]', container);
  select?.addEventListener('change', () => {
    state = { ...state, opponentFilter: select.value };
    renderTable();
  });

  const hideLocked = $<HTMLInputElement>('[data-role="hideLocked"]', container);
  hideLocked?.addEventListener('change', () => {
    state = { ...state, hideLocked: hideLocked.checked };
    renderTable();
  });

  container.addEventListener('click', (event) => {
    const target = event.target as HTMLElement;
    const header = target.closest<HTMLElement>('th[data-sort-key]');
    if (header) {
      state = toggleSort(state, header.dataset['sortKey'] as SortKey);
      renderTable();
      return;
    }
    if (target.closest('[data-role="whatIfBtn"]')) {
      const row = expandedIndex === null ? undefined : rows?.[expandedIndex];
      if (row) hooks?.onWhatIf(row);
      return;
    }
    const tradeRow = target.closest<HTMLElement>('tr[data-index]');
    if (tradeRow) {
      const index = Number(tradeRow.dataset['index']);
      expandedIndex = expandedIndex === index ? null : index;
      renderTable();
    }
  });
};
