/**
 * Pure sort/filter state for the trade table.
 *
 * Sorting compares values the service supplied; it never recomputes them.
 * Rows are decorated with their original index so equal keys keep their
 * server order in either direction (stable, and toggling the direction
 * twice restores the exact previous view).
 */

import type { TradeRow } from './types.js';

export type SortKey = 'cost' | 'gain_a' | 'gain_b' | 'weighted_gain_a' | 'opponent';
export type SortDir = 'asc' | 'desc';

export interface TableState {
  sortKey: SortKey;
  sortDir: SortDir;
  opponentFilter: string;
  hideLocked: boolean;
}

export const defaultTableState = (): TableState => ({
  sortKey: 'cost',
  sortDir: 'asc',
  opponentFilter: '',
  hideLocked: false,
});

/** Clicking the active column flips direction; a new column starts ascending. */
export const toggleSort = (state: TableState, key: SortKey): TableState => {
  if (state.sortKey === key) {
    return { ...state, sortDir: state.sortDir === 'asc' ? 'desc' : 'asc' };
  }
  return { ...state, sortKey: key, sortDir: 'asc' };
};

export interface DisplayRow {
  row: TradeRow;
  /** Position in the service's ordering, also the stable tie-break. */
  index: number;
  locked: boolean;
}

const sortValue = (row: TradeRow, key: SortKey): number | string => {
  switch (key) {
    case 'cost':
      return row.evaluation.cost;
    case 'gain_a':
      return row.evaluation.gain_a;
    case 'gain_b':
      return row.evaluation.gain_b;
    case 'weighted_gain_a':
      return row.evaluation.weighted_gain_a;
    case 'opponent':
      return row.opponent_team_name;
  }
};

const touchesLocked = (row: TradeRow, locked: Set<string>): boolean =>
  row.giving.some((p) => locked.has(p.player_id)) ||
  row.receiving.some((p) => locked.has(p.player_id));

/** Apply filter and sort; greying vs hiding locked rows is the caller's call. */
export const visibleRows = (
  rows: TradeRow[],
  state: TableState,
  locked: Set<string>
): DisplayRow[] => {
  const display: DisplayRow[] = [];
  rows.forEach((row, index) => {
    if (state.opponentFilter && row.opponent_team_id !== state.opponentFilter) return;
    const isLocked = touchesLocked(row, locked);
    if (state.hideLocked && isLocked) return;
    display.push({ row, index, locked: isLocked });
  });
  const direction = state.sortDir === 'asc' ? 1 : -1;
  display.sort((a, b) => {
    const va = sortValue(a.row, state.sortKey);
    const vb = sortValue(b.row, state.sortKey);
    if (va < vb) return -direction;
    if (va > vb) return direction;
    return a.index - b.index;
  });
  return display;
};
