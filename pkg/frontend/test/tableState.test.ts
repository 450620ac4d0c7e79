import { describe, expect, it } from 'vitest';

import {
  defaultTableState,
  toggleSort,
  visibleRows,
  type TableState,
} from '../src/tableState.js';
import { rowSet } from './fixtures.js';

const noLocks = new Set<string>();

const gains = (state: TableState): number[] =>
  visibleRows(rowSet(), state, noLocks).map((d) => d.row.evaluation.gain_a);

describe('toggleSort', () => {
  it('flips direction on the active column and resets on a new one', () => {
    let state = defaultTableState();
    expect(state.sortKey).toBe('cost');
    expect(state.sortDir).toBe('asc');
    state = toggleSort(state, 'cost');
    expect(state.sortDir).toBe('desc');
    state = toggleSort(state, 'gain_a');
    expect(state.sortKey).toBe('gain_a');
    expect(state.sortDir).toBe('asc');
  });
});

describe('visibleRows', () => {
  it('keeps the service order under the default sort', () => {
    const display = visibleRows(rowSet(), defaultTableState(), noLocks);
    expect(display.map((d) => d.index)).toEqual([0, 1, 2, 3]);
  });

  it('puts the maximal user gain first when sorting gain_a descending', () => {
    const state: TableState = { ...defaultTableState(), sortKey: 'gain_a', sortDir: 'desc' };
    expect(gains(state)).toEqual([5.0, 4.0, 3.0, 1.0]);
  });

  it('is stable: the cost tie keeps server order in both directions', () => {
    const asc = visibleRows(rowSet(), defaultTableState(), noLocks);
    expect(asc.map((d) => d.index)).toEqual([0, 1, 2, 3]);
    const desc = visibleRows(
      rowSet(),
      { ...defaultTableState(), sortDir: 'desc' },
      noLocks
    );
    // rows 0 and 1 share a cost; index 0 stays ahead of index 1
    expect(desc.map((d) => d.index)).toEqual([3, 2, 0, 1]);
  });

  it('is reversible: toggling the direction twice restores the view', () => {
    let state = defaultTableState();
    const before = visibleRows(rowSet(), state, noLocks).map((d) => d.index);
    state = toggleSort(state, 'cost');
    state = toggleSort(state, 'cost');
    const after = visibleRows(rowSet(), state, noLocks).map((d) => d.index);
    expect(after).toEqual(before);
  });

  it('filters by opponent', () => {
    const state = { ...defaultTableState(), opponentFilter: 'bs' };
    const display = visibleRows(rowSet(), state, noLocks);
    expect(display).toHaveLength(2);
    expect(display.every((d) => d.row.opponent_team_id === 'bs')).toBe(true);
  });

  it('marks rows touching a locked player on either side', () => {
    const locked = new Set(['r2']);
    const display = visibleRows(rowSet(), defaultTableState(), locked);
    expect(display.map((d) => d.locked)).toEqual([false, false, true, false]);
  });

  it('hides locked rows when asked', () => {
    const locked = new Set(['m2']);
    const state = { ...defaultTableState(), hideLocked: true };
    const display = visibleRows(rowSet(), state, locked);
    // rows 0 and 3 give away m2
    expect(display.map((d) => d.index)).toEqual([1, 2]);
  });
});
