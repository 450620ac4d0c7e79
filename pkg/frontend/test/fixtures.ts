/**
 * Canned wire payloads.
 *
 * Builders return fresh objects so tests can mutate freely. The sentinel
 * payloads carry numbers that are deliberately inconsistent with each
 * other (weekly gains do not sum to the totals, the cost matches no
 * combination of the gains): if the client recomputed anything instead of
 * rendering service values, the sentinel tests would catch the mismatch.
 */

import type {
  LeagueSummary,
  RunHandle,
  SnapshotDocument,
  TradeEvaluationBody,
  TradeRow,
} from '../src/types.js';

export const leagueSummary = (): LeagueSummary => ({
  snapshot_id: 'snap-1',
  user_team_id: 'me',
  current_week: 13,
  final_week: 14,
  playoff_weeks: [14],
  teams: [
    { team_id: 'me', team_name: 'Home Team', roster_size: 4 },
    { team_id: 'rh', team_name: 'Riverhawks', roster_size: 3 },
    { team_id: 'bs', team_name: 'Blue Sox', roster_size: 2 },
  ],
});

export const snapshotDocument = (): SnapshotDocument => ({
  version: 1,
  league: {
    user_team_id: 'me',
    current_week: 13,
    final_week: 14,
    playoff_weeks: [14],
    teams: [
      {
        team_id: 'me',
        team_name: 'Home Team',
        players: [
          { player_id: 'm1', name: 'Avery Cole', position: 'QB' },
          { player_id: 'm2', name: 'Briar Finch', position: 'RB' },
          { player_id: 'm3', name: 'Casey Holt', position: 'RB' },
          { player_id: 'm4', name: 'Drew Mercer', position: 'WR' },
        ],
      },
      {
        team_id: 'rh',
        team_name: 'Riverhawks',
        players: [
          { player_id: 'r1', name: 'Ellis Ward', position: 'RB' },
          { player_id: 'r2', name: 'Frankie Moss', position: 'WR' },
          { player_id: 'r3', name: 'Greer Tully', position: 'TE' },
        ],
      },
      {
        team_id: 'bs',
        team_name: 'Blue Sox',
        players: [
          { player_id: 'b1', name: 'Harlan Pike', position: 'RB' },
          { player_id: 'b2', name: 'Indy Rowe', position: 'WR' },
        ],
      },
    ],
  },
});

export const snapshotRaw = (): string => JSON.stringify(snapshotDocument());

export const evaluation = (
  overrides: Partial<TradeEvaluationBody> = {}
): TradeEvaluationBody => ({
  weekly_gain_a: { '13': 1.5, '14': 2.25 },
  weekly_gain_b: { '13': 0.75, '14': 0.5 },
  gain_a: 3.75,
  gain_b: 1.25,
  weighted_gain_a: 4.05,
  cost: -9.11,
  feasible: true,
  ...overrides,
});

export const tradeRow = (overrides: Partial<TradeRow> = {}): TradeRow => ({
  opponent_team_id: 'rh',
  opponent_team_name: 'Riverhawks',
  giving: [{ player_id: 'm2', name: 'Briar Finch' }],
  receiving: [{ player_id: 'r1', name: 'Ellis Ward' }],
  evaluation: evaluation(),
  ...overrides,
});

/** Four rows in service order (cost ascending) with a cost tie up front. */
export const rowSet = (): TradeRow[] => [
  tradeRow({
    evaluation: evaluation({ cost: -9.5, gain_a: 3.0, gain_b: 1.0 }),
  }),
  tradeRow({
    opponent_team_id: 'bs',
    opponent_team_name: 'Blue Sox',
    giving: [{ player_id: 'm3', name: 'Casey Holt' }],
    receiving: [{ player_id: 'b1', name: 'Harlan Pike' }],
    evaluation: evaluation({ cost: -9.5, gain_a: 4.0, gain_b: 0.5 }),
  }),
  tradeRow({
    giving: [{ player_id: 'm4', name: 'Drew Mercer' }],
    receiving: [{ player_id: 'r2', name: 'Frankie Moss' }],
    evaluation: evaluation({ cost: -7.0, gain_a: 5.0, gain_b: 2.0 }),
  }),
  tradeRow({
    opponent_team_id: 'bs',
    opponent_team_name: 'Blue Sox',
    giving: [{ player_id: 'm2', name: 'Briar Finch' }],
    receiving: [{ player_id: 'b2', name: 'Indy Rowe' }],
    evaluation: evaluation({ cost: -6.0, gain_a: 1.0, gain_b: 3.5 }),
  }),
];

export const queuedHandle = (overrides: Partial<RunHandle> = {}): RunHandle => ({
  run_id: 'run-1',
  snapshot_id: 'snap-1',
  state: 'queued',
  progress: { done: 0, total: 60 },
  ...overrides,
});

export const doneHandle = (trades: TradeRow[] = rowSet()): RunHandle => ({
  run_id: 'run-1',
  snapshot_id: 'snap-1',
  state: 'done',
  progress: { done: 60, total: 60 },
  best_cost_so_far: trades[0]?.evaluation.cost ?? 0,
  trades,
  evaluations: 1234,
});

/** Numbers that no recomputation could reproduce; see module docstring. */
export const sentinelEvaluation = (): TradeEvaluationBody => ({
  weekly_gain_a: { '13': 111.11, '14': 222.22 },
  weekly_gain_b: { '13': 5.55, '14': 6.66 },
  gain_a: 987.65,
  gain_b: 42.42,
  weighted_gain_a: 13.37,
  cost: 271.82,
  feasible: true,
});

export const sentinelRow = (): TradeRow =>
  tradeRow({ evaluation: sentinelEvaluation() });

/** A different inconsistent payload, to tell /evaluate output apart. */
export const sentinelWhatIfEvaluation = (): TradeEvaluationBody => ({
  weekly_gain_a: { '13': 333.33, '14': 444.44 },
  weekly_gain_b: { '13': 7.77, '14': 8.88 },
  gain_a: 123.45,
  gain_b: 67.89,
  weighted_gain_a: 24.68,
  cost: 161.8,
  feasible: false,
});
