/**
 * Wire types for the tradeforge HTTP service.
 *
 * Every interface here mirrors a JSON body the service produces or accepts,
 * field for field. The UI renders these values; it never derives new ones.
 */

export interface TeamSummary {
  team_id: string;
  team_name: string;
  roster_size: number;
}

/** Response body of POST /snapshots and GET /snapshots/{id}/league. */
export interface LeagueSummary {
  snapshot_id: string;
  user_team_id: string;
  current_week: number;
  final_week: number;
  playoff_weeks: number[];
  teams: TeamSummary[];
}

/**
 * One trade's evaluation as the service reports it. Weekly gains are keyed
 * by week number rendered as a string ("13", "14", ...).
 */
export interface TradeEvaluationBody {
  weekly_gain_a: Record<string, number>;
  weekly_gain_b: Record<string, number>;
  gain_a: number;
  gain_b: number;
  weighted_gain_a: number;
  cost: number;
  feasible: boolean;
}

export interface PlayerRef {
  player_id: string;
  name: string;
}

/** One row of a finished run's trade table. */
export interface TradeRow {
  opponent_team_id: string;
  opponent_team_name: string;
  giving: PlayerRef[];
  receiving: PlayerRef[];
  evaluation: TradeEvaluationBody;
}

export type RunState = 'queued' | 'running' | 'done' | 'failed';

export interface RunProgress {
  done: number;
  total: number;
}

/** Response body of POST /runs and GET /runs/{id}. */
export interface RunHandle {
  run_id: string;
  snapshot_id: string;
  state: RunState;
  progress: RunProgress;
  best_cost_so_far?: number;
  reason?: string;
  trades?: TradeRow[];
  evaluations?: number;
}

/** Error body the service returns with 4xx/5xx statuses. */
export interface ApiErrorBody {
  code: string;
  message: string;
  path?: string;
}

/**
 * Run configuration as POST /runs accepts it: any engine field may be
 * omitted, plus an optional preset name the server resolves first.
 */
export interface RunConfigRequest {
  preset?: string;
  alpha?: number;
  beta?: number;
  gamma?: number;
  playoff_weight?: number;
  max_players_per_side?: number;
  generations?: number;
  max_population?: number;
  mutation_probs?: number[];
  filter_cost_threshold?: number;
  filter_keep_prob?: number;
  rng_seed?: number;
}

/** Trade description POST /evaluate accepts. */
export interface TradeRequest {
  opponent_team_id: string;
  giving: string[];
  receiving: string[];
}

// ---------------------------------------------------------------------------
// Snapshot document (the file the user uploads)
//
// The service's league summary reports roster sizes only, so the roster
// pickers read player names and positions from the uploaded file itself.
// These types cover just the fields the UI touches.
// ---------------------------------------------------------------------------

export interface SnapshotPlayer {
  player_id: string;
  name: string;
  position: string;
}

export interface SnapshotTeam {
  team_id: string;
  team_name: string;
  players: SnapshotPlayer[];
}

export interface SnapshotLeague {
  user_team_id: string;
  current_week: number;
  final_week: number;
  playoff_weeks: number[];
  teams: SnapshotTeam[];
}

export interface SnapshotDocument {
  version: number;
  league: SnapshotLeague;
}
