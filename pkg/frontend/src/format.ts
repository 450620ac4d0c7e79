/**
 * Display formatting helpers.
 *
 * Everything here is presentation only: numbers arrive from the service and
 * leave as strings. No gains, costs, or weights are computed in the client,
 * so nothing in this module does arithmetic on point values beyond fixing
 * the number of digits shown.
 */

import type { PlayerRef } from './types.js';

/** Render a service-provided number with two digits, matching the CSV export. */
export const fmtPoints = (value: number): string => {
  const num = Number(value);
  if (!Number.isFinite(num)) return 'n/a';
  return num.toFixed(2);
};

/** Player names joined the same way the CSV cells join them. */
export const fmtPlayers = (players: PlayerRef[]): string =>
  players.map((p) => p.name).join(', ');

export const fmtFeasible = (feasible: boolean): string =>
  feasible ? 'feasible' : 'infeasible';

export const fmtProgress = (done: number, total: number): string =>
  `${done}/${total}`;

/** Weeks list like "15, 16, 17". */
export const fmtWeeks = (weeks: number[]): string => weeks.join(', ');
