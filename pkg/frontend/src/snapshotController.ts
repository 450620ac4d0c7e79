/**
 * Snapshot upload and league summary panel.
 *
 * Keeps the raw uploaded JSON around for two jobs the service cannot do for
 * us: the roster pickers need player names and positions (the league
 * summary only reports roster sizes), and a playoff-week override is
 * honored by re-uploading the document with `league.playoff_weeks`
 * replaced, since runs always read playoff weeks from their snapshot.
 */

import { ApiError, uploadSnapshot } from './api.js';
import { $, escapeHtml, setErrorText } from './dom.js';
import { fmtWeeks } from './format.js';
import type { LeagueSummary, SnapshotDocument, SnapshotTeam } from './types.js';

export interface SnapshotState {
  raw: string;
  doc: SnapshotDocument;
  summary: LeagueSummary;
}

let current: SnapshotState | null = null;
/** snapshot ids already uploaded for a given playoff-week override */
let weekVariants = new Map<string, LeagueSummary>();

export const getSnapshot = (): SnapshotState | null => current;

export const resetSnapshotState = (): void => {
  current = null;
  weekVariants = new Map();
};

export const findTeam = (teamId: string): SnapshotTeam | null =>
  current?.doc.league.teams.find((t) => t.team_id === teamId) ?? null;

/**
 * Snapshot id to run against for the given playoff weeks. Re-uploads a
 * modified document the first time a new week set is requested.
 */
export const ensureSnapshotForWeeks = async (
  weeks: number[]
): Promise<LeagueSummary> => {
  if (!current) throw new Error('no snapshot uploaded');
  const normalized = [...weeks].sort((a, b) => a - b);
  if (normalized.join(',') === [...current.summary.playoff_weeks].sort((a, b) => a - b).join(',')) {
    return current.summary;
  }
  const key = normalized.join(',');
  const cached = weekVariants.get(key);
  if (cached) return cached;
  const doc = JSON.parse(current.raw) as SnapshotDocument;
  doc.league.playoff_weeks = normalized;
  const summary = await uploadSnapshot(JSON.stringify(doc));
  weekVariants.set(key, summary);
  return summary;
};

const renderLeaguePanel = (panel: HTMLElement, summary: LeagueSummary): void => {
  const teams = summary.teams
    .map((team) => {
      const you = team.team_id === summary.user_team_id ? ' <span class="tag">you</span>' : '';
      return `<li>${escapeHtml(team.team_name)}${you} <span class="muted">(${team.roster_size} players)</span></li>`;
    })
    .join('');
  panel.innerHTML = `
    <div class="league-meta">
      <span>weeks ${summary.current_week}..${summary.final_week}</span>
      <span>playoffs: ${escapeHtml(fmtWeeks(summary.playoff_weeks))}</span>
      <span class="muted">${escapeHtml(summary.snapshot_id)}</span>
    </div>
    <ul class="team-list">${teams}</ul>
  `;
};

export interface SnapshotHooks {
  onLeagueLoaded(summary: LeagueSummary): void;
}

export const bindSnapshotControls = (
  container: HTMLElement,
  hooks: SnapshotHooks
): void => {
  const fileInput = $<HTMLInputElement>('[data-role="snapshotFile"]', container);
  const errorLine = $('[data-role="snapshotError"]', container);
  const panel = $('[data-role="leaguePanel"]', container);
  if (!fileInput || !panel) return;

  fileInput.addEventListener('change', async () => {
    const file = fileInput.files?.[0];
    if (!file) return;
    setErrorText(errorLine, '');
    let raw: string;
    try {
      raw = await file.text();
    } catch {
      setErrorText(errorLine, 'could not read the file');
      return;
    }
    await loadSnapshotText(raw, { errorLine, panel, hooks });
  });
};

/** Upload raw snapshot text; shared by the file input and tests. */
export const loadSnapshotText = async (
  raw: string,
  ctx: {
    errorLine: HTMLElement | null;
    panel: HTMLElement;
    hooks: SnapshotHooks;
  }
): Promise<void> => {
  let doc: SnapshotDocument;
  try {
    doc = JSON.parse(raw) as SnapshotDocument;
  } catch {
    setErrorText(ctx.errorLine, 'not valid JSON');
    return;
  }
  try {
    const summary = await uploadSnapshot(raw);
    current = { raw, doc, summary };
    weekVariants = new Map();
    renderLeaguePanel(ctx.panel, summary);
    ctx.hooks.onLeagueLoaded(summary);
  } catch (err) {
    if (err instanceof ApiError) {
      const where = err.body.path ? ` (${err.body.path})` : '';
      setErrorText(ctx.errorLine, `${err.body.message}${where}`);
    } else {
      setErrorText(ctx.errorLine, 'upload failed, is the service running?');
    }
  }
};
