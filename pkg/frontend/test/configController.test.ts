import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';

import {
  bindConfigForm,
  collectConfig,
  getMaxPerSide,
  refreshFromSnapshot,
  setConfigEnabled,
} from '../src/configController.js';
import { loadSnapshotText, resetSnapshotState } from '../src/snapshotController.js';
import type { RunConfigRequest, RunHandle } from '../src/types.js';
import {
  flush,
  mountSections,
  setInputValue,
  setSelectValue,
  textOf,
  waitFor,
  type Sections,
} from './dom.js';
import { leagueSummary, queuedHandle, snapshotRaw } from './fixtures.js';
import { installFetchStub, type RecordedExchange, type RouteHandler } from './stubs.js';

let sections: Sections;
let started: Array<{ handle: RunHandle; config: RunConfigRequest }>;

const field = (name: string): HTMLInputElement => {
  const input = sections.config.querySelector<HTMLInputElement>(
    `input[data-field="${name}"]`
  );
  if (!input) throw new Error(`missing field ${name}`);
  return input;
};

const submitForm = (): void => {
  const form = sections.config.querySelector<HTMLFormElement>('[data-role="configForm"]');
  form?.dispatchEvent(new Event('submit', { bubbles: true, cancelable: true }));
};

/** Stub the service, upload the fixture snapshot, and bind the form. */
const setUp = async (extraRoutes?: RouteHandler): Promise<RecordedExchange[]> => {
  const exchanges = installFetchStub((method, path, body) => {
    const extra = extraRoutes?.(method, path, body);
    if (extra) return extra;
    if (method === 'POST' && path === '/snapshots') return { body: leagueSummary() };
    if (method === 'POST' && path === '/runs') return { body: queuedHandle() };
    return undefined;
  });
  sections = mountSections();
  started = [];
  bindConfigForm(sections.config, {
    onRunStarted: (handle, config) => started.push({ handle, config }),
  });
  const errorLine = sections.snapshot.querySelector<HTMLElement>(
    '[data-role="snapshotError"]'
  );
  const panel = sections.snapshot.querySelector<HTMLElement>('[data-role="leaguePanel"]');
  if (!panel) throw new Error('missing league panel');
  await loadSnapshotText(snapshotRaw(), {
    errorLine,
    panel,
    hooks: { onLeagueLoaded: () => undefined },
  });
  setConfigEnabled(sections.config, true);
  refreshFromSnapshot(sections.config);
  return exchanges;
};

beforeEach(() => {
  resetSnapshotState();
});

afterEach(() => {
  vi.unstubAllGlobals();
});

describe('preset picker', () => {
  it('fills the fields a preset implies', async () => {
    await setUp();
    const preset = sections.config.querySelector<HTMLSelectElement>('[data-role="preset"]');
    if (!preset) throw new Error('missing preset select');
    setSelectValue(preset, 'fairness');
    expect(field('gamma').value).toBe('0.4');
    expect(field('alpha').value).toBe('1');
    setSelectValue(preset, 'high_playoff');
    expect(field('playoff_weight').value).toBe('1.5');
    expect(field('gamma').value).toBe('0.25');
  });

  it('prefills playoff weeks from the uploaded snapshot', async () => {
    await setUp();
    expect(field('playoff_weeks').value).toBe('14');
  });
});

describe('collectConfig', () => {
  it('sends only the preset name when nothing was edited', async () => {
    await setUp();
    const { config, errors } = collectConfig(sections.config);
    expect(errors).toEqual({});
    expect(config).toEqual({ preset: 'default' });
  });

  it('includes only fields edited away from the preset', async () => {
    await setUp();
    setInputValue(field('generations'), '60');
    setInputValue(field('max_population'), '30');
    setInputValue(field('rng_seed'), '7');
    const { config } = collectConfig(sections.config);
    expect(config).toEqual({
      preset: 'default',
      generations: 60,
      max_population: 30,
      rng_seed: 7,
    });
  });

  it('reads the what-if cap from the max per side field', async () => {
    await setUp();
    expect(getMaxPerSide(sections.config)).toBe(3);
    setInputValue(field('max_players_per_side'), '2');
    expect(getMaxPerSide(sections.config)).toBe(2);
  });
});

describe('client validation', () => {
  it('rejects a bad mutation-prob override without sending a request', async () => {
    const exchanges = await setUp();
    const uploads = exchanges.length;
    setInputValue(field('mutation_probs'), '0.5, 0.5');
    submitForm();
    await flush();
    expect(textOf(sections.config, '[data-field-error="mutation_probs"]')).toContain(
      '6 probabilities'
    );
    expect(exchanges.length).toBe(uploads);
    expect(started).toHaveLength(0);
  });

  it('flags a non-numeric knob inline', async () => {
    const exchanges = await setUp();
    const uploads = exchanges.length;
    setInputValue(field('alpha'), 'lots');
    submitForm();
    await flush();
    expect(textOf(sections.config, '[data-field-error="alpha"]')).toBe('must be a number');
    expect(exchanges.length).toBe(uploads);
  });
});

describe('launching', () => {
  it('starts a run against the uploaded snapshot', async () => {
    const exchanges = await setUp();
    setInputValue(field('generations'), '60');
    submitForm();
    await waitFor(() => started.length === 1, 'run start');
    const runCall = exchanges.find((e) => e.path === '/runs');
    expect(runCall?.requestBody).toEqual({
      snapshot_id: 'snap-1',
      config: { preset: 'default', generations: 60 },
    });
    expect(started[0]?.handle.run_id).toBe('run-1');
  });

  it('re-uploads the snapshot when playoff weeks were overridden', async () => {
    let uploadCount = 0;
    const exchanges = await setUp((method, path) => {
      if (method === 'POST' && path === '/snapshots') {
        uploadCount += 1;
        if (uploadCount > 1) {
          return { body: { ...leagueSummary(), snapshot_id: 'snap-2', playoff_weeks: [13] } };
        }
      }
      return undefined;
    });
    setInputValue(field('playoff_weeks'), '13');
    submitForm();
    await waitFor(() => started.length === 1, 'run start');
    const secondUpload = exchanges.filter((e) => e.path === '/snapshots')[1];
    const doc = secondUpload?.requestBody as { league: { playoff_weeks: number[] } };
    expect(doc.league.playoff_weeks).toEqual([13]);
    const runCall = exchanges.find((e) => e.path === '/runs');
    expect(runCall?.requestBody).toMatchObject({ snapshot_id: 'snap-2' });
  });

  it('routes a server rejection to the field it names', async () => {
    await setUp((method, path) =>
      method === 'POST' && path === '/runs'
        ? {
            status: 400,
            body: { code: 'invalid_config', message: 'generations must be >= 0' },
          }
        : undefined
    );
    setInputValue(field('generations'), '-1');
    submitForm();
    await waitFor(
      () => textOf(sections.config, '[data-field-error="generations"]') !== '',
      'inline error'
    );
    expect(textOf(sections.config, '[data-field-error="generations"]')).toBe(
      'generations must be >= 0'
    );
  });
});
