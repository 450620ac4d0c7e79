/**
 * Run configuration form: preset picker with per-field overrides.
 *
 * Picking a preset fills the fields with the values the server will
 * resolve for that name. The launch request then carries the preset name
 * plus only the fields the user actually edited, so the server remains the
 * authority on what a preset means.
 *
 * Playoff weeks are a property of the snapshot, not the run config; when
 * that field is edited the controller re-uploads the snapshot with the new
 * weeks (see snapshotController) and launches against the fresh id.
 */

import { ApiError, startRun } from './api.js';
import { $, $$, escapeHtml, setErrorText } from './dom.js';
import { fmtWeeks } from './format.js';
import {
  DEFAULT_MUTATION_PROBS,
  PRESETS,
  presetByName,
  presetValue,
  type EngineKnobs,
  type PresetDef,
} from './presets.js';
import { ensureSnapshotForWeeks, getSnapshot } from './snapshotController.js';
import type { RunConfigRequest, RunHandle } from './types.js';

interface KnobDef {
  field: keyof EngineKnobs;
  label: string;
  integer: boolean;
}

const KNOBS: KnobDef[] = [
  { field: 'alpha', label: 'alpha (my gain)', integer: false },
  { field: 'beta', label: 'beta (their gain)', integer: false },
  { field: 'gamma', label: 'gamma (fairness)', integer: false },
  { field: 'playoff_weight', label: 'playoff weight', integer: false },
  { field: 'max_players_per_side', label: 'max per side', integer: true },
  { field: 'generations', label: 'generations', integer: true },
  { field: 'rng_seed', label: 'seed', integer: true },
  { field: 'max_population', label: 'population', integer: true },
];

export interface CollectedConfig {
  config: RunConfigRequest;
  playoffWeeks: number[];
  /** field name (or 'form') -> message; empty when the form is clean */
  errors: Record<string, string>;
}

export interface ConfigHooks {
  onRunStarted(handle: RunHandle, configUsed: RunConfigRequest): void;
}

const knobInput = (container: HTMLElement, field: string): HTMLInputElement | null =>
  $<HTMLInputElement>(`input[data-field="${field}"]`, container);

export const renderConfigForm = (container: HTMLElement): void => {
  const options = PRESETS.map(
    (p) => `<option value="${escapeHtml(p.name)}">${escapeHtml(p.label)}</option>`
  ).join('');
  const knobs = KNOBS.map(
    (knob) => `
      <label class="knob">${escapeHtml(knob.label)}
        <input type="text" data-field="${knob.field}" inputmode="decimal">
        <span class="field-error" data-field-error="${knob.field}"></span>
      </label>`
  ).join('');
  container.innerHTML = `
    <form data-role="configForm" novalidate>
      <fieldset data-role="configFields" disabled>
        <label class="knob">preset
          <select data-role="preset">${options}</select>
        </label>
        <div class="knob-grid">
          ${knobs}
          <label class="knob">playoff weeks
            <input type="text" data-field="playoff_weeks" placeholder="15,16,17">
            <span class="field-error" data-field-error="playoff_weeks"></span>
          </label>
          <label class="knob">mutation probs
            <input type="text" data-field="mutation_probs">
            <span class="field-error" data-field-error="mutation_probs"></span>
          </label>
        </div>
        <button type="submit" data-role="launch">start run</button>
        <span class="field-error" data-field-error="form"></span>
      </fieldset>
    </form>
  `;
  applyPreset(container, presetByName('default'));
};

/** Fill every field with the values the preset implies and clear errors. */
export const applyPreset = (container: HTMLElement, preset: PresetDef): void => {
  for (const knob of KNOBS) {
    const input = knobInput(container, knob.field);
    if (input) input.value = String(presetValue(preset, knob.field));
  }
  const probs = knobInput(container, 'mutation_probs');
  if (probs) probs.value = DEFAULT_MUTATION_PROBS;
  const weeks = knobInput(container, 'playoff_weeks');
  if (weeks) weeks.value = fmtWeeks(getSnapshot()?.summary.playoff_weeks ?? []);
  clearFieldErrors(container);
};

const clearFieldErrors = (container: HTMLElement): void => {
  for (const el of $$('[data-field-error]', container)) setErrorText(el, '');
};

const showFieldError = (
  container: HTMLElement,
  field: string,
  message: string
): void => {
  const el = $(`[data-field-error="${field}"]`, container);
  setErrorText(el ?? $('[data-field-error="form"]', container), message);
};

const parseProbs = (text: string): number[] | null => {
  const parts = text.split(',').map((part) => part.trim());
  if (parts.length !== 6) return null;
  const probs = parts.map(Number);
  if (probs.some((p) => !Number.isFinite(p) || p < 0 || p > 1)) return null;
  const sum = probs.reduce((acc, p) => acc + p, 0);
  // server enforces 1e-9; this only catches typos before a request is sent
  if (Math.abs(sum - 1.0) > 1e-6) return null;
  return probs;
};

const parseWeeks = (text: string): number[] | null => {
  const trimmed = text.trim();
  if (!trimmed) return [];
  const weeks = trimmed.split(',').map((part) => Number(part.trim()));
  if (weeks.some((w) => !Number.isInteger(w) || w < 1)) return null;
  return weeks;
};

/**
 * Read the form into a request payload. Only fields that differ from the
 * selected preset are included, so presets stay server-resolved.
 */
export const collectConfig = (container: HTMLElement): CollectedConfig => {
  const errors: Record<string, string> = {};
  const presetSelect = $<HTMLSelectElement>('[data-role="preset"]', container);
  const preset = presetByName(presetSelect?.value ?? 'default');
  const config: RunConfigRequest = { preset: preset.name };

  for (const knob of KNOBS) {
    const input = knobInput(container, knob.field);
    if (!input) continue;
    const text = input.value.trim();
    const value = Number(text);
    if (text === '' || !Number.isFinite(value)) {
      errors[knob.field] = 'must be a number';
      continue;
    }
    if (knob.integer && !Number.isInteger(value)) {
      errors[knob.field] = 'must be a whole number';
      continue;
    }
    if (value !== presetValue(preset, knob.field)) {
      config[knob.field] = value;
    }
  }

  const probsInput = knobInput(container, 'mutation_probs');
  const probsText = probsInput?.value ?? DEFAULT_MUTATION_PROBS;
  const probs = parseProbs(probsText);
  if (probs === null) {
    errors['mutation_probs'] = 'needs 6 probabilities in [0, 1] summing to 1';
  } else if (probsText.trim() !== DEFAULT_MUTATION_PROBS) {
    config.mutation_probs = probs;
  }

  const weeksInput = knobInput(container, 'playoff_weeks');
  const weeksText = weeksInput?.value ?? '';
  const weeks = parseWeeks(weeksText);
  if (weeks === null) {
    errors['playoff_weeks'] = 'comma-separated week numbers, like 15,16,17';
  }

  return { config, playoffWeeks: weeks ?? [], errors };
};

/** Current form config for the what-if panel; null while the form is invalid. */
export const getCurrentConfig = (container: HTMLElement): RunConfigRequest | null => {
  const collected = collectConfig(container);
  return Object.keys(collected.errors).length ? null : collected.config;
};

/** Max players per trade side the form currently allows. */
export const getMaxPerSide = (container: HTMLElement): number => {
  const input = knobInput(container, 'max_players_per_side');
  const value = Number(input?.value ?? '');
  return Number.isInteger(value) && value >= 1 ? value : 3;
};

/** Route a server rejection to the field it names, if any. */
const fieldForMessage = (message: string): string => {
  for (const knob of KNOBS) {
    if (message.includes(knob.field)) return knob.field;
  }
  if (message.includes('mutation_probs')) return 'mutation_probs';
  if (message.includes('playoff')) return 'playoff_weeks';
  return 'form';
};

/** Re-fill preset-derived fields after a snapshot upload (playoff weeks). */
export const refreshFromSnapshot = (container: HTMLElement): void => {
  const presetSelect = $<HTMLSelectElement>('[data-role="preset"]', container);
  applyPreset(container, presetByName(presetSelect?.value ?? 'default'));
};

export const setConfigEnabled = (container: HTMLElement, enabled: boolean): void => {
  const fields = $<HTMLFieldSetElement>('[data-role="configFields"]', container);
  if (fields) fields.disabled = !enabled;
};

export const bindConfigForm = (container: HTMLElement, hooks: ConfigHooks): void => {
  renderConfigForm(container);
  const form = $<HTMLFormElement>('[data-role="configForm"]', container);
  const presetSelect = $<HTMLSelectElement>('[data-role="preset"]', container);
  const launch = $<HTMLButtonElement>('[data-role="launch"]', container);
  if (!form || !presetSelect) return;

  presetSelect.addEventListener('change', () => {
    applyPreset(container, presetByName(presetSelect.value));
  });

  form.addEventListener('submit', (event) => {
    event.preventDefault();
    void (async () => {
      clearFieldErrors(container);
      const snapshot = getSnapshot();
      if (!snapshot) {
        showFieldError(container, 'form', 'upload a snapshot first');
        return;
      }
      const { config, playoffWeeks, errors } = collectConfig(container);
      if (Object.keys(errors).length) {
        for (const [field, message] of Object.entries(errors)) {
          showFieldError(container, field, message);
        }
        return;
      }
      if (launch) launch.disabled = true;
      try {
        const summary = await ensureSnapshotForWeeks(playoffWeeks);
        const handle = await startRun(summary.snapshot_id, config);
        hooks.onRunStarted(handle, config);
      } catch (err) {
        if (err instanceof ApiError) {
          showFieldError(container, fieldForMessage(err.body.message), err.body.message);
        } else {
          showFieldError(container, 'form', 'launch failed, is the service running?');
        }
      } finally {
        if (launch) launch.disabled = false;
      }
    })();
  });
};
