/**
 * Hyperparameter presets shown in the config form.
 *
 * Values mirror the presets the server resolves by name. The form displays
 * them so the user can see what a preset means before overriding fields;
 * the request always carries the preset name, and only fields the user
 * edited away from the preset are sent as overrides (the server stays the
 * authority on resolution).
 */

export interface EngineKnobs {
  alpha: number;
  beta: number;
  gamma: number;
  playoff_weight: number;
  max_players_per_side: number;
  generations: number;
  max_population: number;
  rng_seed: number;
}

export const DEFAULT_KNOBS: EngineKnobs = {
  alpha: 1.0,
  beta: 1.0,
  gamma: 0.25,
  playoff_weight: 1.2,
  max_players_per_side: 3,
  generations: 5000,
  max_population: 100,
  rng_seed: 0,
};

export const DEFAULT_MUTATION_PROBS = '0.2, 0.16, 0.16, 0.16, 0.16, 0.16';

export interface PresetDef {
  name: string;
  label: string;
  overrides: Partial<EngineKnobs>;
}

export const PRESETS: PresetDef[] = [
  { name: 'default', label: 'Default', overrides: {} },
  { name: 'high_playoff', label: 'High Playoff Weight', overrides: { playoff_weight: 1.5 } },
  { name: 'user_gain', label: 'User Gain Emphasis', overrides: { alpha: 1.2 } },
  {
    name: 'opponent_deemphasis',
    label: 'Opponent De-emphasis',
    overrides: { beta: 0.8, gamma: 0.3 },
  },
  { name: 'fairness', label: 'Fairness Emphasis', overrides: { gamma: 0.4 } },
];

export const presetByName = (name: string): PresetDef =>
  PRESETS.find((p) => p.name === name) ?? PRESETS[0]!;

/** Value a preset implies for one knob (preset override or the default). */
export const presetValue = (preset: PresetDef, field: keyof EngineKnobs): number =>
  preset.overrides[field] ?? DEFAULT_KNOBS[field];
