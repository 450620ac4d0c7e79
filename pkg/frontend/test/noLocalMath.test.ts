/**
 * The client renders service numbers, it never computes its own.
 *
 * The stubbed service here returns payloads whose numbers are mutually
 * inconsistent on purpose: weekly gains that do not sum to the totals, a
 * cost no weighting of the gains could produce, and an /evaluate body that
 * disagrees with the run row for the same trade. A client doing any local
 * arithmetic would display something other than the served values; this
 * suite asserts the page shows exactly what went over the wire.
 */

import { beforeAll, describe, expect, it } from 'vitest';

import { fmtPoints } from '../src/format.js';
import { allTexts, mountSections, setInputValue, waitFor, type Sections } from './dom.js';
import {
  doneHandle,
  leagueSummary,
  queuedHandle,
  sentinelEvaluation,
  sentinelRow,
  sentinelWhatIfEvaluation,
  snapshotRaw,
} from './fixtures.js';
import {
  collectNumbers,
  installFetchStub,
  type RecordedExchange,
} from './stubs.js';

let sections: Sections;
let exchanges: RecordedExchange[];

beforeAll(async () => {
  sections = mountSections();
  exchanges = installFetchStub((method, path) => {
    if (method === 'POST' && path === '/snapshots') return { body: leagueSummary() };
    if (method === 'POST' && path === '/runs') return { body: queuedHandle() };
    if (method === 'GET' && path === '/runs/run-1') {
      return { body: doneHandle([sentinelRow()]) };
    }
    if (method === 'POST' && path === '/evaluate') {
      return { body: sentinelWhatIfEvaluation() };
    }
    return undefined;
  });
  // boot the real page wiring against the stubbed service
  await import('../src/main.js');
});

const uploadThroughInput = async (): Promise<void> => {
  const fileInput = sections.snapshot.querySelector<HTMLInputElement>(
    '[data-role="snapshotFile"]'
  );
  if (!fileInput) throw new Error('missing file input');
  const file = new File([snapshotRaw()], 'league.json', { type: 'application/json' });
  Object.defineProperty(fileInput, 'files', { value: [file], configurable: true });
  fileInput.dispatchEvent(new Event('change', { bubbles: true }));
  await waitFor(
    () => sections.snapshot.textContent?.includes('Riverhawks') ?? false,
    'league panel'
  );
};

describe('sentinel payloads end to end', () => {
  it('displays served numbers verbatim through run, table, drilldown and what-if', async () => {
    await uploadThroughInput();

    const generations = sections.config.querySelector<HTMLInputElement>(
      'input[data-field="generations"]'
    );
    if (!generations) throw new Error('missing generations field');
    setInputValue(generations, '60');
    sections.config
      .querySelector('[data-role="configForm"]')
      ?.dispatchEvent(new Event('submit', { bubbles: true, cancelable: true }));

    // the poller flips the card to done and the table fills in
    await waitFor(
      () => sections.trades.querySelectorAll('tr[data-index]').length === 1,
      'trade table'
    );

    const row = sections.trades.querySelector<HTMLElement>('tr[data-index]');
    if (!row) throw new Error('row vanished');
    const served = sentinelEvaluation();
    const costText = row.querySelector('[data-role="cost"]')?.textContent;
    expect(costText).toBe(fmtPoints(served.cost));
    expect(row.querySelector('[data-role="gainA"]')?.textContent).toBe(
      fmtPoints(served.gain_a)
    );
    expect(row.querySelector('[data-role="gainB"]')?.textContent).toBe(
      fmtPoints(served.gain_b)
    );

    // the weekly values do not sum to gain_a; a recomputing client would
    // have shown the sum instead of the served total
    const weeklySum = 111.11 + 222.22;
    expect(fmtPoints(served.gain_a)).not.toBe(fmtPoints(weeklySum));

    row
      .querySelector('td')
      ?.dispatchEvent(new MouseEvent('click', { bubbles: true }));
    await waitFor(
      () => sections.trades.querySelectorAll('[data-role="weeklyRow"]').length === 2,
      'drilldown'
    );
    expect(allTexts(sections.trades, '[data-role="weekGainA"]')).toEqual([
      '111.11',
      '222.22',
    ]);
    expect(
      sections.trades.querySelector('[data-role="weightedGainA"]')?.textContent
    ).toBe(fmtPoints(served.weighted_gain_a));

    // what-if shows the /evaluate response, not a copy of the row and not
    // a recomputation: the stub serves different numbers on purpose
    sections.trades
      .querySelector('[data-role="whatIfBtn"]')
      ?.dispatchEvent(new MouseEvent('click', { bubbles: true }));
    await waitFor(
      () => (sections.whatIf.querySelector('[data-role="cost"]')?.textContent ?? '') !== '',
      'what-if panel'
    );
    const panelCost = sections.whatIf.querySelector('[data-role="cost"]')?.textContent;
    const whatIfServed = sentinelWhatIfEvaluation();
    expect(panelCost).toBe(fmtPoints(whatIfServed.cost));
    expect(panelCost).not.toBe(costText);
    expect(sections.whatIf.querySelector('[data-role="gainA"]')?.textContent).toBe(
      fmtPoints(whatIfServed.gain_a)
    );
    expect(sections.whatIf.querySelector('[data-role="feasible"]')?.textContent?.trim()).toBe(
      'infeasible'
    );
  });

  it('every number on screen appeared in a service response', () => {
    const displayed = [
      ...allTexts(sections.trades, '[data-role="cost"], [data-role="gainA"], [data-role="gainB"]'),
      ...allTexts(
        sections.trades,
        '[data-role="weekGainA"], [data-role="weekGainB"], [data-role="weightedGainA"]'
      ),
      ...allTexts(
        sections.whatIf,
        '[data-role="cost"], [data-role="gainA"], [data-role="gainB"], ' +
          '[data-role="weekGainA"], [data-role="weekGainB"], [data-role="weightedGainA"]'
      ),
    ];
    expect(displayed.length).toBeGreaterThan(10);

    const fromWire = new Set<string>();
    for (const exchange of exchanges) {
      for (const num of collectNumbers(exchange.responseBody)) {
        fromWire.add(fmtPoints(num));
      }
    }
    for (const value of displayed) {
      expect(fromWire).toContain(value);
    }
  });
});
