/**
 * Page wiring: bind every controller and route events between them.
 *
 * The service origin defaults to same-origin (serve.mjs proxies API paths);
 * pass ?api=http://host:port to point the page somewhere else.
 */

import { setApiBase } from './api.js';
import {
  bindConfigForm,
  collectConfig,
  getMaxPerSide,
  refreshFromSnapshot,
  setConfigEnabled,
} from './configController.js';
import { $ } from './dom.js';
import { bindRunList, resetRunState, trackRun } from './runController.js';
import {
  bindSnapshotControls,
  ensureSnapshotForWeeks,
} from './snapshotController.js';
import {
  bindTradeTable,
  setLeagueContext,
  setTableRows,
} from './tradeTableController.js';
import { bindWhatIf, loadTrade, resetWhatIf } from './whatIfController.js';

const boot = (): void => {
  const params = new URLSearchParams(window.location.search);
  setApiBase(params.get('api') ?? '');

  const snapshotSection = $('#snapshot-section');
  const configSection = $('#config-section .controller-root');
  const runsSection = $('#runs-section .controller-root');
  const tradesSection = $('#trades-section .controller-root');
  const whatIfSection = $('#whatif-section .controller-root');
  if (!snapshotSection || !configSection || !runsSection || !tradesSection || !whatIfSection) {
    return;
  }

  bindConfigForm(configSection, {
    onRunStarted: (handle, configUsed) => trackRun(handle, configUsed),
  });

  bindRunList(runsSection, {
    onRunsChanged: (selected) => {
      if (selected && selected.handle.state === 'done') {
        setTableRows(selected.handle.trades ?? []);
      } else {
        setTableRows(null);
      }
    },
  });

  bindTradeTable(tradesSection, {
    onWhatIf: (row) => {
      loadTrade(row);
      whatIfSection.scrollIntoView?.({ behavior: 'smooth' });
    },
  });

  bindWhatIf(whatIfSection, {
    getMaxPerSide: () => getMaxPerSide(configSection),
    getEvalContext: async () => {
      const collected = collectConfig(configSection);
      if (Object.keys(collected.errors).length) return null;
      try {
        const summary = await ensureSnapshotForWeeks(collected.playoffWeeks);
        return { snapshotId: summary.snapshot_id, config: collected.config };
      } catch {
        return null;
      }
    },
  });

  bindSnapshotControls(snapshotSection, {
    onLeagueLoaded: (summary) => {
      setConfigEnabled(configSection, true);
      refreshFromSnapshot(configSection);
      resetRunState();
      setLeagueContext(summary);
      setTableRows(null);
      resetWhatIf(summary);
    },
  });
};

if (document.readyState === 'loading') {
  document.addEventListener('DOMContentLoaded', boot);
} else {
  boot();
}
