/**
 * Wires the explorer panels together: dataset loading, the threshold slider,
 * the backtest view, and the indicator panel. All analysis lives behind the
 * JSON API; this module only routes responses into the renderers.
 */

import { ApiClient, ApiFailure, LatestOnly } from './api.js';
import type { Mode } from './api.js';
import { digraphModel, lineChart } from './charts.js';
import {
  clear,
  el,
  numeric,
  renderDigraph,
  renderGraph,
  renderLagTable,
  renderLineChart,
  renderNotice,
} from './render.js';
import { debounce, initialState } from './state.js';

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function describe(err: unknown): string {
  if (err instanceof ApiFailure) {
    return err.error.message;
  }
  return err instanceof Error ? err.message : String(err);
}

export function setup(api: ApiClient = new ApiClient()): void {
  const state = initialState();
  const graphRequests = new LatestOnly();
  const backtestRequests = new LatestOnly();
  const signalRequests = new LatestOnly();

  const datasetForm = byId<HTMLFormElement>('dataset-form');
  const tickersInput = byId<HTMLInputElement>('tickers-input');
  const startInput = byId<HTMLInputElement>('start-input');
  const endInput = byId<HTMLInputElement>('end-input');
  const datasetInfo = byId<HTMLElement>('dataset-info');

  const modeSelect = byId<HTMLSelectElement>('mode-select');
  const slider = byId<HTMLInputElement>('threshold-slider');
  const thresholdLabel = byId<HTMLElement>('threshold-label');
  const graphContainer = byId<HTMLElement>('graph-view');
  const graphNotice = byId<HTMLElement>('graph-notice');
  const cliqueLabel = byId<HTMLElement>('clique-label');

  const backtestButton = byId<HTMLButtonElement>('backtest-run');
  const weightingSelect = byId<HTMLSelectElement>('weighting-select');
  const benchmarkInput = byId<HTMLInputElement>('benchmark-input');
  const backtestChart = byId<HTMLElement>('backtest-chart');
  const backtestNotice = byId<HTMLElement>('backtest-notice');
  const outperformance = byId<HTMLElement>('outperformance');

  const indicatorForm = byId<HTMLFormElement>('indicator-form');
  const targetSelect = byId<HTMLSelectElement>('target-select');
  const maxLagInput = byId<HTMLInputElement>('max-lag-input');
  const nInput = byId<HTMLInputElement>('n-input');
  const lagTable = byId<HTMLElement>('lag-table');
  const signalChart = byId<HTMLElement>('signal-chart');
  const signalNotice = byId<HTMLElement>('signal-notice');
  const digraphContainer = byId<HTMLElement>('digraph-view');

  function syncBacktestButton(): void {
    backtestButton.disabled = state.selected.length === 0;
  }

  async function refreshGraph(): Promise<void> {
    if (state.datasetId === null) {
      return;
    }
    const id = state.datasetId;
    const { mode, threshold } = state;
    try {
      const graph = await graphRequests.run(() =>
        api.graph(id, mode, threshold)
      );
      if (graph === undefined) {
        return; // superseded by a newer slider position
      }
      state.graph = graph;
      state.selected = graph.selected;
      renderNotice(graphNotice, null);
      renderGraph(graphContainer, graph, id);
      cliqueLabel.textContent = graph.selected.join(', ');
    } catch (err) {
      if (err instanceof ApiFailure && err.error.code === 'no_clique') {
        state.graph = {
          nodes: state.tickers,
          edges: [],
          max_cliques: [],
          selected: [],
          tie_break_score: null,
        };
        state.selected = [];
        renderGraph(graphContainer, state.graph, id);
        cliqueLabel.textContent = '';
      }
      renderNotice(graphNotice, describe(err));
    }
    syncBacktestButton();
  }

  const debouncedRefresh = debounce(() => {
    void refreshGraph();
  }, 150);

  slider.addEventListener('input', () => {
    state.threshold = Number(slider.value);
    thresholdLabel.textContent = state.threshold.toFixed(3);
    debouncedRefresh();
  });

  modeSelect.addEventListener('change', () => {
    state.mode = modeSelect.value as Mode;
    if (state.correlations) {
      const suggested = state.correlations.stats.suggested;
      state.threshold =
        state.mode === 'diversified'
          ? suggested.diversified
          : suggested.undiversified;
      slider.value = String(state.threshold);
      thresholdLabel.textContent = state.threshold.toFixed(3);
    }
    void refreshGraph();
  });

  datasetForm.addEventListener('submit', (event) => {
    event.preventDefault();
    void (async () => {
      const tickers = tickersInput.value
        .split(',')
        .map((t) => t.trim().toUpperCase())
        .filter((t) => t.length > 0);
      try {
        const handle = await api.registerDataset(
          'explorer',
          tickers,
          startInput.value,
          endInput.value
        );
        state.datasetId = handle.id;
        state.tickers = handle.tickers;
        clear(datasetInfo);
        datasetInfo.append(
          `${handle.tickers.length} tickers, ${handle.start} to ${handle.end}, `
        );
        datasetInfo.appendChild(numeric(handle.rows, 0));
        datasetInfo.append(' return rows');
        for (const warning of handle.warnings) {
          datasetInfo.appendChild(el('p', { class: 'warning' }, warning));
        }
        clear(targetSelect);
        for (const ticker of handle.tickers) {
          targetSelect.appendChild(el('option', { value: ticker }, ticker));
        }
        state.correlations = await api.correlations(handle.id);
        const suggested = state.correlations.stats.suggested;
        state.threshold =
          state.mode === 'diversified'
            ? suggested.diversified
            : suggested.undiversified;
        slider.value = String(state.threshold);
        thresholdLabel.textContent = state.threshold.toFixed(3);
        await refreshGraph();
      } catch (err) {
        renderNotice(graphNotice, describe(err));
      }
    })();
  });

  backtestButton.addEventListener('click', () => {
    void (async () => {
      if (state.datasetId === null || state.selected.length === 0) {
        return;
      }
      const id = state.datasetId;
      try {
        const report = await backtestRequests.run(() =>
          api.backtest(
            id,
            state.selected,
            { scheme: weightingSelect.value },
            benchmarkInput.value.trim().toUpperCase()
          )
        );
        if (report === undefined) {
          return;
        }
        state.backtest = report;
        renderNotice(backtestNotice, null);
        renderLineChart(
          backtestChart,
          lineChart([
            {
              label: 'Portfolio',
              cssClass: 'portfolio',
              values: report.portfolio_cum,
            },
            {
              label: 'Benchmark',
              cssClass: 'benchmark',
              values: report.benchmark_cum,
            },
          ])
        );
        clear(outperformance);
        outperformance.append('Outperforms benchmark ');
        const pct = el(
          'span',
          {
            class: 'numeric',
            'data-raw': String(report.outperformance_fraction),
          },
          (100 * report.outperformance_fraction).toFixed(2) + '%'
        );
        outperformance.appendChild(pct);
        outperformance.append(' of days');
      } catch (err) {
        renderNotice(backtestNotice, describe(err));
      }
    })();
  });

  indicatorForm.addEventListener('submit', (event) => {
    event.preventDefault();
    void (async () => {
      if (state.datasetId === null) {
        return;
      }
      const id = state.datasetId;
      const target = targetSelect.value;
      const indicators = state.tickers.filter((t) => t !== target);
      try {
        const report = await signalRequests.run(async () => {
          const lags = await api.lags(
            id,
            target,
            indicators,
            Number(maxLagInput.value)
          );
          const signal = await api.signalBacktest(
            id,
            target,
            lags.relationships,
            Number(nInput.value)
          );
          return { lags, signal };
        });
        if (report === undefined) {
          return;
        }
        state.lags = report.lags;
        state.signal = report.signal;
        renderNotice(signalNotice, null);
        renderLagTable(lagTable, report.lags);
        renderLineChart(
          signalChart,
          lineChart([
            {
              label: 'Continuous',
              cssClass: 'benchmark',
              values: report.signal.continuous,
            },
            {
              label: 'Indicative',
              cssClass: 'portfolio',
              values: report.signal.indicative,
            },
          ])
        );
        renderDigraph(digraphContainer, digraphModel(report.signal.digraph, id));
      } catch (err) {
        renderNotice(signalNotice, describe(err));
      }
    })();
  });

  syncBacktestButton();
}

if (typeof document !== 'undefined' && document.getElementById('dataset-form')) {
  setup();
}
