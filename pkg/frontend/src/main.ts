// App wiring: fetches, selection state, re-render on every state change.

import { ApiClient, type DetailResponse, type SeriesResponse, type StatsResponse } from './api.js';
import { buildDetailPanels, buildHeatmap, buildSelectedSamples } from './model.js';
import { renderDetailPanels, renderHeatmap, renderSelectedSamples, type Handlers } from './render.js';
import {
  initialState,
  rowSelector,
  setMetric,
  setRun,
  toggleIteration,
  toggleSeries,
  removeSeries,
  type SelectionState,
} from './state.js';

const params = new URLSearchParams(window.location.search);
const API_BASE = params.get('api') ?? 'http://127.0.0.1:8040';

const api = new ApiClient(API_BASE);

let state: SelectionState = initialState();
let stats: StatsResponse | null = null;
let realDetail: DetailResponse | null = null;
let realError: string | null = null;
const iterationDetails = new Map<number, DetailResponse | string>();
const seriesData = new Map<string, SeriesResponse>();

// One in-flight controller per panel slot; a newer selection for the same
// slot cancels the stale fetch.
const inflight = new Map<string, AbortController>();

function fetchSlot<T>(slot: string, fn: (signal: AbortSignal) => Promise<T>): Promise<T> {
  inflight.get(slot)?.abort();
  const controller = new AbortController();
  inflight.set(slot, controller);
  return fn(controller.signal);
}

function mustGet(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

const handlers: Handlers = {
  onColumnClick(iteration) {
    update(toggleIteration(state, iteration));
  },
  onRowClick(iteration, rowId) {
    update(toggleSeries(state, rowSelector(iteration, rowId)));
  },
  onSeriesRemove(selector) {
    update(removeSeries(state, selector));
  },
};

async function loadIterationViews() {
  const run = state.activeRun;
  if (!run) return;
  for (const kind of ['innd', 'onnd'] as const) {
    const target = mustGet(`${kind}-view`);
    try {
      const view = await fetchSlot(`view-${kind}`, (signal) =>
        api.iterationView(run, state.metric, kind, 'none', signal),
      );
      if (state.activeRun !== run) return;
      renderHeatmap(target, buildHeatmap(view, state), handlers);
    } catch (err) {
      if ((err as Error).name === 'AbortError') return;
      target.replaceChildren();
      target.appendChild(document.createTextNode(`failed to load ${kind}: ${err}`));
    }
  }
}

async function loadDetails() {
  const run = state.activeRun;
  for (const iteration of state.selectedIterations) {
    if (run && !iterationDetails.has(iteration)) {
      try {
        const detail = await fetchSlot(`detail-${iteration}`, (signal) =>
          api.iterationDetail(run, iteration, undefined, signal),
        );
        iterationDetails.set(iteration, detail);
      } catch (err) {
        if ((err as Error).name === 'AbortError') continue;
        iterationDetails.set(iteration, String(err));
      }
    }
  }
  renderDetailPanels(
    mustGet('detail-panels'),
    buildDetailPanels(realDetail, realError, iterationDetails, state),
    handlers,
  );
}

async function loadSeries() {
  if (!stats) return;
  const responses: SeriesResponse[] = [];
  for (const selector of state.selectedSeries) {
    if (!seriesData.has(selector)) {
      try {
        const run = selector.startsWith('g_') ? (state.activeRun ?? undefined) : undefined;
        const resp = await fetchSlot(`series-${selector}`, (signal) =>
          api.series(selector, run, signal),
        );
        seriesData.set(selector, resp);
      } catch (err) {
        if ((err as Error).name === 'AbortError') continue;
        continue; // degraded: skip the series, keep the plot usable
      }
    }
    const resp = seriesData.get(selector);
    if (resp) responses.push(resp);
  }
  renderSelectedSamples(
    mustGet('selected-samples'),
    buildSelectedSamples(stats, responses),
    handlers,
  );
}

function update(next: SelectionState) {
  const prev = state;
  state = next;
  if (next.activeRun !== prev.activeRun || next.metric !== prev.metric) {
    if (next.activeRun !== prev.activeRun) iterationDetails.clear();
    void loadIterationViews();
  }
  void loadDetails();
  void loadSeries();
}

async function boot() {
  const runsBox = mustGet('runs');
  const metricBox = mustGet('metric');
  try {
    const [runsResp, statsResp, realResp] = await Promise.all([
      api.runs(),
      api.stats(),
      api.realDetail(),
    ]);
    stats = statsResp;
    realDetail = realResp;
    runsBox.replaceChildren();
    for (const run of runsResp.runs) {
      const btn = document.createElement('button');
      btn.textContent = run.name;
      btn.addEventListener('click', () => update(setRun(state, run.name)));
      runsBox.appendChild(btn);
    }
    for (const metric of ['ed', 'dtw'] as const) {
      const btn = document.createElement('button');
      btn.textContent = metric.toUpperCase();
      btn.addEventListener('click', () => update(setMetric(state, metric)));
      metricBox.appendChild(btn);
    }
    if (runsResp.runs.length > 0) update(setRun(state, runsResp.runs[0].name));
  } catch (err) {
    realError = String(err);
    runsBox.textContent = `API unreachable at ${API_BASE}: ${err}`;
  }
}

void boot();
