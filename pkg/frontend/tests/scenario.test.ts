// Scripted interaction replay against a live served synthetic workspace
// (started by globalSetup): select two iteration columns, open their detail
// panels, click a colorfield row, and verify the selected-samples plot.

import { beforeAll, describe, expect, it } from 'vitest';

import { ApiClient, type DetailResponse, type SeriesResponse } from '../src/api';
import { luminance } from '../src/color';
import { buildDetailPanels, buildHeatmap, buildSelectedSamples } from '../src/model';
import { initialState, rowSelector, setRun, toggleIteration, toggleSeries } from '../src/state';
import { API_BASE } from './globalSetup';

const api = new ApiClient(API_BASE);

let runName: string;
let iterations: number[];

beforeAll(async () => {
  const runs = await api.runs();
  expect(runs.runs.length).toBeGreaterThan(0);
  runName = runs.runs[0].name;
  iterations = runs.runs[0].iterations;
});

describe('scenario replay', () => {
  it('walks the analyst workflow end to end', async () => {
    // 1. open the iteration view and select two columns
    let state = setRun(initialState(), runName);
    const innd = await api.iterationView(runName, state.metric, 'innd');
    const pickA = iterations[1];
    const pickB = iterations[iterations.length - 1];
    state = toggleIteration(state, pickA);
    state = toggleIteration(state, pickB);
    const heatmap = buildHeatmap(innd, state);
    expect(heatmap.columns.filter((c) => c.selected).map((c) => c.iteration)).toEqual([
      pickA,
      pickB,
    ]);

    // 2. fetch detail panels for the selection
    const realDetail = await api.realDetail();
    const details = new Map<number, DetailResponse | string>();
    for (const k of state.selectedIterations) {
      details.set(k, await api.iterationDetail(runName, k));
    }
    const panels = buildDetailPanels(realDetail, null, details, state);
    expect(panels.map((p) => p.iteration)).toEqual([null, pickA, pickB]);
    expect(panels.every((p) => p.detail !== null)).toBe(true);

    // 3. click row 4 in the pickB colorfield
    const clickedRow = 4;
    state = toggleSeries(state, rowSelector(pickB, clickedRow));
    expect(state.selectedSeries).toEqual([`g_${pickB}_${clickedRow}`]);

    // 4. the selected-samples plot shows the median, three nested bands and
    //    the clicked series under its g_<iter>_<id> label
    const stats = await api.stats();
    const series: SeriesResponse[] = [];
    for (const selector of state.selectedSeries) {
      series.push(await api.series(selector, runName));
    }
    const plot = buildSelectedSamples(stats, series);
    expect(plot.median).toHaveLength(realDetail.colorfield.rows[0].length);
    expect(plot.bands.map((b) => b.name)).toEqual(['99.7', '95', '68']);
    for (let t = 0; t < plot.median.length; t++) {
      const [outer, mid, inner] = plot.bands;
      expect(outer.lo[t]).toBeLessThanOrEqual(mid.lo[t]);
      expect(mid.lo[t]).toBeLessThanOrEqual(inner.lo[t]);
      expect(inner.hi[t]).toBeLessThanOrEqual(mid.hi[t]);
      expect(mid.hi[t]).toBeLessThanOrEqual(outer.hi[t]);
      expect(plot.median[t]).toBeGreaterThanOrEqual(inner.lo[t]);
      expect(plot.median[t]).toBeLessThanOrEqual(inner.hi[t]);
    }
    expect(plot.series).toHaveLength(1);
    expect(plot.series[0].label).toBe(`g_${pickB}_${clickedRow}`);
    expect(plot.series[0].diff).toHaveLength(plot.median.length);

    // 5. the clicked series' values come from the snapshot row the server
    //    reports for that PC1-sorted display id
    const detailB = details.get(pickB) as DetailResponse;
    expect(plot.series[0].values).toEqual(detailB.colorfield.rows[clickedRow]);
  });

  it('maps served min/max cells to luminance 1 and 0', async () => {
    const view = await api.iterationView(runName, 'ed', 'onnd');
    const cells = view.columns.flat();
    expect(luminance(Math.min(...cells), view.vmin, view.vmax)).toBe(1);
    expect(luminance(Math.max(...cells), view.vmin, view.vmax)).toBe(0);
  });

  it('toggling a selected column twice restores the prior panel set', async () => {
    let state = setRun(initialState(), runName);
    state = toggleIteration(state, iterations[0]);
    const realDetail = await api.realDetail();
    const details = new Map<number, DetailResponse | string>([
      [iterations[0], await api.iterationDetail(runName, iterations[0])],
      [iterations[2], await api.iterationDetail(runName, iterations[2])],
    ]);
    const before = buildDetailPanels(realDetail, null, details, state);
    state = toggleIteration(state, iterations[2]);
    state = toggleIteration(state, iterations[2]);
    const after = buildDetailPanels(realDetail, null, details, state);
    expect(after.map((p) => p.iteration)).toEqual(before.map((p) => p.iteration));
  });

  it('serves error envelopes the client surfaces as ApiError', async () => {
    await expect(api.series('x_1')).rejects.toMatchObject({
      body: { status: 400 },
    });
  });
});
