// Pure view models. Rendering is a thin projection of these structures onto
// the DOM, so the scripted-interaction tests assert against the models
// directly: the panel structure is a pure function of (fetched data, state).

import type {
  DetailResponse,
  IterationViewResponse,
  SeriesResponse,
  StatsResponse,
} from './api.js';
import { luminance } from './color.js';
import type { SelectionState } from './state.js';

export interface HeatmapColumn {
  iteration: number;
  selected: boolean;
  /** luminance per display row (PC1-sorted), 1 = bright/low, 0 = dark/high */
  cells: number[];
}

export interface HeatmapModel {
  kind: 'innd' | 'onnd';
  metric: 'ed' | 'dtw';
  columns: HeatmapColumn[];
  /** numeric scale endpoints, always shown next to the color legend */
  vmin: number;
  vmax: number;
}

export function buildHeatmap(
  view: IterationViewResponse,
  selection: SelectionState,
): HeatmapModel {
  const columns = view.iterations.map((iteration, k) => ({
    iteration,
    selected: selection.selectedIterations.includes(iteration),
    cells: view.columns[k].map((v) => luminance(v, view.vmin, view.vmax)),
  }));
  return { kind: view.kind, metric: view.metric, columns, vmin: view.vmin, vmax: view.vmax };
}

export interface DetailPanel {
  title: string;
  /** null for the real-data panel, the iteration number otherwise */
  iteration: number | null;
  detail: DetailResponse | null;
  /** set when this panel's fetch failed; the other panels stay usable */
  error: string | null;
}

export function buildDetailPanels(
  realDetail: DetailResponse | null,
  realError: string | null,
  iterationDetails: Map<number, DetailResponse | string>,
  selection: SelectionState,
): DetailPanel[] {
  const panels: DetailPanel[] = [
    {
      title: 'real data',
      iteration: null,
      detail: realDetail,
      error: realDetail ? null : (realError ?? 'loading'),
    },
  ];
  for (const iteration of selection.selectedIterations) {
    const entry = iterationDetails.get(iteration);
    panels.push({
      title: `iteration ${iteration}`,
      iteration,
      detail: typeof entry === 'object' ? entry : null,
      error: typeof entry === 'string' ? entry : entry === undefined ? 'loading' : null,
    });
  }
  return panels;
}

export interface BandModel {
  name: '68' | '95' | '99.7';
  lo: number[];
  hi: number[];
}

export interface SeriesLine {
  label: string;
  values: number[];
  diff: number[];
  membership: '68' | '95' | '99.7' | null;
}

export interface SelectedSamplesModel {
  median: number[];
  /** outermost first so nested bands paint back-to-front */
  bands: BandModel[];
  series: SeriesLine[];
}

export function buildSelectedSamples(
  stats: StatsResponse,
  series: SeriesResponse[],
): SelectedSamplesModel {
  return {
    median: stats.median,
    bands: [
      { name: '99.7', lo: stats.band997.lo, hi: stats.band997.hi },
      { name: '95', lo: stats.band95.lo, hi: stats.band95.hi },
      { name: '68', lo: stats.band68.lo, hi: stats.band68.hi },
    ],
    series: series.map((s) => ({
      label: s.label,
      values: s.values,
      diff: s.diff_to_median,
      membership: s.percentile_membership,
    })),
  };
}
