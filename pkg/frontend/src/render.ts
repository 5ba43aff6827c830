// DOM projection of the view models. Deliberately thin: no state lives here,
// every handler only reports the interaction back to the app.

import type { DetailResponse } from './api.js';
import { grayCss, luminance, valueCss } from './color.js';
import type { DetailPanel, HeatmapModel, SelectedSamplesModel } from './model.js';

const CELL = 6; // px per heatmap cell

export interface Handlers {
  onColumnClick(iteration: number): void;
  onRowClick(iteration: number | null, rowId: number): void;
  onSeriesRemove(selector: string): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderHeatmap(
  container: HTMLElement,
  model: HeatmapModel,
  handlers: Handlers,
): void {
  container.replaceChildren();
  container.appendChild(
    el('div', 'panel-title', `${model.kind.toUpperCase()} (${model.metric.toUpperCase()})`),
  );
  const strip = el('div', 'heatmap-strip');
  strip.style.display = 'flex';
  for (const column of model.columns) {
    const rows = column.cells.length;
    const canvas = el('canvas', column.selected ? 'column selected' : 'column');
    canvas.width = CELL;
    canvas.height = rows * CELL;
    canvas.title = `iteration ${column.iteration}`;
    const ctx = canvas.getContext('2d')!;
    column.cells.forEach((lum, r) => {
      ctx.fillStyle = grayCss(lum);
      ctx.fillRect(0, r * CELL, CELL, CELL);
    });
    canvas.style.outline = column.selected ? '2px solid #e4572e' : 'none';
    canvas.addEventListener('click', () => handlers.onColumnClick(column.iteration));
    strip.appendChild(canvas);
  }
  container.appendChild(strip);
  container.appendChild(
    el('div', 'scale-note', `scale: ${model.vmin.toPrecision(4)} (bright) .. ${model.vmax.toPrecision(4)} (dark)`),
  );
}

function renderColorfield(
  panel: HTMLElement,
  iteration: number | null,
  detail: DetailResponse,
  handlers: Handlers,
): void {
  const { rows, vmin, vmax } = detail.colorfield;
  const t = rows[0]?.length ?? 0;
  const canvas = el('canvas', 'colorfield');
  canvas.width = t * CELL;
  canvas.height = rows.length * CELL;
  const ctx = canvas.getContext('2d')!;
  rows.forEach((row, r) => {
    row.forEach((v, c) => {
      ctx.fillStyle = valueCss(v, vmin, vmax);
      ctx.fillRect(c * CELL, r * CELL, CELL, CELL);
    });
  });
  canvas.addEventListener('click', (ev) => {
    const rect = canvas.getBoundingClientRect();
    const rowId = Math.floor((ev.clientY - rect.top) / CELL);
    if (rowId >= 0 && rowId < rows.length) handlers.onRowClick(iteration, rowId);
  });
  panel.appendChild(canvas);
}

function renderHistogram(panel: HTMLElement, detail: DetailResponse, maxCount: number): void {
  const { counts } = detail.time_histogram;
  const bins = counts[0]?.length ?? 0;
  const canvas = el('canvas', 'time-histogram');
  canvas.width = counts.length * CELL;
  canvas.height = bins * CELL;
  const ctx = canvas.getContext('2d')!;
  counts.forEach((col, tIdx) => {
    col.forEach((count, b) => {
      // bin 0 at the bottom; shared count scale across panels
      ctx.fillStyle = grayCss(luminance(count, 0, maxCount));
      ctx.fillRect(tIdx * CELL, (bins - 1 - b) * CELL, CELL, CELL);
    });
  });
  panel.appendChild(canvas);
}

export function renderDetailPanels(
  container: HTMLElement,
  panels: DetailPanel[],
  handlers: Handlers,
): void {
  container.replaceChildren();
  const maxCount = Math.max(
    1,
    ...panels.flatMap((p) => p.detail?.time_histogram.counts.flat() ?? []),
  );
  for (const panel of panels) {
    const box = el('div', 'detail-panel');
    box.appendChild(el('div', 'panel-title', panel.title));
    if (panel.detail) {
      renderHistogram(box, panel.detail, maxCount);
      renderColorfield(box, panel.iteration, panel.detail, handlers);
    } else {
      box.appendChild(el('div', 'panel-error', panel.error ?? 'unavailable'));
    }
    container.appendChild(box);
  }
}

const SERIES_COLORS = ['#e4572e', '#2e86ab', '#76b041', '#a4036f', '#f2af29', '#20a39e'];

function linePlot(
  width: number,
  height: number,
  draw: (ctx: CanvasRenderingContext2D, x: (t: number) => number, y: (v: number) => number) => void,
  lo: number,
  hi: number,
  tLen: number,
): HTMLCanvasElement {
  const canvas = el('canvas', 'line-plot');
  canvas.width = width;
  canvas.height = height;
  const ctx = canvas.getContext('2d')!;
  const pad = 4;
  const span = hi - lo || 1;
  const x = (t: number) => pad + (t / Math.max(1, tLen - 1)) * (width - 2 * pad);
  const y = (v: number) => height - pad - ((v - lo) / span) * (height - 2 * pad);
  draw(ctx, x, y);
  return canvas;
}

export function renderSelectedSamples(
  container: HTMLElement,
  model: SelectedSamplesModel,
  handlers: Handlers,
): void {
  container.replaceChildren();
  container.appendChild(el('div', 'panel-title', 'selected samples'));
  const tLen = model.median.length;
  const all = [
    ...model.bands.flatMap((b) => [...b.lo, ...b.hi]),
    ...model.series.flatMap((s) => s.values),
  ];
  const lo = Math.min(...all);
  const hi = Math.max(...all);
  const bandGrays = ['#d9d9d9', '#bdbdbd', '#969696']; // outer to inner

  container.appendChild(
    linePlot(480, 200, (ctx, x, y) => {
      model.bands.forEach((band, i) => {
        ctx.fillStyle = bandGrays[i];
        ctx.beginPath();
        ctx.moveTo(x(0), y(band.lo[0]));
        for (let t = 1; t < tLen; t++) ctx.lineTo(x(t), y(band.lo[t]));
        for (let t = tLen - 1; t >= 0; t--) ctx.lineTo(x(t), y(band.hi[t]));
        ctx.closePath();
        ctx.fill();
      });
      ctx.strokeStyle = '#000';
      ctx.beginPath();
      model.median.forEach((v, t) => (t === 0 ? ctx.moveTo(x(t), y(v)) : ctx.lineTo(x(t), y(v))));
      ctx.stroke();
      model.series.forEach((s, i) => {
        ctx.strokeStyle = SERIES_COLORS[i % SERIES_COLORS.length];
        ctx.beginPath();
        s.values.forEach((v, t) => (t === 0 ? ctx.moveTo(x(t), y(v)) : ctx.lineTo(x(t), y(v))));
        ctx.stroke();
      });
    }, lo, hi, tLen),
  );

  const diffs = model.series.flatMap((s) => s.diff);
  const diffHi = diffs.length ? Math.max(...diffs) : 1;
  container.appendChild(
    linePlot(480, 120, (ctx, x, y) => {
      model.series.forEach((s, i) => {
        ctx.strokeStyle = SERIES_COLORS[i % SERIES_COLORS.length];
        ctx.beginPath();
        s.diff.forEach((v, t) => (t === 0 ? ctx.moveTo(x(t), y(v)) : ctx.lineTo(x(t), y(v))));
        ctx.stroke();
      });
    }, 0, diffHi, tLen),
  );

  const legend = el('div', 'legend');
  legend.appendChild(el('span', 'legend-entry', 'med(r) + 68/95/99.7% bands'));
  model.series.forEach((s, i) => {
    const entry = el('span', 'legend-entry', s.label);
    entry.style.color = SERIES_COLORS[i % SERIES_COLORS.length];
    entry.title = 'click to remove';
    entry.addEventListener('click', () => handlers.onSeriesRemove(s.label));
    legend.appendChild(entry);
  });
  container.appendChild(legend);
}
