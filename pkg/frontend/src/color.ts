// Grayscale encoding of distance heatmaps: a dark pixel is a high distance,
// a bright pixel a low one. Bounds come from the server so INND and ONND
// panels of one metric share a scale.

export function luminance(value: number, vmin: number, vmax: number): number {
  if (vmax <= vmin) return 1; // flat matrix: everything is "low"
  const norm = (value - vmin) / (vmax - vmin);
  return Math.min(1, Math.max(0, 1 - norm));
}

export function grayCss(lum: number): string {
  const level = Math.round(Math.min(1, Math.max(0, lum)) * 255);
  return `rgb(${level},${level},${level})`;
}

/** Sequential scale for colorfield values (blue-white-red around the range
 * midpoint), shared across the real panel and every iteration panel. */
export function valueCss(value: number, vmin: number, vmax: number): string {
  if (vmax <= vmin) return 'rgb(255,255,255)';
  const t = Math.min(1, Math.max(0, (value - vmin) / (vmax - vmin)));
  const r = Math.round(255 * Math.min(1, 2 * t));
  const b = Math.round(255 * Math.min(1, 2 * (1 - t)));
  const g = Math.round(255 * (1 - Math.abs(2 * t - 1)));
  return `rgb(${r},${g},${b})`;
}
