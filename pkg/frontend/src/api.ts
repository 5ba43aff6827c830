// Typed client for the ganseval JSON API. Every number the UI displays
// originates from one of these responses; the client never recomputes metrics.

export interface RunInfo {
  name: string;
  iterations: number[];
  samples: number[];
}

export interface RunsResponse {
  runs: RunInfo[];
  n_real: number;
  t: number;
}

export interface IterationViewResponse {
  run: string;
  kind: 'innd' | 'onnd';
  metric: 'ed' | 'dtw';
  clip: 'none' | 'p99';
  iterations: number[];
  columns: number[][];
  row_order: number[][];
  vmin: number;
  vmax: number;
}

export interface TimeHistogramData {
  bin_edges: number[];
  counts: number[][];
}

export interface ColorfieldData {
  rows: number[][];
  ids: number[];
  original_indices: number[];
  vmin: number;
  vmax: number;
}

export interface DetailResponse {
  colorfield: ColorfieldData;
  time_histogram: TimeHistogramData;
}

export interface Band {
  lo: number[];
  hi: number[];
}

export interface StatsResponse {
  median: number[];
  band68: Band;
  band95: Band;
  band997: Band;
}

export interface SeriesResponse {
  label: string;
  original_index: number;
  values: number[];
  diff_to_median: number[];
  percentile_membership: '68' | '95' | '99.7' | null;
}

export interface ApiErrorBody {
  status: number;
  code: string;
  message: string;
}

export class ApiError extends Error {
  constructor(public readonly body: ApiErrorBody) {
    super(`${body.code}: ${body.message}`);
  }
}

export class ApiClient {
  constructor(private readonly baseUrl: string) {}

  private async get<T>(path: string, signal?: AbortSignal): Promise<T> {
    const resp = await fetch(this.baseUrl + path, { signal });
    const body = await resp.json();
    if (!resp.ok) throw new ApiError(body as ApiErrorBody);
    return body as T;
  }

  health(): Promise<{ status: string }> {
    return this.get('/api/health');
  }

  runs(): Promise<RunsResponse> {
    return this.get('/api/runs');
  }

  stats(): Promise<StatsResponse> {
    return this.get('/api/real/stats');
  }

  realDetail(bins?: number, signal?: AbortSignal): Promise<DetailResponse> {
    const q = bins === undefined ? '' : `?bins=${bins}`;
    return this.get(`/api/real/detail${q}`, signal);
  }

  iterationView(
    run: string,
    metric: 'ed' | 'dtw',
    kind: 'innd' | 'onnd',
    clip: 'none' | 'p99' = 'none',
    signal?: AbortSignal,
  ): Promise<IterationViewResponse> {
    return this.get(
      `/api/runs/${encodeURIComponent(run)}/iteration-view?metric=${metric}&kind=${kind}&clip=${clip}`,
      signal,
    );
  }

  iterationDetail(
    run: string,
    iteration: number,
    bins?: number,
    signal?: AbortSignal,
  ): Promise<DetailResponse> {
    const q = bins === undefined ? '' : `?bins=${bins}`;
    return this.get(
      `/api/runs/${encodeURIComponent(run)}/iterations/${iteration}/detail${q}`,
      signal,
    );
  }

  series(selector: string, run?: string, signal?: AbortSignal): Promise<SeriesResponse> {
    const q = run === undefined ? '' : `?run=${encodeURIComponent(run)}`;
    return this.get(`/api/series/${encodeURIComponent(selector)}${q}`, signal);
  }
}
