// Selection state: which run/metric is active, which iteration columns are
// open in the detail view and which individual series are superposed.
// Insertion order is display order (panels juxtapose in the order the
// analyst picked them), duplicates are impossible, and updates are
// immutable so renders are a pure function of (data, state).

export const MAX_ITERATION_PANELS = 8;

export interface SelectionState {
  activeRun: string | null;
  metric: 'ed' | 'dtw';
  selectedIterations: number[];
  selectedSeries: string[];
}

export function initialState(): SelectionState {
  return { activeRun: null, metric: 'ed', selectedIterations: [], selectedSeries: [] };
}

export function setRun(state: SelectionState, run: string): SelectionState {
  if (run === state.activeRun) return state;
  // iteration/series selections belong to the run they were made in
  return { ...state, activeRun: run, selectedIterations: [], selectedSeries: [] };
}

export function setMetric(state: SelectionState, metric: 'ed' | 'dtw'): SelectionState {
  return metric === state.metric ? state : { ...state, metric };
}

export function toggleIteration(state: SelectionState, iteration: number): SelectionState {
  const selected = state.selectedIterations;
  if (selected.includes(iteration)) {
    return { ...state, selectedIterations: selected.filter((k) => k !== iteration) };
  }
  if (selected.length >= MAX_ITERATION_PANELS) return state;
  return { ...state, selectedIterations: [...selected, iteration] };
}

export function toggleSeries(state: SelectionState, selector: string): SelectionState {
  const selected = state.selectedSeries;
  if (selected.includes(selector)) {
    return { ...state, selectedSeries: selected.filter((s) => s !== selector) };
  }
  return { ...state, selectedSeries: [...selected, selector] };
}

export function removeSeries(state: SelectionState, selector: string): SelectionState {
  return { ...state, selectedSeries: state.selectedSeries.filter((s) => s !== selector) };
}

/** Selector for a clicked colorfield row: real rows are r_<id>, generated
 * rows are g_<iteration>_<id>, ids in PC1-sorted display space. */
export function rowSelector(iteration: number | null, rowId: number): string {
  return iteration === null ? `r_${rowId}` : `g_${iteration}_${rowId}`;
}
