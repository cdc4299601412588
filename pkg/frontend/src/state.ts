import type {
  BacktestResponse,
  CorrelationsResponse,
  GraphResponse,
  LagsResponse,
  Mode,
  SignalResponse,
} from './api.js';

export interface ExplorerState {
  datasetId: string | null;
  tickers: string[];
  mode: Mode;
  threshold: number;
  correlations: CorrelationsResponse | null;
  graph: GraphResponse | null;
  selected: string[];
  backtest: BacktestResponse | null;
  lags: LagsResponse | null;
  signal: SignalResponse | null;
  notice: string | null;
}

export function initialState(): ExplorerState {
  return {
    datasetId: null,
    tickers: [],
    mode: 'diversified',
    threshold: 0.5,
    correlations: null,
    graph: null,
    selected: [],
    backtest: null,
    lags: null,
    signal: null,
    notice: null,
  };
}

export type Debounced<A extends unknown[]> = {
  (...args: A): void;
  cancel(): void;
};

/**
 * Trailing-edge debounce: the wrapped function runs once per settle, with the
 * most recent arguments, after `waitMs` of quiet.
 */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs = 150
): Debounced<A> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  const wrapped = (...args: A) => {
    if (timer !== null) {
      clearTimeout(timer);
    }
    timer = setTimeout(() => {
      timer = null;
      fn(...args);
    }, waitMs);
  };
  wrapped.cancel = () => {
    if (timer !== null) {
      clearTimeout(timer);
      timer = null;
    }
  };
  return wrapped;
}
