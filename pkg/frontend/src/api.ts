/**
 * Typed client for the analytics service. Every number shown in the UI comes
 * from one of these response bodies; the client never post-processes values.
 */

export interface DatasetHandle {
  id: string;
  tickers: string[];
  start: string;
  end: string;
  rows: number;
  warnings: string[];
}

export interface CorrelationsResponse {
  tickers: string[];
  matrix: number[][];
  stats: {
    mean: number;
    median: number;
    stddev: number;
    suggested: { diversified: number; undiversified: number };
  };
}

export interface GraphResponse {
  nodes: string[];
  edges: [number, number][];
  max_cliques: string[][];
  selected: string[];
  tie_break_score: number | null;
}

export interface BacktestResponse {
  dates: string[];
  portfolio_cum: number[];
  benchmark_cum: number[];
  outperformance_fraction: number;
  start_price: number;
}

export interface LagRelationship {
  indicator: string;
  lag: number;
  correlation: number;
}

export interface LagsResponse {
  relationships: LagRelationship[];
}

export interface SignalResponse {
  dates: string[];
  continuous: number[];
  indicative: number[];
  invested_days: number[];
  digraph: { target: string; indicators: string[]; edges: [string, string][] };
}

export interface ApiError {
  code: string;
  message: string;
}

export class ApiFailure extends Error {
  constructor(public readonly error: ApiError, public readonly status: number) {
    super(error.message);
  }
}

export type Mode = 'diversified' | 'undiversified';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

async function parse<T>(resp: Response): Promise<T> {
  const body = await resp.json();
  if (!resp.ok) {
    throw new ApiFailure(body as ApiError, resp.status);
  }
  return body as T;
}

export class ApiClient {
  constructor(
    private readonly fetchImpl: FetchLike = (u, i) => fetch(u, i),
    private readonly base = '/api/v1'
  ) {}

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.fetchImpl(this.base + path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(payload),
    }).then((r) => parse<T>(r));
  }

  registerDataset(
    name: string,
    tickers: string[],
    start: string,
    end: string
  ): Promise<DatasetHandle> {
    return this.post('/datasets', { name, tickers, start, end });
  }

  correlations(id: string): Promise<CorrelationsResponse> {
    return this.fetchImpl(`${this.base}/datasets/${id}/correlations`).then(
      (r) => parse<CorrelationsResponse>(r)
    );
  }

  graph(id: string, mode: Mode, threshold: number): Promise<GraphResponse> {
    return this.post(`/datasets/${id}/graph`, { mode, threshold });
  }

  backtest(
    id: string,
    portfolio: string[],
    weighting: { scheme: string; shares?: Record<string, number> },
    benchmark: string
  ): Promise<BacktestResponse> {
    return this.post(`/datasets/${id}/backtest`, {
      portfolio,
      weighting,
      benchmark,
    });
  }

  lags(
    id: string,
    target: string,
    indicators: string[],
    maxLag: number
  ): Promise<LagsResponse> {
    return this.post(`/datasets/${id}/lags`, {
      target,
      indicators,
      max_lag: maxLag,
    });
  }

  signalBacktest(
    id: string,
    target: string,
    relationships: LagRelationship[],
    requiredTrue: number
  ): Promise<SignalResponse> {
    return this.post(`/datasets/${id}/signal-backtest`, {
      target,
      relationships,
      required_true: requiredTrue,
    });
  }
}

/**
 * Wraps an async request source so that out-of-order completions of
 * superseded calls are dropped: only the most recently issued request may
 * deliver. One instance per panel.
 */
export class LatestOnly {
  private seq = 0;

  async run<T>(request: () => Promise<T>): Promise<T | undefined> {
    const ticket = ++this.seq;
    const result = await request();
    if (ticket !== this.seq) {
      return undefined; // a newer request superseded this one
    }
    return result;
  }
}
