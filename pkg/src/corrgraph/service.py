"""Local JSON HTTP service exposing datasets and every analysis.

Single process, in-memory dataset store; datasets are immutable once
registered, so analyses are read-only and deterministic.  Responses are
rendered through the shared serialization layer so repeated identical
requests return byte-identical bodies.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.staticfiles import StaticFiles

from . import backtest as bt
from . import graph as cg
from . import serialize, signals
from .errors import (
    AnalysisError,
    BadRequestError,
    BadThresholdError,
    CorrgraphError,
    DataError,
    DatasetNotFoundError,
)
from .ingest import PriceTable, ReturnTable, load_dataset, to_returns
from .stats import LagMode

DEFAULT_PORT = 8787
DEFAULT_BIND = "127.0.0.1"
DEFAULT_DATA_DIR = "./data"


@dataclass
class Dataset:
    table: PriceTable
    warnings: list[str]
    _returns: ReturnTable | None = field(default=None, repr=False)
    _matrix: cg.CorrelationMatrix | None = field(default=None, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def returns(self) -> ReturnTable:
        with self._lock:
            if self._returns is None:
                self._returns = to_returns(self.table)
            return self._returns

    @property
    def matrix(self) -> cg.CorrelationMatrix:
        # cached so threshold re-exploration never recomputes correlations
        returns = self.returns
        with self._lock:
            if self._matrix is None:
                self._matrix = cg.correlation_matrix(returns)
            return self._matrix


def _status_for(exc: CorrgraphError) -> int:
    if isinstance(exc, DatasetNotFoundError):
        return 404
    if isinstance(exc, (BadRequestError, BadThresholdError)):
        return 400
    if isinstance(exc, AnalysisError):
        return 409
    if isinstance(exc, DataError):
        return 422
    return 500


def _json_response(payload: dict, status_code: int = 200) -> Response:
    return Response(
        content=serialize.dumps(payload),
        status_code=status_code,
        media_type="application/json",
    )


def _parse_date(raw, name: str) -> date:
    if not isinstance(raw, str):
        raise BadRequestError("%s must be a YYYY-MM-DD string" % name)
    try:
        return date.fromisoformat(raw)
    except ValueError:
        raise BadRequestError("bad %s date: %r" % (name, raw))


def _require(body: dict, key: str):
    if not isinstance(body, dict) or key not in body:
        raise BadRequestError("missing field %r" % key)
    return body[key]


def _parse_mode(raw) -> cg.SelectionMode:
    try:
        return cg.SelectionMode(raw)
    except ValueError:
        raise BadRequestError(
            "mode must be 'diversified' or 'undiversified', got %r" % (raw,)
        )


def _parse_lag_mode(raw) -> LagMode:
    if raw is None:
        return LagMode.WINDOWED
    try:
        return LagMode(raw)
    except ValueError:
        raise BadRequestError(
            "lag mode must be 'windowed' or 'paper-code', got %r" % (raw,)
        )


def _parse_weighting(raw) -> bt.WeightingScheme:
    if not isinstance(raw, dict) or "scheme" not in raw:
        raise BadRequestError("weighting must be {scheme, shares?}")
    scheme = raw["scheme"]
    if scheme == "price-weighted":
        return bt.PriceWeighted()
    if scheme == "equal-sum":
        return bt.EqualSum()
    if scheme == "cap-weighted":
        shares = raw.get("shares")
        if not isinstance(shares, dict) or not shares:
            raise BadRequestError("cap-weighted requires a shares mapping")
        return bt.CapWeighted({str(k): float(v) for k, v in shares.items()})
    raise BadRequestError("unknown weighting scheme %r" % (scheme,))


def create_app(data_dir: str | Path, static_dir: str | Path | None = None) -> FastAPI:
    data_dir = Path(data_dir)
    app = FastAPI(title="corrgraph", docs_url=None, redoc_url=None)
    datasets: dict[str, Dataset] = {}
    registry_lock = threading.Lock()

    @app.exception_handler(CorrgraphError)
    async def _corrgraph_error(request: Request, exc: CorrgraphError):
        return _json_response(
            serialize.error_payload(exc.code, exc.message),
            status_code=_status_for(exc),
        )

    def _get(dataset_id: str) -> Dataset:
        ds = datasets.get(dataset_id)
        if ds is None:
            raise DatasetNotFoundError("no dataset with id %r" % dataset_id)
        return ds

    @app.post("/api/v1/datasets")
    async def register_dataset(request: Request):
        body = await request.json()
        name = _require(body, "name")
        if not isinstance(name, str) or not name:
            raise BadRequestError("dataset name must be a non-empty string")
        tickers = _require(body, "tickers")
        if not isinstance(tickers, list):
            raise BadRequestError("tickers must be a list")
        start = _parse_date(_require(body, "start"), "start")
        end = _parse_date(_require(body, "end"), "end")
        table, warnings = load_dataset(data_dir, tickers, start, end)
        with registry_lock:
            datasets[name] = Dataset(table=table, warnings=warnings)
        return _json_response(
            serialize.dataset_payload(name, table, warnings), status_code=201
        )

    @app.get("/api/v1/datasets/{dataset_id}/correlations")
    async def correlations(dataset_id: str):
        ds = _get(dataset_id)
        m = ds.matrix
        s = cg.offdiagonal_stats(m)
        return _json_response(serialize.correlations_payload(m, s))

    @app.post("/api/v1/datasets/{dataset_id}/graph")
    async def graph(dataset_id: str, request: Request):
        ds = _get(dataset_id)
        body = await request.json()
        mode = _parse_mode(_require(body, "mode"))
        threshold = _require(body, "threshold")
        if not isinstance(threshold, (int, float)) or isinstance(threshold, bool):
            raise BadRequestError("threshold must be a number")
        g, report = cg.analyze_graph(ds.matrix, mode, float(threshold))
        return _json_response(serialize.graph_payload(g, report))

    @app.post("/api/v1/datasets/{dataset_id}/backtest")
    async def run_backtest(dataset_id: str, request: Request):
        ds = _get(dataset_id)
        body = await request.json()
        portfolio = _require(body, "portfolio")
        if not isinstance(portfolio, list) or not portfolio:
            raise BadRequestError("portfolio must be a non-empty list")
        scheme = _parse_weighting(_require(body, "weighting"))
        benchmark_symbol = _require(body, "benchmark")
        benchmark, _ = load_dataset(
            data_dir,
            [benchmark_symbol],
            ds.table.dates[0],
            ds.table.dates[-1],
        )
        report = bt.run_backtest(ds.table, portfolio, scheme, benchmark)
        return _json_response(serialize.backtest_payload(report))

    @app.post("/api/v1/datasets/{dataset_id}/lags")
    async def lags(dataset_id: str, request: Request):
        ds = _get(dataset_id)
        body = await request.json()
        target = _require(body, "target")
        indicators = _require(body, "indicators")
        if not isinstance(indicators, list) or not indicators:
            raise BadRequestError("indicators must be a non-empty list")
        max_lag = _require(body, "max_lag")
        if not isinstance(max_lag, int) or isinstance(max_lag, bool):
            raise BadRequestError("max_lag must be an integer")
        mode = _parse_lag_mode(body.get("mode"))
        for t in [target] + indicators:
            if t not in ds.table.tickers:
                raise BadRequestError("ticker %r not in dataset" % (t,))
        target_prices = ds.table.column(target)
        relationships = [
            signals.find_optimal_lag(
                target_prices, ds.table.column(ind), ind, max_lag, mode
            )
            for ind in indicators
        ]
        return _json_response(serialize.lags_payload(relationships))

    @app.post("/api/v1/datasets/{dataset_id}/signal-backtest")
    async def signal_backtest(dataset_id: str, request: Request):
        ds = _get(dataset_id)
        body = await request.json()
        target = _require(body, "target")
        raw_rels = _require(body, "relationships")
        required_true = _require(body, "required_true")
        if not isinstance(required_true, int) or isinstance(required_true, bool):
            raise BadRequestError("required_true must be an integer")
        if not isinstance(raw_rels, list):
            raise BadRequestError("relationships must be a list")
        rels = []
        for raw in raw_rels:
            if not isinstance(raw, dict):
                raise BadRequestError("each relationship must be an object")
            indicator = _require(raw, "indicator")
            lag = _require(raw, "lag")
            if not isinstance(lag, int) or isinstance(lag, bool):
                raise BadRequestError("lag must be an integer")
            rels.append(
                signals.LagRelationship(
                    indicator=indicator,
                    lag=lag,
                    correlation=float(raw.get("correlation", 0.0)),
                )
            )
        for t in [target] + [r.indicator for r in rels]:
            if t not in ds.table.tickers:
                raise BadRequestError("ticker %r not in dataset" % (t,))
        rule = signals.IndicatorRule(
            target=target, relationships=tuple(rels), required_true=required_true
        )
        returns = ds.returns
        report = signals.simulate_indicative(
            ds.table.column(target), rule, returns, dates=ds.table.dates
        )
        digraph = signals.last_day_digraph(rule, returns)
        return _json_response(serialize.signal_payload(report, digraph))

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def default_static_dir() -> Path | None:
    """Built explorer assets, when the frontend has been compiled."""
    candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    return candidate if candidate.is_dir() else None


def serve(
    data_dir: str | None = None,
    bind: str | None = None,
    port: int | None = None,
) -> None:
    import uvicorn

    data_dir = data_dir or os.environ.get("CORRGRAPH_DATA_DIR", DEFAULT_DATA_DIR)
    bind = bind or os.environ.get("CORRGRAPH_BIND", DEFAULT_BIND)
    if port is None:
        port = int(os.environ.get("CORRGRAPH_PORT", str(DEFAULT_PORT)))
    app = create_app(data_dir, static_dir=default_static_dir())
    uvicorn.run(app, host=bind, port=port, log_level="warning")
