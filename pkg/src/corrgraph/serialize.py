"""One serialization layer shared by the CLI and the HTTP service.

Every analysis result is reduced to a plain dict of JSON-safe values with
a fixed key order, so identical inputs always produce identical bodies.
"""

from __future__ import annotations

import json

from .backtest import BacktestReport
from .graph import (
    CliqueReport,
    CorrelationGraph,
    CorrelationMatrix,
    SampleStats,
    SelectionMode,
    suggest_threshold,
)
from .ingest import PriceTable
from .signals import IndicatorDigraph, LagRelationship, SignalBacktestReport


def dumps(payload: dict) -> str:
    """Canonical JSON encoding (stable separators, no key sorting)."""
    return json.dumps(payload, separators=(",", ":"), allow_nan=False)


def dataset_payload(
    dataset_id: str, table: PriceTable, warnings: list[str]
) -> dict:
    return {
        "id": dataset_id,
        "tickers": list(table.tickers),
        "start": table.dates[0].isoformat(),
        "end": table.dates[-1].isoformat(),
        "rows": len(table.dates),
        "warnings": list(warnings),
    }


def correlations_payload(m: CorrelationMatrix, s: SampleStats) -> dict:
    return {
        "tickers": list(m.tickers),
        "matrix": [[float(v) for v in row] for row in m.values],
        "stats": {
            "mean": s.mean,
            "median": s.median,
            "stddev": s.stddev,
            "suggested": {
                "diversified": suggest_threshold(s, SelectionMode.DIVERSIFIED),
                "undiversified": suggest_threshold(
                    s, SelectionMode.UNDIVERSIFIED
                ),
            },
        },
    }


def graph_payload(g: CorrelationGraph, report: CliqueReport) -> dict:
    index = {t: i for i, t in enumerate(g.tickers)}
    return {
        "nodes": list(g.tickers),
        "edges": [[index[a], index[b]] for a, b in g.edges],
        "max_cliques": [list(c) for c in report.max_cliques],
        "selected": list(report.selected) if report.selected else [],
        "tie_break_score": report.tie_break_score,
    }


def backtest_payload(report: BacktestReport) -> dict:
    return {
        "dates": [d.isoformat() for d in report.dates],
        "portfolio_cum": list(report.portfolio_cum),
        "benchmark_cum": list(report.benchmark_cum),
        "outperformance_fraction": report.outperformance_fraction,
        "start_price": report.portfolio_start_price,
    }


def lags_payload(relationships: list[LagRelationship]) -> dict:
    return {
        "relationships": [
            {
                "indicator": r.indicator,
                "lag": r.lag,
                "correlation": r.correlation,
            }
            for r in relationships
        ]
    }


def signal_payload(
    report: SignalBacktestReport, digraph: IndicatorDigraph
) -> dict:
    return {
        "dates": [d.isoformat() for d in report.dates],
        "continuous": list(report.continuous),
        "indicative": list(report.indicative),
        "invested_days": list(report.invested_days),
        "digraph": {
            "target": digraph.target,
            "indicators": list(digraph.indicators),
            "edges": [[a, b] for a, b in digraph.edges],
        },
    }


def error_payload(code: str, message: str) -> dict:
    return {"code": code, "message": message}
