"""Portfolio emulation against a weighted benchmark.

A portfolio is valued per date under a weighting scheme, both series are
converted to cumulative returns relative to their first value, and the
outperformance fraction counts dates where the portfolio's cumulative
return strictly exceeds the benchmark's (day 0 is always a tie).
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from typing import Mapping, Sequence

from .errors import BadRequestError, DegenerateSeriesError, MissingSharesError
from .ingest import PriceTable


@dataclass(frozen=True)
class PriceWeighted:
    """Dow-style: average of constituent share prices."""


@dataclass(frozen=True)
class CapWeighted:
    """S&P-style: prices weighted by held share counts."""

    shares: Mapping[str, float]


@dataclass(frozen=True)
class EqualSum:
    """Plain sum of one share of each constituent."""


WeightingScheme = PriceWeighted | CapWeighted | EqualSum


@dataclass(frozen=True)
class BacktestReport:
    dates: tuple[date, ...]
    portfolio_cum: tuple[float, ...]
    benchmark_cum: tuple[float, ...]
    outperformance_fraction: float
    portfolio_start_price: float


def portfolio_value(prices: Mapping[str, float], scheme: WeightingScheme) -> float:
    """Price of one share of the portfolio for a single date's prices."""
    if not prices:
        raise BadRequestError("empty portfolio")
    if isinstance(scheme, PriceWeighted):
        return sum(prices.values()) / len(prices)
    if isinstance(scheme, CapWeighted):
        missing = [t for t in prices if t not in scheme.shares]
        if missing:
            raise MissingSharesError(
                "no share count for: %s" % ",".join(sorted(missing))
            )
        for t in prices:
            if scheme.shares[t] <= 0:
                raise MissingSharesError("non-positive share count for %s" % t)
        total_shares = sum(scheme.shares[t] for t in prices)
        return sum(p * scheme.shares[t] for t, p in prices.items()) / total_shares
    return sum(prices.values())


def cumulative_returns(values: Sequence[float]) -> list[float]:
    """Fractional change of each value relative to the first one."""
    if not values:
        raise DegenerateSeriesError("empty value series")
    base = values[0]
    if base <= 0:
        raise DegenerateSeriesError("non-positive base value %r" % (base,))
    return [(v - base) / base for v in values]


def compare(
    portfolio: Sequence[float],
    benchmark: Sequence[float],
    dates: Sequence[date],
) -> BacktestReport:
    if not (len(portfolio) == len(benchmark) == len(dates)):
        raise BadRequestError("portfolio, benchmark and dates must align")
    if len(dates) < 2:
        raise DegenerateSeriesError("need at least 2 dates to compare")
    p_cum = cumulative_returns(portfolio)
    b_cum = cumulative_returns(benchmark)
    wins = sum(1 for p, b in zip(p_cum, b_cum) if p > b)
    return BacktestReport(
        dates=tuple(dates),
        portfolio_cum=tuple(p_cum),
        benchmark_cum=tuple(b_cum),
        outperformance_fraction=wins / len(dates),
        portfolio_start_price=portfolio[0],
    )


def run_backtest(
    prices: PriceTable,
    portfolio: Sequence[str],
    scheme: WeightingScheme,
    benchmark: PriceTable,
) -> BacktestReport:
    """Value the portfolio per common date and compare to the benchmark.

    The benchmark table must contain exactly one ticker; dates are
    intersected so both series align.
    """
    if len(benchmark.tickers) != 1:
        raise BadRequestError("benchmark must be a single-ticker table")
    missing = [t for t in portfolio if t not in prices.tickers]
    if missing:
        raise BadRequestError(
            "portfolio tickers not in dataset: %s" % ",".join(missing)
        )
    if not portfolio:
        raise BadRequestError("empty portfolio")
    common = sorted(set(prices.dates) & set(benchmark.dates))
    if len(common) < 2:
        raise DegenerateSeriesError(
            "only %d dates common to dataset and benchmark" % len(common)
        )
    p_rows = {d: i for i, d in enumerate(prices.dates)}
    b_rows = {d: i for i, d in enumerate(benchmark.dates)}
    cols = {t: prices.tickers.index(t) for t in portfolio}
    portfolio_series = [
        portfolio_value(
            {t: float(prices.values[p_rows[d], c]) for t, c in cols.items()},
            scheme,
        )
        for d in common
    ]
    benchmark_series = [float(benchmark.values[b_rows[d], 0]) for d in common]
    return compare(portfolio_series, benchmark_series, common)
