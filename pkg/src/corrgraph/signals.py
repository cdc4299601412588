"""Lead-lag discovery and indicator-rule trading simulation.

Lag search runs on raw adjusted-close levels; conditional evaluation runs
on day-over-day returns.  Day indices below refer to rows of the emulation
price series; the return "at day j" is the change from day j-1 to day j,
which is row j-1 of a ReturnTable built from those prices (undefined for
j <= 0, and an undefined return is a false conditional).
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from typing import Sequence

from .errors import BadRequestError, InsufficientHistoryError
from .ingest import ReturnTable
from .stats import LagMode, lagged_pearson


@dataclass(frozen=True)
class LagRelationship:
    indicator: str
    lag: int  # trading days, >= 1 so rules never peek at same-day data
    correlation: float
    mode: LagMode = LagMode.WINDOWED

    def __post_init__(self):
        if self.lag < 1:
            raise BadRequestError("lag must be >= 1 (got %d)" % self.lag)


@dataclass(frozen=True)
class IndicatorRule:
    target: str
    relationships: tuple[LagRelationship, ...]
    required_true: int  # N of the N-of-K conditional

    def __post_init__(self):
        names = [r.indicator for r in self.relationships]
        if len(set(names)) != len(names):
            raise BadRequestError("duplicate indicators in rule")
        if not (0 <= self.required_true <= len(self.relationships)):
            raise BadRequestError(
                "required_true %d outside [0, %d]"
                % (self.required_true, len(self.relationships))
            )

    @property
    def warmup(self) -> int:
        return max((r.lag for r in self.relationships), default=0)


@dataclass(frozen=True)
class SignalBacktestReport:
    dates: tuple[date, ...]
    continuous: tuple[float, ...]
    indicative: tuple[float, ...]
    invested_days: tuple[int, ...]


@dataclass(frozen=True)
class IndicatorDigraph:
    target: str
    indicators: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]  # (indicator, target)

    @property
    def target_in_degree(self) -> int:
        return len(self.edges)


def find_optimal_lag(
    target_prices: Sequence[float],
    indicator_prices: Sequence[float],
    indicator: str,
    max_lag: int,
    mode: LagMode = LagMode.WINDOWED,
) -> LagRelationship:
    """Argmax of the lagged correlation over lags 1..max_lag.

    Ties break to the smallest lag; the achieved maximum may be negative.
    """
    if max_lag < 1:
        raise BadRequestError("max_lag must be >= 1")
    if len(target_prices) <= max_lag + 1:
        raise InsufficientHistoryError(
            "series length %d too short for max_lag %d"
            % (len(target_prices), max_lag)
        )
    best_lag = None
    best_corr = None
    for lag in range(1, max_lag + 1):
        c = lagged_pearson(target_prices, indicator_prices, lag, mode)
        if best_corr is None or c > best_corr:
            best_corr = c
            best_lag = lag
    return LagRelationship(
        indicator=indicator, lag=best_lag, correlation=best_corr, mode=mode
    )


def _shifted_return(
    returns: ReturnTable, indicator: str, day: int, lag: int
) -> float | None:
    """Indicator's return at price-day (day - lag), or None if undefined."""
    j = day - lag
    if j < 1 or j - 1 >= returns.values.shape[0]:
        return None
    return float(returns.values[j - 1, returns.tickers.index(indicator)])


def evaluate_conditionals(
    rule: IndicatorRule, indicator_returns: ReturnTable, day: int
) -> tuple[int, bool]:
    """Count indicators with a positive return at their shifted day."""
    if day < rule.warmup:
        raise BadRequestError(
            "day %d is inside the warmup of %d days" % (day, rule.warmup)
        )
    count = 0
    for rel in rule.relationships:
        r = _shifted_return(indicator_returns, rel.indicator, day, rel.lag)
        if r is not None and r > 0:
            count += 1
    return count, count >= rule.required_true


def simulate_indicative(
    target_prices: Sequence[float],
    rule: IndicatorRule,
    indicator_returns: ReturnTable,
    dates: Sequence[date] = (),
) -> SignalBacktestReport:
    """Hold the target only on days the N-of-K rule fires.

    The continuous series is the raw target prices; the indicative series
    starts at the same price, stays flat through the warmup, and on each
    fired day moves by exactly the target's dollar change.  N = 0 is
    vacuously true every day and reproduces continuous investing exactly.
    """
    n = len(target_prices)
    if n < rule.warmup + 2:
        raise InsufficientHistoryError(
            "emulation length %d too short for warmup %d" % (n, rule.warmup)
        )
    continuous = tuple(float(v) for v in target_prices)
    if rule.required_true == 0:
        return SignalBacktestReport(
            dates=tuple(dates),
            continuous=continuous,
            indicative=continuous,
            invested_days=tuple(range(1, n)),
        )
    indicative = [continuous[0]]
    invested = []
    for t in range(1, n):
        value = indicative[t - 1]
        if t >= rule.warmup:
            _, fired = evaluate_conditionals(rule, indicator_returns, t)
            if fired:
                value = value + (continuous[t] - continuous[t - 1])
                invested.append(t)
        indicative.append(value)
    return SignalBacktestReport(
        dates=tuple(dates),
        continuous=continuous,
        indicative=tuple(indicative),
        invested_days=tuple(invested),
    )


def last_day_digraph(
    rule: IndicatorRule, indicator_returns: ReturnTable
) -> IndicatorDigraph:
    """Directed edges for indicators whose final-day conditional is true."""
    rows = indicator_returns.values.shape[0]
    if rows < 1:
        raise InsufficientHistoryError("no returns to evaluate")
    final_day = rows  # price-day index of the last emulation date
    edges = []
    for rel in rule.relationships:
        r = _shifted_return(indicator_returns, rel.indicator, final_day, rel.lag)
        if r is not None and r > 0:
            edges.append((rel.indicator, rule.target))
    return IndicatorDigraph(
        target=rule.target,
        indicators=tuple(r.indicator for r in rule.relationships),
        edges=tuple(edges),
    )
