"""CSV ingestion: per-ticker adjusted-close histories aligned on common dates.

Expected file format (one file per ticker, `<SYMBOL>.csv`):

    Date,Open,High,Low,Close,Adj Close,Volume
    2020-01-02,10.0,10.5,9.9,10.2,10.2,1000

Only Date and Adj Close are consumed; the other columns are validated for
header shape and otherwise ignored.  An Adj Close of `null` or empty drops
that row for that ticker before date intersection.
"""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (
    BadRequestError,
    BadTickerError,
    InsufficientHistoryError,
    MalformedCsvError,
    MissingFileError,
    BadPriceError,
)

EXPECTED_HEADER = ["Date", "Open", "High", "Low", "Close", "Adj Close", "Volume"]

MIN_COMMON_DATES = 3

_TICKER_RE = re.compile(r"^[A-Z0-9.^-]{1,10}$")


def validate_ticker(symbol: str) -> str:
    if not _TICKER_RE.match(symbol):
        raise BadTickerError("invalid ticker symbol: %r" % (symbol,))
    return symbol


@dataclass(frozen=True)
class PriceTable:
    """Date-aligned matrix of adjusted closing prices, one column per ticker."""

    dates: tuple[date, ...]
    tickers: tuple[str, ...]
    values: np.ndarray  # shape (len(dates), len(tickers)), strictly positive

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if self.values.shape != (len(self.dates), len(self.tickers)):
            raise ValueError("values shape does not match dates x tickers")
        if any(a >= b for a, b in zip(self.dates, self.dates[1:])):
            raise ValueError("dates must be strictly increasing")
        if not np.all(np.isfinite(self.values)) or np.any(self.values <= 0):
            raise ValueError("prices must be strictly positive and finite")

    def column(self, ticker: str) -> list[float]:
        return list(self.values[:, self.tickers.index(ticker)])

    def subset(self, tickers: Sequence[str]) -> "PriceTable":
        idx = [self.tickers.index(t) for t in tickers]
        return PriceTable(self.dates, tuple(tickers), self.values[:, idx])


@dataclass(frozen=True)
class ReturnTable:
    """Day-over-day simple returns; one fewer row than the source prices."""

    dates: tuple[date, ...]
    tickers: tuple[str, ...]
    values: np.ndarray

    def column(self, ticker: str) -> list[float]:
        return list(self.values[:, self.tickers.index(ticker)])


def to_returns(p: PriceTable) -> ReturnTable:
    """Simple returns (new - old)/old; the undefined first row is dropped."""
    prices = p.values
    returns = (prices[1:] - prices[:-1]) / prices[:-1]
    return ReturnTable(p.dates[1:], p.tickers, returns)


def _read_series(path: Path, symbol: str) -> dict[date, float]:
    """Parse one ticker file into {date: adj_close}, skipping null rows."""
    series: dict[date, float] = {}
    last_date = None
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MalformedCsvError("%s: empty file" % path.name)
        if [h.strip() for h in header] != EXPECTED_HEADER:
            raise MalformedCsvError(
                "%s: bad header %r (expected %r)"
                % (path.name, ",".join(header), ",".join(EXPECTED_HEADER))
            )
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(EXPECTED_HEADER):
                raise MalformedCsvError(
                    "%s:%d: expected %d fields, got %d"
                    % (path.name, lineno, len(EXPECTED_HEADER), len(row))
                )
            try:
                d = date.fromisoformat(row[0].strip())
            except ValueError:
                raise MalformedCsvError(
                    "%s:%d: bad date %r" % (path.name, lineno, row[0])
                )
            if last_date is not None and d <= last_date:
                raise MalformedCsvError(
                    "%s:%d: dates not ascending" % (path.name, lineno)
                )
            last_date = d
            raw = row[5].strip()
            if raw == "" or raw.lower() == "null":
                continue
            try:
                price = float(raw)
            except ValueError:
                raise BadPriceError(
                    "%s:%d: non-numeric price %r for %s"
                    % (path.name, lineno, raw, symbol)
                )
            if not math.isfinite(price) or price <= 0:
                raise BadPriceError(
                    "%s:%d: non-positive price %r for %s"
                    % (path.name, lineno, raw, symbol)
                )
            series[d] = price
    return series


def truncating_tickers(series_by_ticker: dict[str, dict[date, float]]) -> list[str]:
    """Tickers whose own history starts late or ends early versus the rest.

    These are the tickers that shrank the common date range; surfaced as
    warnings so the caller can decide whether to drop them.
    """
    nonempty = {k: v for k, v in series_by_ticker.items() if v}
    if len(nonempty) < 2:
        return []
    firsts = {k: min(v) for k, v in nonempty.items()}
    lasts = {k: max(v) for k, v in nonempty.items()}
    earliest = min(firsts.values())
    latest = max(lasts.values())
    out = [
        k
        for k in series_by_ticker
        if k in nonempty and (firsts[k] > earliest or lasts[k] < latest)
    ]
    return sorted(out)


def load_dataset(
    data_dir: str | Path,
    tickers: Sequence[str],
    start: date,
    end: date,
) -> tuple[PriceTable, list[str]]:
    """Load and align ticker files; returns the table plus warning strings."""
    if start > end:
        raise BadRequestError("start date %s is after end date %s" % (start, end))
    if not tickers:
        raise BadRequestError("no tickers requested")
    symbols = [validate_ticker(t) for t in tickers]
    if len(set(symbols)) != len(symbols):
        raise BadRequestError("duplicate tickers in request")
    data_dir = Path(data_dir)
    series_by_ticker: dict[str, dict[date, float]] = {}
    for symbol in symbols:
        path = data_dir / ("%s.csv" % symbol)
        if not path.is_file():
            raise MissingFileError("missing file for ticker %s: %s" % (symbol, path))
        full = _read_series(path, symbol)
        series_by_ticker[symbol] = {
            d: v for d, v in full.items() if start <= d <= end
        }
    common = None
    for symbol in symbols:
        keys = set(series_by_ticker[symbol])
        common = keys if common is None else (common & keys)
    common_dates = tuple(sorted(common))
    if len(common_dates) < MIN_COMMON_DATES:
        raise InsufficientHistoryError(
            "only %d common dates across %s (need >= %d)"
            % (len(common_dates), ",".join(symbols), MIN_COMMON_DATES)
        )
    values = np.array(
        [[series_by_ticker[s][d] for s in symbols] for d in common_dates],
        dtype=float,
    )
    table = PriceTable(common_dates, tuple(symbols), values)
    warnings = [
        "ticker %s truncated the common date range" % s
        for s in truncating_tickers(series_by_ticker)
    ]
    return table, warnings


def load_price_table(
    data_dir: str | Path,
    tickers: Sequence[str],
    start: date,
    end: date,
) -> PriceTable:
    table, _ = load_dataset(data_dir, tickers, start, end)
    return table
