"""Regenerate the frozen market fixture and golden CLI outputs.

Run from the repo root:  python3 scripts/make_fixtures.py
The outputs under tests/fixtures/ are committed; the test suite compares
against them byte-for-byte, so only rerun this when the fixture itself is
meant to change.
"""

import io
import json
import sys
from contextlib import redirect_stdout
from datetime import date, timedelta
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from corrgraph.cli import run  # noqa: E402

MARKET_DIR = ROOT / "tests" / "fixtures" / "market"
GOLDEN_DIR = ROOT / "tests" / "fixtures" / "golden"

TICKERS = ["ALFA", "BRVO", "CHLO", "DELT", "ECHO",
           "FOXT", "GOLF", "HOTL", "INDI", "JULI"]
BENCHMARK = "SPY"
START = date(2019, 1, 1)
DAYS = 522  # ~2 years of weekdays


def weekdays(start, count):
    out, d = [], start
    while len(out) < count:
        if d.weekday() < 5:
            out.append(d)
        d += timedelta(days=1)
    return out


def make_market():
    rng = np.random.default_rng(20190101)
    dates = weekdays(START, DAYS)
    market = rng.normal(0.0, 0.009, DAYS - 1)
    MARKET_DIR.mkdir(parents=True, exist_ok=True)
    all_prices = []
    for i, symbol in enumerate(TICKERS):
        beta = 0.2 + 0.15 * i
        eps = rng.normal(0.0, 0.012, DAYS - 1)
        rets = 0.0004 + beta * market + eps
        prices = 100.0 * np.cumprod(np.concatenate([[1.0], 1.0 + rets]))
        all_prices.append(prices)
        write_csv(symbol, dates, prices)
    bench = np.mean(all_prices, axis=0) * (1 + rng.normal(0, 0.001, DAYS))
    write_csv(BENCHMARK, dates, bench)
    return dates


def write_csv(symbol, dates, prices):
    lines = ["Date,Open,High,Low,Close,Adj Close,Volume"]
    for d, p in zip(dates, prices):
        adj = repr(round(float(p), 6))
        lines.append(f"{d.isoformat()},1,1,1,1,{adj},100")
    (MARKET_DIR / f"{symbol}.csv").write_text("\n".join(lines) + "\n")


def capture(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = run(argv)
    assert code == 0, f"exit {code} for {argv}"
    return buf.getvalue()


def make_goldens(dates):
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    base = [
        "--data-dir", str(MARKET_DIR),
        "--tickers", ",".join(TICKERS),
        "--start", dates[0].isoformat(),
        "--end", dates[-1].isoformat(),
        "--json",
    ]
    graph_out = capture(
        ["graph", *base, "--mode", "diversified", "--threshold", "0.3"]
    )
    (GOLDEN_DIR / "graph.json").write_text(graph_out)
    selected = json.loads(graph_out)["selected"]

    backtest_out = capture(
        ["backtest", *base, "--portfolio", ",".join(selected),
         "--weighting", "price-weighted", "--benchmark", BENCHMARK]
    )
    (GOLDEN_DIR / "backtest.json").write_text(backtest_out)

    lags_out = capture(
        ["lags", *base, "--target", "ALFA",
         "--indicators", "BRVO,CHLO,DELT", "--max-lag", "10"]
    )
    (GOLDEN_DIR / "lags.json").write_text(lags_out)

    rule_path = GOLDEN_DIR / "rule.json"
    rule_path.write_text(lags_out)
    signal_out = capture(
        ["signal", *base, "--target", "ALFA",
         "--rule-file", str(rule_path), "--required-true", "1"]
    )
    (GOLDEN_DIR / "signal.json").write_text(signal_out)


if __name__ == "__main__":
    dates = make_market()
    make_goldens(dates)
    print("fixtures written to", MARKET_DIR, "and", GOLDEN_DIR)
