import csv
from datetime import date, timedelta
from pathlib import Path

import numpy as np
import pytest

HEADER = ["Date", "Open", "High", "Low", "Close", "Adj Close", "Volume"]

# 5x5 correlation structure used across the graph tests (tickers A..E)
EXAMPLE_TICKERS = ("A", "B", "C", "D", "E")
EXAMPLE_MATRIX = np.array(
    [
        [1.0, 0.2, 0.4, 0.4, 0.1],
        [0.2, 1.0, 0.2, 0.3, 0.2],
        [0.4, 0.2, 1.0, 0.6, 0.1],
        [0.4, 0.3, 0.6, 1.0, 0.1],
        [0.1, 0.2, 0.1, 0.1, 1.0],
    ]
)


def weekdays(start: date, count: int) -> list[date]:
    out = []
    d = start
    while len(out) < count:
        if d.weekday() < 5:
            out.append(d)
        d += timedelta(days=1)
    return out


def write_csv(data_dir: Path, symbol: str, rows: list[tuple[str, str]]) -> Path:
    """rows: (iso date, adj close literal or 'null' or '')."""
    path = data_dir / f"{symbol}.csv"
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(HEADER)
        for d, adj in rows:
            w.writerow([d, "1", "1", "1", "1", adj, "100"])
    return path


def write_price_csv(data_dir: Path, symbol: str, dates, prices) -> Path:
    return write_csv(
        data_dir,
        symbol,
        [(d.isoformat(), repr(float(p))) for d, p in zip(dates, prices)],
    )


def returns_with_exact_corr(target: np.ndarray, n: int, seed: int) -> np.ndarray:
    """n x k return sample whose sample correlation equals `target` exactly.

    Draw random data, orthonormalize the demeaned columns, then color them
    with the Cholesky factor of the target matrix.
    """
    k = target.shape[0]
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, k + 1))
    x[:, 0] = 1.0  # first basis vector spans the mean direction
    q, _ = np.linalg.qr(x)
    q = q[:, 1:]  # orthonormal columns, each orthogonal to ones => zero mean
    chol = np.linalg.cholesky(target)
    returns = q @ chol.T
    # keep returns small enough that prices stay positive
    return 0.01 * returns


def prices_from_returns(returns: np.ndarray, start_price: float = 100.0) -> np.ndarray:
    prices = np.empty((returns.shape[0] + 1, returns.shape[1]))
    prices[0] = start_price
    for t in range(returns.shape[0]):
        prices[t + 1] = prices[t] * (1.0 + returns[t])
    return prices


@pytest.fixture
def example_corr_dir(tmp_path):
    """CSV directory whose return correlations reproduce EXAMPLE_MATRIX."""
    returns = returns_with_exact_corr(EXAMPLE_MATRIX, 60, seed=7)
    prices = prices_from_returns(returns)
    dates = weekdays(date(2020, 1, 1), prices.shape[0])
    for i, symbol in enumerate(EXAMPLE_TICKERS):
        write_price_csv(tmp_path, symbol, dates, prices[:, i])
    return tmp_path


FIXTURE_DIR = Path(__file__).parent / "fixtures"
MARKET_DIR = FIXTURE_DIR / "market"
GOLDEN_DIR = FIXTURE_DIR / "golden"
