from datetime import date

import numpy as np
import pytest

from conftest import weekdays
from corrgraph.backtest import (
    CapWeighted,
    EqualSum,
    PriceWeighted,
    compare,
    cumulative_returns,
    portfolio_value,
    run_backtest,
)
from corrgraph.errors import (
    BadRequestError,
    DegenerateSeriesError,
    MissingSharesError,
)
from corrgraph.ingest import PriceTable


def price_table(columns, tickers, start=date(2020, 1, 1)):
    arr = np.array(columns, dtype=float).T
    dates = weekdays(start, arr.shape[0])
    return PriceTable(tuple(dates), tuple(tickers), arr)


class TestPortfolioValue:
    def test_price_weighted(self):
        assert portfolio_value({"X": 10, "Y": 30}, PriceWeighted()) == 20

    def test_cap_weighted(self):
        scheme = CapWeighted({"X": 2, "Y": 8})
        assert portfolio_value({"X": 10, "Y": 5}, scheme) == pytest.approx(6)

    def test_equal_sum(self):
        assert portfolio_value({"X": 10, "Y": 30}, EqualSum()) == 40

    def test_single_asset_any_scheme(self):
        for scheme in [PriceWeighted(), CapWeighted({"X": 7}), EqualSum()]:
            assert portfolio_value({"X": 42.5}, scheme) == 42.5

    def test_missing_shares(self):
        with pytest.raises(MissingSharesError):
            portfolio_value({"X": 10, "Y": 5}, CapWeighted({"X": 2}))

    def test_price_weighted_equals_uniform_cap(self):
        prices = {"X": 11.5, "Y": 20.25, "Z": 7.0}
        uniform = CapWeighted({t: 3 for t in prices})
        assert portfolio_value(prices, PriceWeighted()) == pytest.approx(
            portfolio_value(prices, uniform), abs=1e-12
        )


class TestCumulativeReturns:
    def test_arithmetic(self):
        assert cumulative_returns([100, 110, 99]) == pytest.approx([0, 0.10, -0.01])

    def test_constant(self):
        assert cumulative_returns([5, 5, 5]) == [0, 0, 0]

    def test_doubling(self):
        assert cumulative_returns([50, 100]) == [0, 1.0]

    def test_bad_base(self):
        with pytest.raises(DegenerateSeriesError):
            cumulative_returns([0, 1, 2])

    def test_scale_invariance(self):
        rng = np.random.default_rng(11)
        values = list(100 * np.cumprod(1 + rng.normal(0, 0.02, 40)))
        base = cumulative_returns(values)
        scaled = cumulative_returns([17.3 * v for v in values])
        assert scaled == pytest.approx(base, abs=1e-12)


class TestCompare:
    DATES = weekdays(date(2020, 1, 1), 3)

    def test_identical_series_never_outperform(self):
        report = compare([100, 110, 99], [100, 110, 99], self.DATES)
        assert report.outperformance_fraction == 0

    def test_one_of_three_days(self):
        # cumulative [0, .1, .2] vs [0, .05, .3]
        report = compare([100, 110, 120], [100, 105, 130], self.DATES)
        assert report.outperformance_fraction == pytest.approx(1 / 3)

    def test_flat_benchmark(self):
        n = 10
        dates = weekdays(date(2020, 1, 1), n)
        rising = [100 + i for i in range(n)]
        report = compare(rising, [100] * n, dates)
        assert report.outperformance_fraction == pytest.approx((n - 1) / n)

    def test_length_mismatch(self):
        with pytest.raises(BadRequestError):
            compare([1, 2], [1, 2, 3], self.DATES)

    def test_antisymmetry_bound(self):
        rng = np.random.default_rng(9)
        for _ in range(25):
            n = int(rng.integers(2, 30))
            dates = weekdays(date(2020, 1, 1), n)
            p = list(100 * np.cumprod(1 + rng.normal(0, 0.02, n)))
            b = list(100 * np.cumprod(1 + rng.normal(0, 0.02, n)))
            f_pb = compare(p, b, dates).outperformance_fraction
            f_bp = compare(b, p, dates).outperformance_fraction
            assert f_pb + f_bp <= 1 + 1e-12
            ties = sum(
                1
                for x, y in zip(cumulative_returns(p)[1:], cumulative_returns(b)[1:])
                if x == y
            )
            if ties == 0:
                assert f_pb + f_bp == pytest.approx(1 - 1 / n)

    def test_scale_invariant_fraction(self):
        rng = np.random.default_rng(14)
        n = 20
        dates = weekdays(date(2020, 1, 1), n)
        p = list(100 * np.cumprod(1 + rng.normal(0, 0.02, n)))
        b = list(100 * np.cumprod(1 + rng.normal(0, 0.02, n)))
        f1 = compare(p, b, dates).outperformance_fraction
        f2 = compare([3.7 * v for v in p], b, dates).outperformance_fraction
        assert f1 == f2


class TestRunBacktest:
    def test_aligns_and_reports(self):
        table = price_table([[10, 11, 12, 13], [30, 29, 31, 33]], ["X", "Y"])
        bench = price_table([[20, 20, 21, 22]], ["SPY"])
        report = run_backtest(table, ["X", "Y"], PriceWeighted(), bench)
        assert report.portfolio_start_price == 20
        assert report.portfolio_cum[0] == 0
        assert report.benchmark_cum[0] == 0
        assert len(report.dates) == 4

    def test_ticker_order_independent(self):
        table = price_table([[10, 11, 12], [30, 29, 31]], ["X", "Y"])
        bench = price_table([[20, 20, 21]], ["SPY"])
        a = run_backtest(table, ["X", "Y"], PriceWeighted(), bench)
        b = run_backtest(table, ["Y", "X"], PriceWeighted(), bench)
        assert a.portfolio_cum == b.portfolio_cum
        assert a.outperformance_fraction == b.outperformance_fraction

    def test_unknown_portfolio_ticker(self):
        table = price_table([[10, 11, 12]], ["X"])
        bench = price_table([[20, 20, 21]], ["SPY"])
        with pytest.raises(BadRequestError):
            run_backtest(table, ["NOPE"], PriceWeighted(), bench)

    def test_multi_ticker_benchmark_rejected(self):
        table = price_table([[10, 11, 12]], ["X"])
        bench = price_table([[20, 20, 21], [1, 2, 3]], ["SPY", "QQQ"])
        with pytest.raises(BadRequestError):
            run_backtest(table, ["X"], PriceWeighted(), bench)
