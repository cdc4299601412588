"""Scalar statistics and (lagged) Pearson correlation kernels.

Everything here is pure and operates on plain sequences of floats; callers
decide whether they pass returns or raw price levels.
"""

from __future__ import annotations

import enum
import math
from typing import Sequence

from .errors import DegenerateSeriesError, LagTooLargeError


class LagMode(enum.Enum):
    """How means are taken when correlating against a lag-shifted series.

    WINDOWED: means and sums over the aligned window only (statistically
    standard).  PAPER_CODE: sums over the window but deviations taken from
    full-series means; kept selectable for fidelity experiments.
    """

    WINDOWED = "windowed"
    PAPER_CODE = "paper-code"


def mean(xs: Sequence[float]) -> float:
    if len(xs) == 0:
        raise DegenerateSeriesError("mean of empty sequence")
    return math.fsum(xs) / len(xs)


def median(xs: Sequence[float]) -> float:
    n = len(xs)
    if n == 0:
        raise DegenerateSeriesError("median of empty sequence")
    s = sorted(xs)
    mid = n // 2
    if n % 2 == 1:
        return float(s[mid])
    return (s[mid - 1] + s[mid]) / 2.0


def sample_stddev(xs: Sequence[float]) -> float:
    # n-1 denominator (degrees of freedom)
    n = len(xs)
    if n < 2:
        raise DegenerateSeriesError("sample stddev needs at least 2 values")
    m = mean(xs)
    ss = math.fsum((x - m) ** 2 for x in xs)
    return math.sqrt(ss / (n - 1))


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Pearson product-moment correlation of two equal-length series."""
    if len(x) != len(y):
        raise DegenerateSeriesError(
            "length mismatch: %d vs %d" % (len(x), len(y))
        )
    if len(x) < 2:
        raise DegenerateSeriesError("correlation needs at least 2 points")
    x_avg = mean(x)
    y_avg = mean(y)
    num = math.fsum((a - x_avg) * (b - y_avg) for a, b in zip(x, y))
    ss_x = math.fsum((a - x_avg) ** 2 for a in x)
    ss_y = math.fsum((b - y_avg) ** 2 for b in y)
    if ss_x == 0.0 or ss_y == 0.0:
        raise DegenerateSeriesError("constant series has no correlation")
    return num / math.sqrt(ss_x * ss_y)


def lagged_pearson(
    target: Sequence[float],
    indicator: Sequence[float],
    lag: int,
    mode: LagMode = LagMode.WINDOWED,
) -> float:
    """Correlation of target[i] against indicator[i - lag].

    The evaluation window is i = lag .. n-1.  WINDOWED takes means over the
    window; PAPER_CODE takes deviations from the full-series means while
    summing over the window.  lag = 0 in WINDOWED mode equals pearson().
    """
    if len(target) != len(indicator):
        raise DegenerateSeriesError(
            "length mismatch: %d vs %d" % (len(target), len(indicator))
        )
    if lag < 0:
        raise LagTooLargeError("lag must be non-negative")
    n = len(target)
    window = n - lag
    if window < 2:
        raise LagTooLargeError(
            "lag %d leaves %d aligned points (need >= 2)" % (lag, window)
        )
    t_win = [target[i] for i in range(lag, n)]
    i_win = [indicator[i - lag] for i in range(lag, n)]
    if mode is LagMode.WINDOWED:
        t_avg = mean(t_win)
        i_avg = mean(i_win)
    else:
        t_avg = mean(target)
        i_avg = mean(indicator)
    num = math.fsum((a - t_avg) * (b - i_avg) for a, b in zip(t_win, i_win))
    ss_t = math.fsum((a - t_avg) ** 2 for a in t_win)
    ss_i = math.fsum((b - i_avg) ** 2 for b in i_win)
    if ss_t == 0.0 or ss_i == 0.0:
        raise DegenerateSeriesError("zero variance within the lag window")
    return num / math.sqrt(ss_t * ss_i)
