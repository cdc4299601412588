"""Offline portfolio graph analytics.

Builds correlation graphs over stock return histories, selects portfolios
as maximum cliques under diversified/undiversified thresholds, backtests
them against weighted benchmarks, and evaluates lead-lag indicator rules.
"""

from .backtest import (
    BacktestReport,
    CapWeighted,
    EqualSum,
    PriceWeighted,
    compare,
    cumulative_returns,
    portfolio_value,
    run_backtest,
)
from .graph import (
    CliqueReport,
    CorrelationGraph,
    CorrelationMatrix,
    SampleStats,
    SelectionMode,
    analyze_graph,
    build_graph,
    correlation_matrix,
    max_cliques,
    offdiagonal_stats,
    select_portfolio,
    suggest_threshold,
)
from .ingest import (
    PriceTable,
    ReturnTable,
    load_dataset,
    load_price_table,
    to_returns,
)
from .signals import (
    IndicatorDigraph,
    IndicatorRule,
    LagRelationship,
    SignalBacktestReport,
    evaluate_conditionals,
    find_optimal_lag,
    last_day_digraph,
    simulate_indicative,
)
from .stats import LagMode, lagged_pearson, mean, median, pearson, sample_stddev

__version__ = "0.1.0"
