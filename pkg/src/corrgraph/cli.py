"""Command-line driver.

Exit codes: 0 success, 1 usage error, 2 data/ingest error, 3 degenerate
analysis.  Every subcommand supports --json, whose output is schema-identical
to the corresponding service endpoint body.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import date
from pathlib import Path

from . import backtest as bt
from . import graph as cg
from . import serialize, signals
from .errors import (
    AnalysisError,
    BadRequestError,
    CorrgraphError,
    DataError,
)
from .ingest import load_dataset, to_returns
from .stats import LagMode

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_ANALYSIS = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_dataset_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--data-dir", default=os.environ.get("CORRGRAPH_DATA_DIR", "./data"))
    p.add_argument("--tickers", required=True, help="comma-separated symbols")
    p.add_argument("--start", required=True, help="YYYY-MM-DD")
    p.add_argument("--end", required=True, help="YYYY-MM-DD")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> _Parser:
    parser = _Parser(prog="corrgraph", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("corr", help="correlation matrix, stats, suggested thresholds")
    _add_dataset_flags(p)

    p = sub.add_parser("graph", help="threshold graph, max cliques, selected portfolio")
    _add_dataset_flags(p)
    p.add_argument("--mode", required=True, choices=["diversified", "undiversified"])
    p.add_argument("--threshold", required=True, type=float)

    p = sub.add_parser("backtest", help="emulate a portfolio against a benchmark")
    _add_dataset_flags(p)
    p.add_argument("--portfolio", required=True, help="comma-separated symbols")
    p.add_argument(
        "--weighting",
        required=True,
        choices=["price-weighted", "cap-weighted", "equal-sum"],
    )
    p.add_argument("--shares-file", help="JSON {ticker: shares} for cap-weighted")
    p.add_argument("--benchmark", required=True, help="benchmark ticker symbol")

    p = sub.add_parser("lags", help="optimal lag per indicator against a target")
    _add_dataset_flags(p)
    p.add_argument("--target", required=True)
    p.add_argument("--indicators", required=True, help="comma-separated symbols")
    p.add_argument("--max-lag", type=int, default=79)
    p.add_argument("--lag-mode", choices=["windowed", "paper-code"], default="windowed")

    p = sub.add_parser("signal", help="indicative vs continuous investing")
    _add_dataset_flags(p)
    p.add_argument("--target", required=True)
    p.add_argument("--rule-file", required=True, help="JSON from the lags output")
    p.add_argument("--required-true", type=int, required=True)

    p = sub.add_parser("serve", help="run the JSON HTTP service")
    p.add_argument("--data-dir", default=None)
    p.add_argument("--bind", default=None)
    p.add_argument("--port", type=int, default=None)

    return parser


def _parse_date(raw: str, name: str) -> date:
    try:
        return date.fromisoformat(raw)
    except ValueError:
        raise UsageError("bad %s date: %r" % (name, raw))


def _split_symbols(raw: str) -> list[str]:
    symbols = [s.strip() for s in raw.split(",") if s.strip()]
    if not symbols:
        raise UsageError("empty ticker list")
    return symbols


def _load(args):
    table, warnings = load_dataset(
        args.data_dir,
        _split_symbols(args.tickers),
        _parse_date(args.start, "start"),
        _parse_date(args.end, "end"),
    )
    for w in warnings:
        print("warning: %s" % w, file=sys.stderr)
    return table


def _emit(args, payload: dict, human) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        human(payload)


def _cmd_corr(args) -> int:
    table = _load(args)
    m = cg.correlation_matrix(to_returns(table))
    s = cg.offdiagonal_stats(m)
    payload = serialize.correlations_payload(m, s)

    def human(p):
        width = max(len(t) for t in p["tickers"]) + 1
        print(" " * width + "".join("%*s" % (width, t) for t in p["tickers"]))
        for t, row in zip(p["tickers"], p["matrix"]):
            print("%*s" % (width, t) + "".join("%*.4f" % (width, v) for v in row))
        st = p["stats"]
        print("mean %.6f  median %.6f  stddev %.6f" % (st["mean"], st["median"], st["stddev"]))
        print(
            "suggested thresholds: diversified %.6f  undiversified %.6f"
            % (st["suggested"]["diversified"], st["suggested"]["undiversified"])
        )

    _emit(args, payload, human)
    return EXIT_OK


def _cmd_graph(args) -> int:
    table = _load(args)
    m = cg.correlation_matrix(to_returns(table))
    mode = cg.SelectionMode(args.mode)
    g, report = cg.analyze_graph(m, mode, args.threshold)
    payload = serialize.graph_payload(g, report)

    def human(p):
        print("edges (%d):" % len(p["edges"]))
        for i, j in p["edges"]:
            print("  %s - %s" % (p["nodes"][i], p["nodes"][j]))
        print("max cliques (size %d):" % len(p["max_cliques"][0]))
        for c in p["max_cliques"]:
            print("  %s" % " ".join(c))
        print("selected: %s  (mean |corr| %.6f)" % (" ".join(p["selected"]), p["tie_break_score"]))

    _emit(args, payload, human)
    return EXIT_OK


def _parse_weighting(args) -> bt.WeightingScheme:
    if args.weighting == "price-weighted":
        return bt.PriceWeighted()
    if args.weighting == "equal-sum":
        return bt.EqualSum()
    if not args.shares_file:
        raise UsageError("--shares-file is required for cap-weighted")
    try:
        shares = json.loads(Path(args.shares_file).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise DataError("cannot read shares file: %s" % e)
    if not isinstance(shares, dict):
        raise DataError("shares file must be a JSON object {ticker: shares}")
    return bt.CapWeighted({str(k): float(v) for k, v in shares.items()})


def _cmd_backtest(args) -> int:
    scheme = _parse_weighting(args)
    portfolio = _split_symbols(args.portfolio)
    table = _load(args)
    benchmark, _ = load_dataset(
        args.data_dir, [args.benchmark], table.dates[0], table.dates[-1]
    )
    report = bt.run_backtest(table, portfolio, scheme, benchmark)
    payload = serialize.backtest_payload(report)

    def human(p):
        print("start price %.4f" % p["start_price"])
        print(
            "outperforms %s on %.2f%% of days"
            % (args.benchmark, 100 * p["outperformance_fraction"])
        )
        print("%-12s %12s %12s" % ("date", "portfolio", "benchmark"))
        for d, pc, bc in zip(p["dates"], p["portfolio_cum"], p["benchmark_cum"]):
            print("%-12s %12.6f %12.6f" % (d, pc, bc))

    _emit(args, payload, human)
    return EXIT_OK


def _cmd_lags(args) -> int:
    table = _load(args)
    indicators = _split_symbols(args.indicators)
    for t in [args.target] + indicators:
        if t not in table.tickers:
            raise BadRequestError("ticker %r not in loaded dataset" % t)
    mode = LagMode(args.lag_mode)
    target_prices = table.column(args.target)
    relationships = [
        signals.find_optimal_lag(target_prices, table.column(ind), ind, args.max_lag, mode)
        for ind in indicators
    ]
    payload = serialize.lags_payload(relationships)

    def human(p):
        for r in p["relationships"]:
            print(
                "%s: best lag %d days, correlation %.4f"
                % (r["indicator"], r["lag"], r["correlation"])
            )

    _emit(args, payload, human)
    return EXIT_OK


def _cmd_signal(args) -> int:
    try:
        rule_doc = json.loads(Path(args.rule_file).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise DataError("cannot read rule file: %s" % e)
    raw_rels = rule_doc.get("relationships")
    if not isinstance(raw_rels, list):
        raise DataError("rule file must contain a 'relationships' list")
    rels = tuple(
        signals.LagRelationship(
            indicator=r["indicator"],
            lag=int(r["lag"]),
            correlation=float(r.get("correlation", 0.0)),
        )
        for r in raw_rels
    )
    table = _load(args)
    for t in [args.target] + [r.indicator for r in rels]:
        if t not in table.tickers:
            raise BadRequestError("ticker %r not in loaded dataset" % t)
    rule = signals.IndicatorRule(
        target=args.target, relationships=rels, required_true=args.required_true
    )
    returns = to_returns(table)
    report = signals.simulate_indicative(
        table.column(args.target), rule, returns, dates=table.dates
    )
    digraph = signals.last_day_digraph(rule, returns)
    payload = serialize.signal_payload(report, digraph)

    def human(p):
        print("invested on %d of %d days" % (len(p["invested_days"]), len(p["dates"]) - 1))
        print("%-12s %12s %12s" % ("date", "continuous", "indicative"))
        for d, c, i in zip(p["dates"], p["continuous"], p["indicative"]):
            print("%-12s %12.4f %12.4f" % (d, c, i))
        print(
            "final-day digraph: %d of %d conditionals true"
            % (len(p["digraph"]["edges"]), len(p["digraph"]["indicators"]))
        )

    _emit(args, payload, human)
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .service import serve

    serve(data_dir=args.data_dir, bind=args.bind, port=args.port)
    return EXIT_OK


_COMMANDS = {
    "corr": _cmd_corr,
    "graph": _cmd_graph,
    "backtest": _cmd_backtest,
    "lags": _cmd_lags,
    "signal": _cmd_signal,
    "serve": _cmd_serve,
}


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as e:
        print("usage error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    except DataError as e:
        print("%s: %s" % (e.code, e.message), file=sys.stderr)
        return EXIT_DATA
    except AnalysisError as e:
        print("%s: %s" % (e.code, e.message), file=sys.stderr)
        return EXIT_ANALYSIS
    except CorrgraphError as e:
        print("%s: %s" % (e.code, e.message), file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
