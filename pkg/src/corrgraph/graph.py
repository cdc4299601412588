"""Correlation matrices, threshold graphs, clique enumeration, selection.

A Diversified graph keeps edges between weakly correlated pairs
(|corr| < threshold); an Undiversified graph keeps strongly correlated pairs
(|corr| > threshold).  Equality at the threshold is never an edge in either
mode, so the two edge sets partition all pairs with |corr| != threshold.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import stats
from .errors import BadThresholdError, DegenerateSeriesError, NoCliqueError
from .ingest import ReturnTable


class SelectionMode(enum.Enum):
    DIVERSIFIED = "diversified"
    UNDIVERSIFIED = "undiversified"


@dataclass(frozen=True)
class SampleStats:
    mean: float
    median: float
    stddev: float
    count: int


@dataclass(frozen=True)
class CorrelationMatrix:
    tickers: tuple[str, ...]
    values: np.ndarray  # square, symmetric, unit diagonal

    def corr(self, a: str, b: str) -> float:
        return float(
            self.values[self.tickers.index(a), self.tickers.index(b)]
        )


@dataclass(frozen=True)
class CorrelationGraph:
    tickers: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]  # each pair sorted; list sorted
    mode: SelectionMode
    threshold: float

    def neighbors(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {t: set() for t in self.tickers}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj


@dataclass(frozen=True)
class CliqueReport:
    max_size: int
    max_cliques: tuple[tuple[str, ...], ...]  # sorted tickers, lexicographic
    selected: tuple[str, ...] | None = None
    tie_break_score: float | None = None


def correlation_matrix(r: ReturnTable) -> CorrelationMatrix:
    """Pairwise Pearson correlation of return columns; unit diagonal."""
    n = len(r.tickers)
    if n >= 1 and r.values.shape[0] < 2:
        raise DegenerateSeriesError("need at least 2 return rows")
    cols = [list(r.values[:, i]) for i in range(n)]
    for i, col in enumerate(cols):
        if max(col) == min(col):
            raise DegenerateSeriesError(
                "constant return series for ticker %s" % r.tickers[i]
            )
    values = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            c = stats.pearson(cols[i], cols[j])
            values[i, j] = c
            values[j, i] = c
    return CorrelationMatrix(r.tickers, values)


def offdiagonal_values(m: CorrelationMatrix) -> list[float]:
    """Upper-triangle correlations, each unordered pair once."""
    n = len(m.tickers)
    return [float(m.values[i, j]) for i in range(n) for j in range(i + 1, n)]


def offdiagonal_stats(m: CorrelationMatrix) -> SampleStats:
    vals = offdiagonal_values(m)
    if not vals:
        raise DegenerateSeriesError("need at least 2 tickers for statistics")
    return SampleStats(
        mean=stats.mean(vals),
        median=stats.median(vals),
        stddev=stats.sample_stddev(vals) if len(vals) >= 2 else 0.0,
        count=len(vals),
    )


def suggest_threshold(s: SampleStats, mode: SelectionMode) -> float:
    if mode is SelectionMode.DIVERSIFIED:
        raw = s.mean - s.stddev
    else:
        raw = s.mean + s.stddev
    return min(1.0, max(0.0, raw))


def build_graph(
    m: CorrelationMatrix, mode: SelectionMode, threshold: float
) -> CorrelationGraph:
    if not (0.0 <= threshold <= 1.0):
        raise BadThresholdError("threshold %r outside [0, 1]" % (threshold,))
    n = len(m.tickers)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            c = abs(float(m.values[i, j]))
            if mode is SelectionMode.DIVERSIFIED:
                keep = c < threshold
            else:
                keep = c > threshold
            if keep:
                edges.append(tuple(sorted((m.tickers[i], m.tickers[j]))))
    return CorrelationGraph(m.tickers, tuple(sorted(edges)), mode, threshold)


def _bron_kerbosch(
    r: set[str],
    p: set[str],
    x: set[str],
    adj: dict[str, set[str]],
    out: list[frozenset[str]],
) -> None:
    # pivoting variant: branch only on candidates outside the pivot's
    # neighborhood
    if not p and not x:
        out.append(frozenset(r))
        return
    pivot = max(p | x, key=lambda v: len(adj[v] & p))
    for v in sorted(p - adj[pivot]):
        _bron_kerbosch(r | {v}, p & adj[v], x & adj[v], adj, out)
        p = p - {v}
        x = x | {v}


def max_cliques(g: CorrelationGraph) -> CliqueReport:
    """All maximum-cardinality cliques, deterministically ordered."""
    adj = g.neighbors()
    maximal: list[frozenset[str]] = []
    _bron_kerbosch(set(), set(g.tickers), set(), adj, maximal)
    max_size = max((len(c) for c in maximal), default=0)
    cliques = sorted(
        tuple(sorted(c)) for c in maximal if len(c) == max_size
    )
    return CliqueReport(max_size=max_size, max_cliques=tuple(cliques))


def clique_score(clique: Sequence[str], m: CorrelationMatrix) -> float:
    """Mean absolute pairwise correlation inside a clique."""
    pairs = [
        abs(m.corr(a, b))
        for i, a in enumerate(clique)
        for b in clique[i + 1 :]
    ]
    return stats.mean(pairs)


def select_portfolio(
    report: CliqueReport, m: CorrelationMatrix, mode: SelectionMode
) -> CliqueReport:
    """Tie-break max cliques by the mode's own objective, then lexically.

    Diversified favors the lowest mean |corr|; Undiversified the highest.
    """
    if report.max_size < 2:
        raise NoCliqueError("no clique of size >= 2 at this threshold")
    scored = [(clique_score(c, m), c) for c in report.max_cliques]
    if mode is SelectionMode.DIVERSIFIED:
        best_score = min(s for s, _ in scored)
    else:
        best_score = max(s for s, _ in scored)
    # max_cliques is already lexicographically sorted, so the first hit wins
    selected = next(c for s, c in scored if s == best_score)
    return CliqueReport(
        max_size=report.max_size,
        max_cliques=report.max_cliques,
        selected=selected,
        tie_break_score=best_score,
    )


def analyze_graph(
    m: CorrelationMatrix, mode: SelectionMode, threshold: float
) -> tuple[CorrelationGraph, CliqueReport]:
    """Convenience pipeline: threshold, enumerate, tie-break."""
    g = build_graph(m, mode, threshold)
    report = max_cliques(g)
    report = select_portfolio(report, m, mode)
    return g, report
