import itertools
from datetime import date

import numpy as np
import pytest

from conftest import EXAMPLE_MATRIX, EXAMPLE_TICKERS, weekdays
from corrgraph.errors import (
    BadThresholdError,
    DegenerateSeriesError,
    NoCliqueError,
)
from corrgraph.graph import (
    CliqueReport,
    CorrelationMatrix,
    SampleStats,
    SelectionMode,
    analyze_graph,
    build_graph,
    clique_score,
    correlation_matrix,
    max_cliques,
    offdiagonal_stats,
    select_portfolio,
    suggest_threshold,
)
from corrgraph.ingest import ReturnTable

D = SelectionMode.DIVERSIFIED
U = SelectionMode.UNDIVERSIFIED


def example_matrix():
    return CorrelationMatrix(EXAMPLE_TICKERS, EXAMPLE_MATRIX.copy())


def return_table(columns):
    arr = np.array(columns, dtype=float).T
    names = tuple("T%d" % i for i in range(arr.shape[1]))
    dates = weekdays(date(2020, 1, 1), arr.shape[0])
    return ReturnTable(tuple(dates), names, arr)


def brute_pearson(x, y):
    xb = sum(x) / len(x)
    yb = sum(y) / len(y)
    num = sum((a - xb) * (b - yb) for a, b in zip(x, y))
    dx = sum((a - xb) ** 2 for a in x)
    dy = sum((b - yb) ** 2 for b in y)
    return num / (dx * dy) ** 0.5


class TestCorrelationMatrix:
    def test_single_ticker(self):
        m = correlation_matrix(return_table([[0.1, -0.2, 0.3]]))
        assert m.values.shape == (1, 1)
        assert m.values[0, 0] == 1

    def test_affine_copy(self):
        col = [0.1, -0.2, 0.3, 0.05]
        m = correlation_matrix(return_table([col, [2 * v for v in col]]))
        assert m.values[0, 1] == pytest.approx(1.0, abs=1e-12)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(21)
        cols = [list(rng.normal(0, 0.02, 50)) for _ in range(3)]
        m = correlation_matrix(return_table(cols))
        for i in range(3):
            assert m.values[i, i] == 1
            for j in range(i + 1, 3):
                expected = brute_pearson(cols[i], cols[j])
                assert m.values[i, j] == pytest.approx(expected, abs=1e-12)
                assert m.values[j, i] == m.values[i, j]

    def test_constant_column_names_ticker(self):
        with pytest.raises(DegenerateSeriesError, match="T1"):
            correlation_matrix(return_table([[0.1, 0.2, 0.3], [0.5, 0.5, 0.5]]))


class TestOffdiagonalStats:
    def test_hand_arithmetic(self):
        m = CorrelationMatrix(
            ("X", "Y", "Z"),
            np.array([[1, 0.2, 0.3], [0.2, 1, 0.4], [0.3, 0.4, 1]]),
        )
        s = offdiagonal_stats(m)
        assert s.mean == pytest.approx(0.3, abs=1e-12)
        assert s.median == pytest.approx(0.3, abs=1e-12)
        assert s.stddev == pytest.approx(0.1, abs=1e-12)
        assert s.count == 3

    def test_constant_offdiagonals(self):
        m = CorrelationMatrix(
            ("X", "Y", "Z"),
            np.array([[1, 0.5, 0.5], [0.5, 1, 0.5], [0.5, 0.5, 1]]),
        )
        s = offdiagonal_stats(m)
        assert s.mean == 0.5
        assert s.stddev == 0

    def test_example_matrix_mean(self):
        s = offdiagonal_stats(example_matrix())
        assert s.mean == pytest.approx(0.26, abs=1e-12)

    def test_single_ticker_raises(self):
        m = CorrelationMatrix(("X",), np.array([[1.0]]))
        with pytest.raises(DegenerateSeriesError):
            offdiagonal_stats(m)


class TestSuggestThreshold:
    def test_direct_formula(self):
        s = SampleStats(mean=0.3, median=0.3, stddev=0.1, count=10)
        assert suggest_threshold(s, D) == pytest.approx(0.2)
        assert suggest_threshold(s, U) == pytest.approx(0.4)

    def test_zero_stddev(self):
        s = SampleStats(mean=0.3, median=0.3, stddev=0.0, count=10)
        assert suggest_threshold(s, D) == 0.3
        assert suggest_threshold(s, U) == 0.3

    def test_clamping(self):
        s = SampleStats(mean=0.05, median=0.05, stddev=0.2, count=10)
        assert suggest_threshold(s, D) == 0
        s = SampleStats(mean=0.95, median=0.95, stddev=0.2, count=10)
        assert suggest_threshold(s, U) == 1

    def test_ordering(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            m_, sd = rng.uniform(0, 1), rng.uniform(0, 0.4)
            s = SampleStats(mean=m_, median=m_, stddev=sd, count=10)
            assert (
                suggest_threshold(s, D) <= min(1.0, max(0.0, m_)) + 1e-12
            )
            assert suggest_threshold(s, D) <= suggest_threshold(s, U)

    def test_sixteen_percent_retention(self):
        rng = np.random.default_rng(2026)
        draws = rng.normal(0.5, 0.12, 20000)
        corrs = draws[(draws >= 0) & (draws <= 1)][:10000]
        assert len(corrs) == 10000
        s = SampleStats(
            mean=float(np.mean(corrs)),
            median=float(np.median(corrs)),
            stddev=float(np.std(corrs, ddof=1)),
            count=len(corrs),
        )
        t = suggest_threshold(s, D)
        retained = np.mean(np.abs(corrs) < t)
        assert abs(retained - 0.16) < 0.03


class TestBuildGraph:
    def test_printed_adjacency(self):
        g = build_graph(example_matrix(), D, 0.21)
        assert g.edges == (
            ("A", "B"), ("A", "E"), ("B", "C"), ("B", "E"), ("C", "E"), ("D", "E")
        )

    def test_zero_threshold_empty(self):
        g = build_graph(example_matrix(), D, 0.0)
        assert g.edges == ()

    def test_undiversified_035(self):
        g = build_graph(example_matrix(), U, 0.35)
        assert g.edges == (("A", "C"), ("A", "D"), ("C", "D"))

    def test_threshold_out_of_range(self):
        with pytest.raises(BadThresholdError):
            build_graph(example_matrix(), D, 1.5)
        with pytest.raises(BadThresholdError):
            build_graph(example_matrix(), D, -0.1)

    def test_edge_partition(self):
        rng = np.random.default_rng(4)
        for _ in range(30):
            n = 6
            c = rng.uniform(-1, 1, (n, n))
            c = (c + c.T) / 2
            np.fill_diagonal(c, 1.0)
            m = CorrelationMatrix(tuple("ABCDEF"), c)
            t = float(rng.uniform(0, 1))
            div = set(build_graph(m, D, t).edges)
            undiv = set(build_graph(m, U, t).edges)
            assert not (div & undiv)
            all_pairs = {
                tuple(sorted(p))
                for p in itertools.combinations(m.tickers, 2)
                if abs(m.corr(*p)) != t
            }
            assert div | undiv == all_pairs

    def test_monotonicity(self):
        m = example_matrix()
        thresholds = [0.0, 0.15, 0.25, 0.45, 0.7, 1.0]
        prev_div, prev_undiv = set(), None
        for t in thresholds:
            div = set(build_graph(m, D, t).edges)
            undiv = set(build_graph(m, U, t).edges)
            assert prev_div <= div
            if prev_undiv is not None:
                assert undiv <= prev_undiv
            prev_div, prev_undiv = div, undiv


def brute_force_max_clique(n_nodes, adj_mask):
    """Exhaustive maximum clique over bitmask subsets; independent oracle."""
    best = 0
    best_sets = []
    for subset in range(1, 1 << n_nodes):
        members = [i for i in range(n_nodes) if subset >> i & 1]
        if all(
            adj_mask[a] >> b & 1 for a, b in itertools.combinations(members, 2)
        ):
            if len(members) > best:
                best = len(members)
                best_sets = [tuple(members)]
            elif len(members) == best:
                best_sets.append(tuple(members))
    return best, sorted(best_sets)


class TestMaxCliques:
    def test_complete_graph(self):
        m = CorrelationMatrix(
            ("A", "B", "C"),
            np.array([[1, 0.9, 0.9], [0.9, 1, 0.9], [0.9, 0.9, 1]]),
        )
        report = max_cliques(build_graph(m, U, 0.5))
        assert report.max_size == 3
        assert report.max_cliques == (("A", "B", "C"),)

    def test_example_edges(self):
        report = max_cliques(build_graph(example_matrix(), D, 0.21))
        assert report.max_size == 3
        assert report.max_cliques == (("A", "B", "E"), ("B", "C", "E"))

    def test_no_edges_singletons(self):
        m = CorrelationMatrix(
            tuple("WXYZ"), np.full((4, 4), 0.5) + 0.5 * np.eye(4)
        )
        report = max_cliques(build_graph(m, D, 0.1))
        assert report.max_size == 1
        assert report.max_cliques == (("W",), ("X",), ("Y",), ("Z",))

    def test_matches_exhaustive_search(self):
        rng = np.random.default_rng(77)
        for trial in range(100):
            n = int(rng.integers(4, 13))
            density = rng.uniform(0.1, 0.9)
            adj_mask = [0] * n
            edges = []
            names = tuple("N%02d" % i for i in range(n))
            for i in range(n):
                for j in range(i + 1, n):
                    if rng.random() < density:
                        adj_mask[i] |= 1 << j
                        adj_mask[j] |= 1 << i
                        edges.append((names[i], names[j]))
            c = np.eye(n)
            for i, j in [(names.index(a), names.index(b)) for a, b in edges]:
                c[i, j] = c[j, i] = 0.9
            m = CorrelationMatrix(names, c)
            g = build_graph(m, U, 0.5)
            assert set(g.edges) == set(edges)
            report = max_cliques(g)
            oracle_size, oracle_sets = brute_force_max_clique(n, adj_mask)
            assert report.max_size == oracle_size
            got = sorted(
                tuple(names.index(t) for t in c_) for c_ in report.max_cliques
            )
            assert got == oracle_sets

    def test_determinism(self):
        g = build_graph(example_matrix(), D, 0.21)
        assert max_cliques(g) == max_cliques(g)


class TestSelectPortfolio:
    def test_tie_breaks_lexicographically(self):
        m = example_matrix()
        report = max_cliques(build_graph(m, D, 0.21))
        # both cliques score mean |corr| = 1/6; lexicographic wins
        assert clique_score(("A", "B", "E"), m) == pytest.approx(1 / 6)
        assert clique_score(("B", "C", "E"), m) == pytest.approx(1 / 6)
        selected = select_portfolio(report, m, D)
        assert selected.selected == ("A", "B", "E")
        assert selected.tie_break_score == pytest.approx(1 / 6)

    def test_single_max_clique(self):
        m = example_matrix()
        report = max_cliques(build_graph(m, U, 0.35))
        selected = select_portfolio(report, m, U)
        assert selected.selected == ("A", "C", "D")

    def test_objective_direction(self):
        # two triangles with different internal correlation; cross pairs are
        # strongly correlated so neither mode links the triangles
        c = np.full((6, 6), 0.9)
        np.fill_diagonal(c, 1.0)
        for i, j in [(0, 1), (0, 2), (1, 2)]:
            c[i, j] = c[j, i] = 0.10
        for i, j in [(3, 4), (3, 5), (4, 5)]:
            c[i, j] = c[j, i] = 0.15
        m = CorrelationMatrix(tuple("ABCXYZ"), c)
        report = max_cliques(build_graph(m, D, 0.2))
        assert select_portfolio(report, m, D).selected == ("A", "B", "C")
        assert select_portfolio(report, m, U).selected == ("X", "Y", "Z")

    def test_no_clique_raises(self):
        m = example_matrix()
        report = max_cliques(build_graph(m, D, 0.0))
        with pytest.raises(NoCliqueError):
            select_portfolio(report, m, D)

    def test_analyze_graph_pipeline(self):
        g, report = analyze_graph(example_matrix(), D, 0.21)
        assert len(g.edges) == 6
        assert report.selected == ("A", "B", "E")
