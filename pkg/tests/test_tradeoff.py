import random

import pytest

import oracles
from spa.graph import UGraph, cutset_exact, is_forest
from spa.jointree import JointreeError, separator_width, \
    verify_running_intersection
from spa.ordering import min_degree
from spa.report import primary_tree
from spa.tradeoff import (SERIES_CSV_HEADER, DecompositionPoint,
                          TradeoffSeries, cluster_cutsets, complexity_bounds,
                          merge_by_separator, series_from_csv,
                          series_from_json, series_to_csv, series_to_json,
                          tradeoff_series)
from test_graph import from_oracle, ug
from test_jointree import tree_from


@pytest.fixture(scope="module")
def c432_tree(c432):
    _, dag, moral = c432
    return moral, primary_tree(moral, dag, "min-degree")


def point(sep=2, cluster=5, cutset=1, count=3):
    return DecompositionPoint(sep_bound=sep, max_cluster=cluster,
                              max_cutset=cutset, cluster_count=count,
                              time_exponent=max(sep, cutset),
                              space_exponent=sep)


class TestMergeBySeparator:
    def test_bound_zero_gives_one_cluster_per_component(self, c17):
        _, _, moral = c17
        t = tree_from(moral, min_degree(moral))
        merged = merge_by_separator(t, 0)
        assert merged.n_clusters == len(moral.components())
        assert set(merged.clusters[0]) == set(moral.nodes)
        assert merged.generation == "secondary"
        assert merged.sep_bound == 0

    def test_generous_bound_changes_nothing(self, c432_tree):
        _, t = c432_tree
        merged = merge_by_separator(t, separator_width(t))
        assert {frozenset(c) for c in merged.clusters} == \
            {frozenset(c) for c in t.clusters}
        assert len(merged.edges) == len(t.edges)

    def test_surviving_separators_obey_bound(self, c432_tree):
        _, t = c432_tree
        for bound in (12, 6, 3, 1):
            merged = merge_by_separator(t, bound)
            assert verify_running_intersection(merged)
            assert all(len(sep) <= bound for _, _, sep in merged.edges)
            assert merged.n_clusters == len(merged.edges) + 1

    def test_disconnected_components_stay_apart(self):
        g = ug([("a", "b"), ("b", "c"), ("x", "y")])
        t = tree_from(g, min_degree(g))
        merged = merge_by_separator(t, 0)
        assert merged.n_clusters == 2
        assert merged.edges == ()


class TestClusterCutsets:
    def test_every_cluster_left_acyclic(self, c432_tree):
        moral, t = c432_tree
        sizes = cluster_cutsets(t, moral)
        assert len(sizes) == t.n_clusters
        from spa.graph import cutset_heuristic
        for cluster in t.clusters:
            sub = moral.subgraph(cluster)
            assert is_forest(sub, without=cutset_heuristic(sub))

    def test_cache_is_reused(self, c17):
        _, _, moral = c17
        t = tree_from(moral, min_degree(moral))
        cache: dict = {}
        first = cluster_cutsets(t, moral, cache)
        poisoned = {k: v + 100 for k, v in cache.items()}
        assert cluster_cutsets(t, moral, poisoned) == \
            [s + 100 for s in first]

    def test_nested_exact_cutsets_are_monotone(self):
        rng = random.Random(37)
        for _ in range(20):
            og = oracles.random_graph(rng, 8, 0.45)
            g = from_oracle(og)
            inner = g.subgraph(g.nodes[:5])
            assert len(cutset_exact(inner)) <= len(cutset_exact(g))


class TestSeries:
    def test_c17_series_shape(self, c17):
        _, _, moral = c17
        t = tree_from(moral, min_degree(moral))
        series = tradeoff_series(t, moral, "c17")
        seps = [p.sep_bound for p in series.points]
        assert seps[0] == separator_width(t)
        assert seps[-1] == 0
        assert seps == sorted(seps, reverse=True)
        counts = [p.cluster_count for p in series.points]
        assert counts == sorted(counts, reverse=True)
        sizes = [p.max_cluster for p in series.points]
        assert sizes == sorted(sizes)
        assert series.points[-1].max_cluster == moral.n
        for p in series.points:
            assert p.time_exponent == max(p.sep_bound, p.max_cutset)
            assert p.space_exponent == p.sep_bound

    def test_final_point_matches_whole_graph_cutset(self, c17):
        _, _, moral = c17
        from spa.graph import cutset_heuristic
        t = tree_from(moral, min_degree(moral))
        series = tradeoff_series(t, moral, "c17")
        assert series.points[-1].max_cutset == len(cutset_heuristic(moral))


class TestValidation:
    def test_point_space_must_equal_bound(self):
        with pytest.raises(ValueError, match="space exponent"):
            DecompositionPoint(2, 5, 1, 3, time_exponent=2, space_exponent=1)

    def test_point_separator_within_cluster(self):
        with pytest.raises(ValueError, match="separator cannot exceed"):
            DecompositionPoint(9, 5, 1, 3, time_exponent=9, space_exponent=9)

    def test_point_cutset_below_cluster(self):
        with pytest.raises(ValueError, match="cutset"):
            DecompositionPoint(2, 5, 5, 3, time_exponent=5, space_exponent=2)

    def test_series_strictly_decreasing(self):
        with pytest.raises(ValueError, match="strictly decrease"):
            TradeoffSeries("c", "min-degree", (point(2), point(2, 6)))

    def test_series_must_end_at_zero(self):
        with pytest.raises(ValueError, match="ends at separator bound 0"):
            TradeoffSeries("c", "min-degree", (point(2),))

    def test_series_cluster_growth(self):
        with pytest.raises(ValueError, match="must not decrease"):
            TradeoffSeries("c", "min-degree",
                           (point(2, cluster=8), point(0, cluster=5)))


class TestComplexityBounds:
    def test_three_modes(self):
        p = point(sep=3, cluster=7, cutset=2)
        assert complexity_bounds(p, 100, "clustering") == (8, 3)
        assert complexity_bounds(p, 100, "conditioning") == (4, 0)
        assert complexity_bounds(p, 100, "hybrid") == (3, 3)

    def test_hybrid_dominated_by_cutset(self):
        p = point(sep=2, cluster=9, cutset=6)
        assert complexity_bounds(p, 1, "hybrid") == (6, 2)

    def test_unknown_mode(self):
        with pytest.raises(ValueError, match="unknown mode"):
            complexity_bounds(point(), 1, "quantum")


class TestSerialization:
    def test_csv_round_trip_is_byte_identical(self, c432_tree):
        moral, t = c432_tree
        series = tradeoff_series(t, moral, "c432")
        text = series_to_csv(series)
        assert text.splitlines()[0] == ",".join(SERIES_CSV_HEADER)
        again = series_from_csv(text)
        assert series_to_csv(again) == text
        assert again == series

    def test_json_round_trip_is_byte_identical(self, c17):
        _, _, moral = c17
        t = tree_from(moral, min_degree(moral))
        series = tradeoff_series(t, moral, "c17")
        text = series_to_json(series)
        assert series_to_json(series_from_json(text)) == text

    def test_csv_header_enforced(self):
        with pytest.raises(ValueError, match="header"):
            series_from_csv("a,b,c\n1,2,3\n")

    def test_csv_requires_rows(self):
        with pytest.raises(ValueError, match="no data rows"):
            series_from_csv(",".join(SERIES_CSV_HEADER) + "\n")

    def test_csv_rejects_mixed_circuits(self):
        rows = [",".join(SERIES_CSV_HEADER),
                "c17,min-degree,2,3,1,9,2,2",
                "c432,min-degree,0,11,3,1,3,0"]
        with pytest.raises(ValueError, match="mixes"):
            series_from_csv("\n".join(rows) + "\n")
