import random

import pytest

import oracles
from spa.graph import (GraphError, OrderedGraph, UGraph, cutset_exact,
                       cutset_heuristic, induced_width, is_chordal, is_forest,
                       moral_edge_count, moralize, treewidth_exact,
                       triangulate, width_of_ordering)
from spa.netlist import Dag


def ug(edges, nodes=None):
    if nodes is None:
        nodes = sorted({v for e in edges for v in e})
    return UGraph(nodes, edges)


def from_oracle(g):
    nodes = [str(v) for v in sorted(g)]
    edges = sorted({(str(min(a, b)), str(max(a, b)))
                    for a in g for b in g[a]})
    return UGraph(nodes, edges)


class TestUGraph:
    def test_basic_accessors(self):
        g = ug([("a", "b"), ("b", "c")], nodes=["a", "b", "c", "d"])
        assert g.n == 4 and g.m == 2
        assert g.has_edge("a", "b") and not g.has_edge("a", "c")
        assert g.neighbors("b") == ("a", "c")
        assert g.degree("d") == 0

    def test_rejects_duplicates_and_loops(self):
        with pytest.raises(GraphError):
            UGraph(["a", "a"], [])
        with pytest.raises(GraphError):
            ug([("a", "a")], nodes=["a"])
        with pytest.raises(GraphError):
            UGraph(["a", "b"], [("a", "b"), ("b", "a")])
        with pytest.raises(GraphError):
            UGraph(["a"], [("a", "zz")])

    def test_subgraph_follows_host_node_order(self):
        g = ug([("a", "b"), ("b", "c"), ("c", "a")])
        sub = g.subgraph(["c", "a"])
        assert sub.nodes == ("a", "c")
        assert sub.m == 1 and sub.has_edge("a", "c")

    def test_components(self):
        g = ug([("a", "b"), ("c", "d")], nodes=["a", "b", "c", "d", "e"])
        comps = g.components()
        assert sorted(sorted(c) for c in comps) == \
            [["a", "b"], ["c", "d"], ["e"]]

    def test_json_round_trip(self):
        g = ug([("b", "a"), ("b", "c")])
        again = UGraph.from_json(g.to_json())
        assert again.to_json() == g.to_json()
        norm = lambda es: {frozenset(e) for e in es}
        assert norm(again.edges()) == norm(g.edges())


class TestMoralize:
    def test_v_structure_marries_parents(self):
        dag = Dag("v", ("a", "b", "c"), (("a", "c"), ("b", "c")),
                  (("c", ("a", "b")),))
        g = moralize(dag)
        assert set(g.edges()) == {("a", "c"), ("b", "c"), ("a", "b")}

    def test_c17_eleven_eighteen(self, c17):
        _, dag, moral = c17
        assert moral.n == 11
        assert moral.m == 18
        assert moral_edge_count(dag) == 18

    def test_c432_table_counts(self, c432):
        _, dag, moral = c432
        assert moral.n == 196
        assert moral_edge_count(dag) == 660

    def test_edge_count_convention_counts_duplicate_marriages(self):
        # two gates marrying the same parent pair: the tally counts the
        # pair twice, the coalesced graph keeps one edge
        dag = Dag("d", ("a", "b", "x", "y"),
                  (("a", "x"), ("b", "x"), ("a", "y"), ("b", "y")),
                  (("x", ("a", "b")), ("y", ("a", "b"))))
        assert moralize(dag).m == 5
        assert moral_edge_count(dag) == 6


class TestTriangulate:
    def test_c4_gets_one_chord(self):
        g = ug([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
        filled, fill = triangulate(OrderedGraph(g, ("a", "b", "c", "d")))
        assert len(fill) == 1
        assert is_chordal(filled)

    def test_tree_needs_no_fill_when_leaves_go_late(self):
        # leaves are processed (eliminated) before their parents, which
        # means the root sits early in the ordering
        g = ug([("r", "x"), ("r", "y"), ("y", "z")])
        for order in (("r", "x", "y", "z"), ("r", "y", "z", "x")):
            _, fill = triangulate(OrderedGraph(g, order))
            assert fill == ()

    def test_star_center_last_fills_completely(self):
        g = ug([("r", "a"), ("r", "b"), ("r", "c")])
        _, fill = triangulate(OrderedGraph(g, ("a", "b", "c", "r")))
        assert {frozenset(e) for e in fill} == \
            {frozenset(p) for p in (("a", "b"), ("a", "c"), ("b", "c"))}

    def test_widths_against_oracle(self):
        rng = random.Random(3)
        for _ in range(40):
            og = oracles.random_graph(rng, rng.randrange(2, 8), 0.5)
            g = from_oracle(og)
            order = list(g.nodes)
            rng.shuffle(order)
            ordered = OrderedGraph(g, tuple(order))
            o_order = [int(v) for v in order]
            assert width_of_ordering(ordered) == \
                oracles.width_of(og, o_order)
            assert induced_width(ordered) == \
                oracles.induced_width(og, o_order)

    def test_ordered_graph_validates_permutation(self):
        g = ug([("a", "b")])
        with pytest.raises(GraphError):
            OrderedGraph(g, ("a",))
        with pytest.raises(GraphError):
            OrderedGraph(g, ("a", "a"))


class TestChordalForest:
    def test_is_chordal(self):
        assert is_chordal(ug([("a", "b"), ("b", "c"), ("c", "a")]))
        assert not is_chordal(
            ug([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]))

    def test_is_forest_with_removals(self):
        g = ug([("a", "b"), ("b", "c"), ("c", "a")])
        assert not is_forest(g)
        assert is_forest(g, without=("a",))


class TestCutsets:
    def test_heuristic_is_valid_and_minimal(self):
        rng = random.Random(5)
        for _ in range(60):
            og = oracles.random_graph(rng, rng.randrange(3, 10), 0.45)
            g = from_oracle(og)
            cut = cutset_heuristic(g)
            assert is_forest(g, without=cut)
            for v in cut:  # dropping any one member breaks it
                rest = tuple(u for u in cut if u != v)
                assert not is_forest(g, without=rest)

    def test_exact_matches_oracle(self):
        rng = random.Random(7)
        for _ in range(30):
            og = oracles.random_graph(rng, rng.randrange(2, 8), 0.5)
            g = from_oracle(og)
            assert len(cutset_exact(g)) == len(oracles.fvs_exact(og))

    def test_exact_known_graphs(self):
        assert cutset_exact(from_oracle(oracles.cycle_graph(5))) != ()
        assert len(cutset_exact(from_oracle(oracles.cycle_graph(5)))) == 1
        assert len(cutset_exact(from_oracle(oracles.complete_graph(5)))) == 3
        assert cutset_exact(ug([("a", "b")])) == ()

    def test_heuristic_never_beats_exact(self):
        rng = random.Random(11)
        for _ in range(40):
            og = oracles.random_graph(rng, rng.randrange(2, 9), 0.4)
            g = from_oracle(og)
            assert len(cutset_heuristic(g)) >= len(oracles.fvs_exact(og))

    def test_exact_refuses_big_graphs(self):
        big = from_oracle(oracles.cycle_graph(25))
        with pytest.raises(GraphError, match="limit"):
            cutset_exact(big, limit=20)


class TestTreewidthExact:
    def test_known_values(self):
        assert treewidth_exact(ug([("a", "b"), ("b", "c")])) == 1
        assert treewidth_exact(from_oracle(oracles.cycle_graph(6))) == 2
        assert treewidth_exact(from_oracle(oracles.complete_graph(5))) == 4
        assert treewidth_exact(UGraph(["solo"], [])) == 0

    def test_matches_permutation_oracle(self):
        rng = random.Random(13)
        for _ in range(25):
            og = oracles.random_graph(rng, rng.randrange(2, 7), 0.5)
            assert treewidth_exact(from_oracle(og)) == \
                oracles.treewidth_by_permutations(og)

    def test_refuses_big_graphs(self):
        with pytest.raises(GraphError, match="limit"):
            treewidth_exact(from_oracle(oracles.cycle_graph(12)), limit=10)
