import random
from fractions import Fraction

import networkx as nx
import pytest
from conftest import min_cut_size, min_vertex_cut_size, simple_paths, to_networkx, unit_weights

from path_games.errors import GraphError, NotSeriesParallelError
from path_games.generators import random_graph, random_sp_tree
from path_games.graph import (
    Graph,
    SPLeaf,
    SPParallel,
    SPSeries,
    leaves,
    max_flow,
    min_edge_cut,
    min_vertex_cut,
    reverse,
    shortest_path,
    shortest_vertex_path,
    sp_decompose,
    sp_expand,
    split_vertices,
    st_path_edges,
)
from path_games.rational import INF

F = Fraction


def _pairs(g: Graph) -> list[frozenset[int]]:
    return [frozenset(pair) for pair in g.edges]


class TestGraph:
    def test_defaults_label_vertices_and_edges(self, diamond: Graph) -> None:
        """Vertices default to their id and edges to ``e<id>`` unless named."""
        assert diamond.vertex_names == ("0", "1", "2", "3")
        assert diamond.edge_names == ("sa", "at", "sb", "bt")
        assert Graph.from_edges([(0, 1)]).edge_names == ("e0",)

    def test_from_edges_infers_sink(self) -> None:
        """The sink defaults to the highest vertex id."""
        g = Graph.from_edges([(0, 2), (2, 5)])
        assert (g.vertex_count, g.source, g.sink) == (6, 0, 5)

    @pytest.mark.parametrize(
        ("kwargs", "message"),
        [
            ({"source": 0, "sink": 0, "edges": ((0, 1),)}, "differ"),
            ({"source": 0, "sink": 5, "edges": ((0, 1),)}, "not a vertex"),
            ({"source": 0, "sink": 1, "edges": ((0, 0),)}, "self-loop"),
            ({"source": 0, "sink": 1, "edges": ((0, 7),)}, "outside"),
        ],
    )
    def test_rejects_malformed_graphs(self, kwargs: dict[str, object], message: str) -> None:
        """Sources equal to sinks, unknown terminals, self-loops and stray endpoints are refused."""
        with pytest.raises(GraphError, match=message):
            Graph(directed=False, vertex_count=2, **kwargs)  # type: ignore[arg-type]

    def test_connectivity_restrictions(self, diamond: Graph) -> None:
        """Restricting to edges or vertices limits what the source reaches."""
        assert diamond.connects()
        assert diamond.connects(edges={0, 1})
        assert not diamond.connects(edges={0, 3})
        assert diamond.connects(vertices={2})
        assert not diamond.connects(vertices=set())

    def test_terminal_edges(self, parallel: Graph, diamond: Graph) -> None:
        """Only an edge leaving the source straight into the sink joins the terminals."""
        assert parallel.has_terminal_edge()
        assert not diamond.has_terminal_edge()
        directed = Graph(directed=True, vertex_count=2, source=0, sink=1, edges=((1, 0),))
        assert not directed.joins_terminals(0)


class TestShortestPath:
    def test_single_edge(self, single_edge: Graph) -> None:
        assert shortest_path(single_edge, [F(0)]) == ((0,), 0)

    def test_diamond(self, diamond: Graph) -> None:
        """The route through a is cheaper."""
        assert shortest_path(diamond, [F(1), F(2), F(2), F(2)]) == ((0, 1), 3)

    def test_infinite_edges_are_absent(self, diamond: Graph) -> None:
        """An edge of infinite weight behaves as if removed."""
        assert shortest_path(diamond, [INF, F(2), F(2), F(2)]) == ((2, 3), 4)

    def test_no_path(self, diamond: Graph) -> None:
        """Unreachable sinks give no path."""
        assert shortest_path(diamond, [INF, F(0), INF, F(0)]) is None
        split = Graph(directed=False, vertex_count=3, source=0, sink=2, edges=((0, 1),))
        assert shortest_path(split, [F(1)]) is None

    def test_ties_are_deterministic(self, diamond: Graph) -> None:
        """Equal routes resolve to the one with the smaller predecessor and edge id."""
        assert shortest_path(diamond, unit_weights(4)) == ((0, 1), 2)

    def test_rejects_negative_weights(self, diamond: Graph) -> None:
        """Dijkstra needs nonnegative weights."""
        with pytest.raises(ValueError, match="negative"):
            shortest_path(diamond, [F(-1), F(0), F(0), F(0)])

    def test_directed_edges_are_one_way(self) -> None:
        g = Graph(directed=True, vertex_count=3, source=0, sink=2, edges=((0, 1), (2, 1)))
        assert shortest_path(g, [F(1), F(1)]) is None

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_path_enumeration(self, seed: int) -> None:
        """The weight is the minimum over every simple path networkx enumerates."""
        rng = random.Random(seed)
        g = random_graph(rng, vertices=6, edges=9, directed=seed % 2 == 1)
        weights = [F(rng.randint(0, 9), rng.randint(1, 3)) for _ in range(g.edge_count)]
        result = shortest_path(g, weights)
        assert result is not None
        best = min(sum((weights[e] for e in path), F(0)) for path in simple_paths(g))
        assert result.weight == best
        assert sum((weights[e] for e in result.edges), F(0)) == best


class TestMinCut:
    def test_parallel(self, parallel: Graph) -> None:
        """Two parallel unit edges form the only cut."""
        assert min_edge_cut(parallel, unit_weights(2)) == ({0, 1}, 2)

    def test_unit_diamond(self, diamond: Graph) -> None:
        """Ties between the two unit cuts go to the source side."""
        cut = min_edge_cut(diamond, unit_weights(4))
        assert cut.weight == 2
        assert cut.edges == {0, 2}

    def test_weighted_diamond(self, diamond: Graph) -> None:
        assert min_edge_cut(diamond, [F(1), F(5), F(5), F(1)]) == ({0, 3}, 2)

    def test_infinite_cut(self, single_edge: Graph) -> None:
        """A cut through an infinite edge is infinite."""
        assert min_edge_cut(single_edge, [INF]) == ({0}, INF)

    def test_disconnected(self) -> None:
        """Already separated terminals need an empty cut of weight 0."""
        g = Graph(directed=False, vertex_count=3, source=0, sink=2, edges=((0, 1),))
        assert min_edge_cut(g, [F(1)]) == (frozenset(), 0)

    def test_max_flow_value(self, parallel: Graph) -> None:
        assert max_flow(parallel, [F(1, 2), F(1, 3)]).value == F(5, 6)

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_exhaustive_search(self, seed: int) -> None:
        """Unit-weight cut size equals the smallest disconnecting edge set, and the cut disconnects."""
        rng = random.Random(seed)
        g = random_graph(rng, vertices=5, edges=8, directed=seed % 2 == 1)
        cut = min_edge_cut(g, unit_weights(g.edge_count))
        assert cut.weight == min_cut_size(g) == len(cut.edges)
        kept = set(range(g.edge_count)) - cut.edges
        assert not nx.has_path(to_networkx(g, kept), g.source, g.sink)


class TestVertexSplitting:
    def test_split_diamond(self, diamond: Graph) -> None:
        """Only internal vertices are duplicated; original edges become +inf arcs."""
        split = split_vertices(diamond, {1: F(2), 2: F(3)})
        assert split.graph.directed
        assert split.graph.vertex_count == 6
        assert split.graph.edge_count == 2 * 4 + 2
        assert [split.weights[split.internal_edge[v]] for v in (1, 2)] == [2, 3]
        assert all(split.weights[e] is INF for e, origin in enumerate(split.arc_origin) if origin is not None)

    def test_split_without_internal_vertices(self, single_edge: Graph) -> None:
        """A graph with no internal vertex splits into its own two terminals."""
        split = split_vertices(single_edge, {})
        assert split.graph.vertex_count == 2
        assert split.internal_edge == {}
        assert split.arc_origin == (0, 0)

    def test_missing_weights(self, diamond: Graph) -> None:
        """Every internal vertex needs a weight."""
        with pytest.raises(ValueError, match="missing"):
            split_vertices(diamond, {1: F(1)})

    def test_cut_on_split_diamond(self, diamond: Graph) -> None:
        """The cheapest cut on the split graph crosses the internal arcs."""
        split = split_vertices(diamond, {1: F(2), 2: F(3)})
        cut = min_edge_cut(split.graph, split.weights)
        assert cut == ({split.internal_edge[1], split.internal_edge[2]}, 5)


class TestVertexPathsAndCuts:
    def test_shortest_vertex_path(self, diamond: Graph, single_edge: Graph, long_path: Graph) -> None:
        """Vertex paths are weighted by their internal vertices only."""
        assert shortest_vertex_path(diamond, {1: F(2), 2: F(3)}) == ((1,), 2)
        assert shortest_vertex_path(single_edge, {}) == ((), 0)
        assert shortest_vertex_path(long_path, {1: F(1), 2: F(1)}) == ((1, 2), 2)

    def test_min_vertex_cut(self, diamond: Graph, series: Graph, parallel: Graph) -> None:
        """A direct s-t edge cannot be cut by vertices."""
        assert min_vertex_cut(diamond, {1: F(2), 2: F(3)}) == ({1, 2}, 5)
        assert min_vertex_cut(series, {1: F(7)}) == ({1}, 7)
        assert min_vertex_cut(parallel, {}) is None

    @pytest.mark.parametrize("seed", range(15))
    def test_vertex_cut_matches_exhaustive_search(self, seed: int) -> None:
        """Unit vertex cuts are as small as any disconnecting vertex set."""
        rng = random.Random(seed)
        g = random_graph(rng, vertices=6, edges=8, directed=seed % 2 == 1, allow_terminal_edge=False)
        cut = min_vertex_cut(g, dict.fromkeys(g.internal_vertices, F(1)))
        assert cut is not None
        assert cut.weight == len(cut.vertices) == min_vertex_cut_size(g)


class TestSeriesParallel:
    def test_parallel(self, parallel: Graph) -> None:
        """Two parallel edges become one parallel node."""
        assert sp_decompose(parallel) == SPParallel(SPLeaf(0, 0, 1), SPLeaf(1, 0, 1))

    def test_diamond(self, diamond: Graph) -> None:
        """The diamond is a parallel node of two series branches."""
        assert sp_decompose(diamond) == SPParallel(
            SPSeries(SPLeaf(0, 0, 1), SPLeaf(1, 1, 3)),
            SPSeries(SPLeaf(2, 0, 2), SPLeaf(3, 2, 3)),
        )

    def test_wheatstone_is_not_series_parallel(self, wheatstone: Graph) -> None:
        """The bridge edge leaves an irreducible remnant as the witness."""
        with pytest.raises(NotSeriesParallelError) as excinfo:
            sp_decompose(wheatstone)
        assert excinfo.value.witness
        assert excinfo.value.to_dict()["code"] == "not_series_parallel"

    def test_directed_graphs_are_rejected(self) -> None:
        g = Graph(directed=True, vertex_count=2, source=0, sink=1, edges=((0, 1),))
        with pytest.raises(GraphError, match="undirected"):
            sp_decompose(g)

    def test_dangling_edges_are_pruned(self) -> None:
        """Edges on no simple s-t path (a pendant edge and a hanging cycle) leave the tree."""
        g = Graph(
            directed=False,
            vertex_count=6,
            source=0,
            sink=2,
            edges=((0, 1), (1, 2), (1, 3), (1, 4), (4, 5), (5, 1)),
        )
        assert st_path_edges(g) == {0, 1}
        assert sorted(leaf.edge for leaf in leaves(sp_decompose(g))) == [0, 1]

    def test_series_children_share_the_middle(self) -> None:
        """A series node's children must meet at a common middle vertex."""
        with pytest.raises(GraphError, match="middle"):
            SPSeries(SPLeaf(0, 0, 1), SPLeaf(1, 2, 3))

    def test_reverse_swaps_terminals(self, diamond: Graph) -> None:
        """Reversing a tree twice restores it."""
        tree = sp_decompose(diamond)
        flipped = reverse(tree)
        assert (flipped.source, flipped.sink) == (tree.sink, tree.source)
        assert reverse(flipped) == tree

    @pytest.mark.parametrize("seed", range(25))
    def test_expand_round_trip(self, seed: int) -> None:
        """Decomposing an expanded random tree reproduces the same graph."""
        rng = random.Random(seed)
        g = sp_expand(random_sp_tree(rng, rng.randint(1, 10)))
        tree = sp_decompose(g)
        assert sorted(leaf.edge for leaf in leaves(tree)) == list(range(g.edge_count))
        again = sp_expand(tree, vertex_count=g.vertex_count)
        assert _pairs(again) == _pairs(g)
        assert (again.source, again.sink) == (g.source, g.sink)
