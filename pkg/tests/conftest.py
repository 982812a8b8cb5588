import collections.abc
import itertools
import pathlib
import typing as t
from fractions import Fraction

import networkx as nx
import orjson
import pytest

from path_games.game import Coalition, Family, GameSpec, cost_value
from path_games.graph import Graph
from path_games.oracle import ValueTable
from path_games.solve import PayoffVector

# Vertex ids: s = 0, then internal vertices, t = last.


def build(edges: list[tuple[int, int]], *, directed: bool = False, names: tuple[str, ...] = ()) -> Graph:
    count = max(max(pair) for pair in edges) + 1
    return Graph(
        directed=directed,
        vertex_count=count,
        source=0,
        sink=count - 1,
        edges=tuple(edges),
        edge_names=names,
    )


@pytest.fixture
def single_edge() -> Graph:
    return build([(0, 1)])


@pytest.fixture
def parallel() -> Graph:
    """Two parallel s-t edges."""
    return build([(0, 1), (0, 1)])


@pytest.fixture
def series() -> Graph:
    """s - a - t."""
    return build([(0, 1), (1, 2)])


@pytest.fixture
def long_path() -> Graph:
    """s - a - b - t."""
    return build([(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def diamond() -> Graph:
    """s=0, a=1, b=2, t=3; edges sa, at, sb, bt."""
    return build([(0, 1), (1, 3), (0, 2), (2, 3)], names=("sa", "at", "sb", "bt"))


@pytest.fixture
def wheatstone() -> Graph:
    """The diamond plus the bridge a - b."""
    return build([(0, 1), (1, 3), (0, 2), (2, 3), (1, 2)])


@pytest.fixture
def edge_beside_path() -> Graph:
    """e0 = s-t in parallel with the path e1 = s-a, e2 = a-t (s=0, a=1, t=2)."""
    return Graph(directed=False, vertex_count=3, source=0, sink=2, edges=((0, 2), (0, 1), (1, 2)))


@pytest.fixture
def edge_before_pair() -> Graph:
    """e0 = s-a in series with the parallel pair e1, e2 = a-t."""
    return build([(0, 1), (1, 2), (1, 2)])


@pytest.fixture
def costly_parallel(parallel: Graph) -> GameSpec:
    """Two parallel edges with costs 1/4 and 1/2, reward 1."""
    return GameSpec(Family.EPCG, parallel, (Fraction(1, 4), Fraction(1, 2)), Fraction(1))


@pytest.fixture
def game_file(tmp_path: pathlib.Path) -> t.Callable[[dict[str, t.Any]], pathlib.Path]:
    """Write a game document to a temporary file."""
    counter = itertools.count()

    def write(document: dict[str, t.Any]) -> pathlib.Path:
        path = tmp_path / f"game-{next(counter)}.json"
        path.write_bytes(orjson.dumps(document))
        return path

    return write


def diamond_document(family: str = "epcg") -> dict[str, t.Any]:
    return {
        "vertices": ["s", "a", "b", "t"],
        "source": "s",
        "sink": "t",
        "edges": [
            {"id": 0, "tail": "s", "head": "a", "name": "sa"},
            {"id": 1, "tail": "a", "head": "t", "name": "at"},
            {"id": 2, "tail": "s", "head": "b", "name": "sb"},
            {"id": 3, "tail": "b", "head": "t", "name": "bt"},
        ],
        "family": family,
    }


def to_networkx(g: Graph, edges: t.Iterable[int] | None = None) -> t.Any:
    """The graph (optionally restricted to some edge ids) as a networkx multigraph."""
    result = nx.MultiDiGraph() if g.directed else nx.MultiGraph()
    result.add_nodes_from(range(g.vertex_count))
    kept = range(g.edge_count) if edges is None else edges
    result.add_edges_from((g.edges[e][0], g.edges[e][1], e, {}) for e in kept)
    return result


def simple_paths(g: Graph) -> list[tuple[int, ...]]:
    """Every simple s-t path as a tuple of edge ids."""
    multigraph = to_networkx(g)
    return [
        tuple(key for _, _, key in path)
        for path in nx.all_simple_edge_paths(multigraph, g.source, g.sink)
    ]


def min_cut_size(g: Graph) -> int:
    """Minimum s-t edge cut cardinality by exhaustive search."""
    for size in range(g.edge_count + 1):
        for removed in itertools.combinations(range(g.edge_count), size):
            kept = set(range(g.edge_count)) - set(removed)
            if not nx.has_path(to_networkx(g, kept), g.source, g.sink):
                return size
    msg = "source and sink cannot be separated"
    raise AssertionError(msg)


def min_vertex_cut_size(g: Graph) -> int:
    """Minimum s-t vertex cut cardinality by exhaustive search."""
    internal = g.internal_vertices
    for size in range(len(internal) + 1):
        for removed in itertools.combinations(internal, size):
            multigraph = to_networkx(g)
            multigraph.remove_nodes_from(removed)
            if not nx.has_path(multigraph, g.source, g.sink):
                return size
    msg = "source and sink cannot be separated by vertices"
    raise AssertionError(msg)


def min_cut_edges(g: Graph) -> set[int]:
    """Edges lying on at least one minimum s-t edge cut, by exhaustive search."""
    size = min_cut_size(g)
    covered: set[int] = set()
    for removed in itertools.combinations(range(g.edge_count), size):
        kept = set(range(g.edge_count)) - set(removed)
        if not nx.has_path(to_networkx(g, kept), g.source, g.sink):
            covered.update(removed)
    return covered


def unit_weights(count: int) -> tuple[Fraction, ...]:
    return (Fraction(1),) * count


def simple_table(n: int, winning: t.Callable[[int], bool]) -> ValueTable:
    """Table of a simple game given its winning predicate on bitmasks."""
    return ValueTable(n, tuple(Fraction(1) if mask and winning(mask) else Fraction(0) for mask in range(1 << n)))


def sorted_excesses(table: ValueTable, x: collections.abc.Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Excesses of all nonempty proper coalitions in ascending order."""
    return tuple(sorted(table.excess(x, mask) for mask in range(1, table.full)))


def coalition_excess(spec: GameSpec, x: PayoffVector, coalition: Coalition) -> Fraction:
    """``x(S) - v(S)``."""
    return x.coalition_total(coalition) - cost_value(spec, coalition)
