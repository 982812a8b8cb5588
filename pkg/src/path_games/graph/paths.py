import collections.abc
import heapq
import typing as t
from fractions import Fraction

from path_games.graph.model import Graph
from path_games.graph.transform import split_vertices
from path_games.rational import ExtRational, Infinity


class PathResult(t.NamedTuple):
    edges: tuple[int, ...]
    weight: Fraction


class VertexPathResult(t.NamedTuple):
    #: internal vertices of the path, in order from source to sink
    vertices: tuple[int, ...]
    weight: Fraction


def check_edge_weights(g: Graph, weights: collections.abc.Sequence[ExtRational]) -> None:
    if len(weights) != g.edge_count:
        msg = f"expected {g.edge_count} edge weights, got {len(weights)}"
        raise ValueError(msg)
    for edge_id, weight in enumerate(weights):
        if weight < 0:
            msg = f"edge {edge_id} has negative weight {weight}"
            raise ValueError(msg)


def shortest_path(g: Graph, weights: collections.abc.Sequence[ExtRational]) -> PathResult | None:
    """Minimum-weight simple s-t path (Dijkstra).

    Edges of weight +∞ are treated as absent. Edges are relaxed in ascending id order and, among
    equally short routes into an unsettled vertex, the lexicographically smallest
    ``(predecessor vertex, edge id)`` wins, so equal inputs give equal paths.

    Returns:
        The path's edge ids from source to sink and its weight, or ``None`` if no s-t path exists
        through finite-weight edges
    """
    check_edge_weights(g, weights)

    dist: dict[int, Fraction] = {g.source: Fraction(0)}
    pred: dict[int, tuple[int, int]] = {}
    settled: set[int] = set()
    heap: list[tuple[Fraction, int]] = [(Fraction(0), g.source)]

    while heap:
        d, u = heapq.heappop(heap)
        if u in settled:
            continue
        settled.add(u)
        if u == g.sink:
            break

        for edge_id, v in g.out_arcs[u]:
            weight = weights[edge_id]
            if v in settled or isinstance(weight, Infinity):
                continue
            candidate = d + weight
            via = (u, edge_id)
            if v not in dist or candidate < dist[v]:
                dist[v] = candidate
                pred[v] = via
                heapq.heappush(heap, (candidate, v))
            elif candidate == dist[v] and via < pred[v]:
                pred[v] = via

    if g.sink not in settled:
        return None

    path: list[int] = []
    v = g.sink
    while v != g.source:
        u, edge_id = pred[v]
        path.append(edge_id)
        v = u
    path.reverse()
    return PathResult(tuple(path), dist[g.sink])


def shortest_vertex_path(
    g: Graph,
    vertex_weights: collections.abc.Mapping[int, ExtRational],
) -> VertexPathResult | None:
    """Simple s-t path minimizing the total weight of its internal vertices.

    Reduces to :func:`shortest_path` on the vertex-split graph where original edges weigh 0 and
    each internal edge carries its vertex's weight.
    """
    split = split_vertices(g, vertex_weights, original_weight=Fraction(0))
    result = shortest_path(split.graph, split.weights)
    if result is None:
        return None

    owner = {edge_id: vertex for vertex, edge_id in split.internal_edge.items()}
    vertices = tuple(owner[e] for e in result.edges if e in owner)
    return VertexPathResult(vertices, result.weight)
