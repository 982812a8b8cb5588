import collections.abc
import typing as t

from path_games.graph.model import Graph
from path_games.rational import INF, ExtRational


class SplitGraph(t.NamedTuple):
    """A vertex-split graph together with the bookkeeping to map results back."""

    graph: Graph
    weights: tuple[ExtRational, ...]
    #: internal vertex of the original graph -> its internal (in -> out) edge
    internal_edge: collections.abc.Mapping[int, int]
    #: split-graph edge -> originating edge of the input graph (``None`` for internal edges)
    arc_origin: tuple[int | None, ...]


def split_vertices(
    g: Graph,
    vertex_weights: collections.abc.Mapping[int, ExtRational],
    *,
    original_weight: ExtRational = INF,
) -> SplitGraph:
    """Duplicate every internal vertex into an in-copy and an out-copy joined by an internal edge.

    The in-copy keeps the vertex id and receives all incoming edges; the out-copy gets a fresh id
    ``vertex_count + k`` and emits all outgoing edges. Internal edges carry the vertex weight;
    original edges carry ``original_weight`` (+∞ for cut computations, 0 for path computations).
    Undirected edges become two antiparallel arcs. The result is always directed.

    Args:
        g: The graph to split
        vertex_weights: A weight for every internal vertex
        original_weight: Weight assigned to every arc derived from an original edge

    Returns:
        The split graph, its edge weights and the id mappings
    """
    internal = g.internal_vertices
    missing = [v for v in internal if v not in vertex_weights]
    if missing:
        msg = f"vertex weights missing for internal vertices {missing}"
        raise ValueError(msg)

    out_copy = {v: g.vertex_count + k for k, v in enumerate(internal)}

    def tail_of(u: int) -> int:
        return out_copy.get(u, u)

    arcs: list[tuple[int, int]] = []
    weights: list[ExtRational] = []
    origin: list[int | None] = []
    for edge_id, (u, v) in enumerate(g.edges):
        arcs.append((tail_of(u), v))
        weights.append(original_weight)
        origin.append(edge_id)
        if not g.directed:
            arcs.append((tail_of(v), u))
            weights.append(original_weight)
            origin.append(edge_id)

    internal_edge: dict[int, int] = {}
    for v in internal:
        internal_edge[v] = len(arcs)
        arcs.append((v, out_copy[v]))
        weights.append(vertex_weights[v])
        origin.append(None)

    names = list(g.vertex_names)
    names.extend(f"{g.vertex_names[v]}_out" for v in internal)
    split = Graph(
        directed=True,
        vertex_count=g.vertex_count + len(internal),
        source=g.source,
        sink=g.sink,
        edges=tuple(arcs),
        vertex_names=tuple(names),
    )
    return SplitGraph(split, tuple(weights), internal_edge, tuple(origin))
