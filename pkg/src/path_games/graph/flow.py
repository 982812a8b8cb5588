import collections.abc
import typing as t
from collections import deque
from fractions import Fraction

from path_games.graph.model import Graph
from path_games.graph.paths import check_edge_weights
from path_games.graph.transform import split_vertices
from path_games.rational import INF, ExtRational, Infinity, ext_sum


class FlowResult(t.NamedTuple):
    value: ExtRational
    #: vertices reachable from the source in the final residual network
    source_side: frozenset[int]


class CutResult(t.NamedTuple):
    edges: frozenset[int]
    weight: ExtRational


class VertexCutResult(t.NamedTuple):
    vertices: frozenset[int]
    weight: ExtRational


class _Residual:
    """Residual network: arc ``2e`` runs along edge ``e``, arc ``2e + 1`` is its partner.

    A directed edge's partner starts at capacity 0; an undirected edge's partner starts at the
    edge's capacity, so the pair models one edge usable in either direction.
    """

    def __init__(self, g: Graph, capacities: collections.abc.Sequence[ExtRational]) -> None:
        self.head: list[int] = []
        self.capacity: list[ExtRational] = []
        self.arcs: list[list[int]] = [[] for _ in range(g.vertex_count)]
        for edge_id, (tail, head) in enumerate(g.edges):
            self.arcs[tail].append(2 * edge_id)
            self.arcs[head].append(2 * edge_id + 1)
            self.head.extend((head, tail))
            self.capacity.extend((capacities[edge_id], Fraction(0) if g.directed else capacities[edge_id]))

    def augmenting_path(self, source: int, sink: int) -> tuple[list[int] | None, frozenset[int]]:
        """Breadth-first search for a shortest augmenting path; also returns the visited set."""
        parent: dict[int, int] = {}
        seen = {source}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for arc in self.arcs[u]:
                v = self.head[arc]
                if v in seen or self.capacity[arc] == 0:
                    continue
                seen.add(v)
                parent[v] = arc
                if v == sink:
                    path = []
                    while v != source:
                        arc = parent[v]
                        path.append(arc)
                        v = self.head[arc ^ 1]
                    return path, frozenset(seen)
                queue.append(v)
        return None, frozenset(seen)

    def push(self, path: list[int], amount: Fraction) -> None:
        for arc in path:
            self.capacity[arc] = self.capacity[arc] - amount
            self.capacity[arc ^ 1] = self.capacity[arc ^ 1] + amount


def max_flow(g: Graph, capacities: collections.abc.Sequence[ExtRational]) -> FlowResult:
    """Maximum s-t flow by shortest augmenting paths (Edmonds-Karp).

    Terminates on rational capacities. If an augmenting path of +∞ arcs exists the flow value is
    +∞ and ``source_side`` contains the sink.
    """
    check_edge_weights(g, capacities)
    residual = _Residual(g, capacities)
    value = Fraction(0)
    while True:
        path, seen = residual.augmenting_path(g.source, g.sink)
        if path is None:
            return FlowResult(value, seen)
        bottleneck = min(residual.capacity[arc] for arc in path)
        if isinstance(bottleneck, Infinity):
            return FlowResult(INF, seen)
        residual.push(path, bottleneck)
        value += bottleneck


def min_edge_cut(g: Graph, weights: collections.abc.Sequence[ExtRational]) -> CutResult:
    """Minimum-weight edge s-t cut via maximum flow.

    The cut consists of the edges leaving the set of vertices reachable from the source in the
    final residual network (for undirected edges: edges with exactly one endpoint in that set).
    Without any s-t path the empty cut of weight 0 is returned; if every cut is infinite the full
    edge set is returned with weight +∞.
    """
    if not g.connects():
        return CutResult(frozenset(), Fraction(0))

    flow = max_flow(g, weights)
    if isinstance(flow.value, Infinity):
        return CutResult(frozenset(range(g.edge_count)), INF)

    side = flow.source_side
    cut = frozenset(
        edge_id
        for edge_id, (tail, head) in enumerate(g.edges)
        if (tail in side and head not in side) or (not g.directed and head in side and tail not in side)
    )
    return CutResult(cut, ext_sum(weights[e] for e in cut))


def min_vertex_cut(
    g: Graph,
    vertex_weights: collections.abc.Mapping[int, ExtRational],
) -> VertexCutResult | None:
    """Minimum-weight set of internal vertices whose removal disconnects s from t.

    Computed as :func:`min_edge_cut` on the vertex-split graph (original edges at +∞).

    Returns:
        The cut, or ``None`` when an edge joins s and t directly (no vertex cut exists)
    """
    if g.has_terminal_edge():
        return None

    split = split_vertices(g, vertex_weights)
    cut = min_edge_cut(split.graph, split.weights)
    owner = {edge_id: vertex for vertex, edge_id in split.internal_edge.items()}
    return VertexCutResult(frozenset(owner[e] for e in cut.edges if e in owner), cut.weight)
