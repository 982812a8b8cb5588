import collections.abc
import typing as t
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from path_games.errors import GraphError


@dataclass(frozen=True)
class Graph:
    """A directed or undirected multigraph with a distinguished source and sink.

    Vertices are ``0..vertex_count-1`` and edges ``0..len(edges)-1``; both id ranges are stable
    under every read-only operation in this package.
    """

    directed: bool
    vertex_count: int
    source: int
    sink: int
    edges: tuple[tuple[int, int], ...]
    vertex_names: tuple[str, ...] = field(default=(), compare=False)
    edge_names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.source == self.sink:
            msg = "source and sink must differ"
            raise GraphError(msg)

        for vertex in (self.source, self.sink):
            if not 0 <= vertex < self.vertex_count:
                msg = f"terminal {vertex} is not a vertex"
                raise GraphError(msg)

        for edge_id, (tail, head) in enumerate(self.edges):
            if not (0 <= tail < self.vertex_count and 0 <= head < self.vertex_count):
                msg = f"edge {edge_id} has an endpoint outside 0..{self.vertex_count - 1}"
                raise GraphError(msg)
            if tail == head:
                msg = f"edge {edge_id} is a self-loop"
                raise GraphError(msg)

        if not self.vertex_names:
            object.__setattr__(self, "vertex_names", tuple(str(v) for v in range(self.vertex_count)))
        if not self.edge_names:
            object.__setattr__(self, "edge_names", tuple(f"e{e}" for e in range(len(self.edges))))

        if len(self.vertex_names) != self.vertex_count or len(self.edge_names) != len(self.edges):
            msg = "vertex_names/edge_names must label every vertex/edge"
            raise GraphError(msg)

    @classmethod
    def from_edges(
        cls,
        edges: t.Iterable[tuple[int, int]],
        *,
        source: int = 0,
        sink: int | None = None,
        directed: bool = False,
        vertex_count: int | None = None,
    ) -> "Graph":
        """Build a graph from an edge list, inferring the vertex count and (by default) the sink.

        The sink defaults to the largest vertex id.
        """
        edge_tuple = tuple((int(u), int(v)) for u, v in edges)
        largest = max((max(pair) for pair in edge_tuple), default=source)
        count = vertex_count if vertex_count is not None else max(largest, source, sink or 0) + 1
        return cls(
            directed=directed,
            vertex_count=count,
            source=source,
            sink=count - 1 if sink is None else sink,
            edges=edge_tuple,
        )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def internal_vertices(self) -> tuple[int, ...]:
        """Every vertex except the source and the sink, in id order."""
        return tuple(v for v in range(self.vertex_count) if v not in (self.source, self.sink))

    @cached_property
    def out_arcs(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the ``(edge id, neighbor)`` pairs usable from it, in ascending edge id.

        Undirected edges are usable in both directions.
        """
        arcs: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for edge_id, (tail, head) in enumerate(self.edges):
            arcs[tail].append((edge_id, head))
            if not self.directed:
                arcs[head].append((edge_id, tail))
        return tuple(tuple(a) for a in arcs)

    def joins_terminals(self, edge_id: int) -> bool:
        """Whether the edge alone connects the source to the sink."""
        tail, head = self.edges[edge_id]
        if (tail, head) == (self.source, self.sink):
            return True
        return not self.directed and (head, tail) == (self.source, self.sink)

    def has_terminal_edge(self) -> bool:
        return any(self.joins_terminals(e) for e in range(self.edge_count))

    def reachable(
        self,
        *,
        edges: collections.abc.Container[int] | None = None,
        vertices: collections.abc.Container[int] | None = None,
    ) -> frozenset[int]:
        """Vertices reachable from the source, optionally restricted to some edges and vertices.

        The source is always reachable; a vertex restriction never removes the terminals.
        """
        seen = {self.source}
        queue = deque([self.source])
        while queue:
            u = queue.popleft()
            for edge_id, v in self.out_arcs[u]:
                if v in seen:
                    continue
                if edges is not None and edge_id not in edges:
                    continue
                if vertices is not None and v != self.sink and v not in vertices:
                    continue
                seen.add(v)
                queue.append(v)
        return frozenset(seen)

    def connects(
        self,
        *,
        edges: collections.abc.Container[int] | None = None,
        vertices: collections.abc.Container[int] | None = None,
    ) -> bool:
        """Whether an s-t path exists within the given restriction."""
        return self.sink in self.reachable(edges=edges, vertices=vertices)
