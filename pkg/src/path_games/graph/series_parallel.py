"""Two-terminal series-parallel recognition and decomposition by reduction."""

import typing as t
from dataclasses import dataclass
from typing import TypeAlias

from path_games.errors import GraphError, NotSeriesParallelError
from path_games.graph.model import Graph


@dataclass(frozen=True)
class SPLeaf:
    edge: int
    source: int
    sink: int


@dataclass(frozen=True)
class SPSeries:
    left: "SPTree"
    right: "SPTree"

    def __post_init__(self) -> None:
        if self.left.sink != self.right.source:
            msg = "series children must share the middle terminal"
            raise GraphError(msg)

    @property
    def source(self) -> int:
        return self.left.source

    @property
    def sink(self) -> int:
        return self.right.sink


@dataclass(frozen=True)
class SPParallel:
    left: "SPTree"
    right: "SPTree"

    def __post_init__(self) -> None:
        if (self.left.source, self.left.sink) != (self.right.source, self.right.sink):
            msg = "parallel children must share both terminals"
            raise GraphError(msg)

    @property
    def source(self) -> int:
        return self.left.source

    @property
    def sink(self) -> int:
        return self.left.sink


SPTree: TypeAlias = SPLeaf | SPSeries | SPParallel


def reverse(tree: SPTree) -> SPTree:
    """The same tree with source and sink swapped."""
    if isinstance(tree, SPLeaf):
        return SPLeaf(tree.edge, tree.sink, tree.source)
    if isinstance(tree, SPSeries):
        return SPSeries(reverse(tree.right), reverse(tree.left))
    return SPParallel(reverse(tree.left), reverse(tree.right))


def leaves(tree: SPTree) -> t.Iterator[SPLeaf]:
    """Leaves from left to right."""
    stack: list[SPTree] = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, SPLeaf):
            yield node
        else:
            stack.extend((node.right, node.left))


def st_path_edges(g: Graph) -> frozenset[int]:
    """Edges of an undirected graph lying on at least one simple s-t path.

    These are the edges sharing a biconnected component with a virtual s-t edge.
    """
    virtual = g.edge_count
    incident: list[list[tuple[int, int]]] = [[] for _ in range(g.vertex_count)]
    for edge_id, (u, v) in enumerate((*g.edges, (g.source, g.sink))):
        incident[u].append((edge_id, v))
        incident[v].append((edge_id, u))

    disc = [-1] * g.vertex_count
    low = [0] * g.vertex_count
    disc[g.source] = low[g.source] = 0
    timer = 1
    edge_stack: list[int] = []
    frames: list[tuple[int, int, t.Iterator[tuple[int, int]]]] = [(g.source, -1, iter(incident[g.source]))]

    while frames:
        v, parent_edge, neighbors = frames[-1]
        descended = False
        for edge_id, w in neighbors:
            if edge_id == parent_edge:
                continue
            if disc[w] == -1:
                edge_stack.append(edge_id)
                disc[w] = low[w] = timer
                timer += 1
                frames.append((w, edge_id, iter(incident[w])))
                descended = True
                break
            if disc[w] < disc[v]:
                edge_stack.append(edge_id)
                low[v] = min(low[v], disc[w])
        if descended:
            continue

        frames.pop()
        if not frames:
            break
        u = frames[-1][0]
        low[u] = min(low[u], low[v])
        if low[v] >= disc[u]:
            block: set[int] = set()
            while True:
                edge_id = edge_stack.pop()
                block.add(edge_id)
                if edge_id == parent_edge:
                    break
            if virtual in block:
                return frozenset(block - {virtual})

    return frozenset()


def sp_decompose(g: Graph) -> SPTree:
    """Decompose an undirected two-terminal series-parallel graph.

    Edges on no simple s-t path are pruned first; the tree's leaves are the remaining edges.
    Reductions are applied deterministically: parallel merges before series merges, lowest
    endpoints / vertex first. Within a composite node the child holding the smaller edge id goes
    left, and the final tree is oriented from ``g.source`` to ``g.sink`` (series children are then
    ordered from the source side).

    Raises:
        GraphError: If the graph is directed or s and t are disconnected
        NotSeriesParallelError: If the reductions get stuck; the witness lists the endpoints of
            the remaining composite edges
    """
    if g.directed:
        msg = "series-parallel decomposition needs an undirected graph"
        raise GraphError(msg)

    kept = st_path_edges(g)
    if not kept:
        msg = "source and sink are not connected"
        raise GraphError(msg)

    live: dict[int, SPTree] = {e: SPLeaf(e, *g.edges[e]) for e in sorted(kept)}
    terminals = (g.source, g.sink)

    while True:
        if _merge_parallel(live) or _merge_series(live, terminals):
            continue
        break

    if len(live) == 1:
        (tree,) = live.values()
        if (tree.source, tree.sink) == terminals:
            return tree
        if (tree.sink, tree.source) == terminals:
            return reverse(tree)

    witness = tuple(sorted((min(x.source, x.sink), max(x.source, x.sink)) for x in live.values()))
    msg = f"graph is not series-parallel; irreducible remnant has {len(live)} composite edges"
    raise NotSeriesParallelError(msg, witness=witness)


def _merge_parallel(live: dict[int, SPTree]) -> bool:
    by_pair: dict[tuple[int, int], list[int]] = {}
    for key, tree in live.items():
        pair = (min(tree.source, tree.sink), max(tree.source, tree.sink))
        by_pair.setdefault(pair, []).append(key)

    for pair in sorted(by_pair):
        keys = sorted(by_pair[pair])
        if len(keys) < 2:
            continue
        left, right = live.pop(keys[0]), live.pop(keys[1])
        if (right.source, right.sink) != (left.source, left.sink):
            right = reverse(right)
        live[keys[0]] = SPParallel(left, right)
        return True
    return False


def _merge_series(live: dict[int, SPTree], terminals: tuple[int, int]) -> bool:
    incident: dict[int, list[int]] = {}
    for key, tree in live.items():
        incident.setdefault(tree.source, []).append(key)
        incident.setdefault(tree.sink, []).append(key)

    for vertex in sorted(incident):
        keys = sorted(incident[vertex])
        if vertex in terminals or len(keys) != 2:
            continue
        first, second = live.pop(keys[0]), live.pop(keys[1])
        if first.sink != vertex:
            first = reverse(first)
        if second.source != vertex:
            second = reverse(second)
        live[keys[0]] = SPSeries(first, second)
        return True
    return False


def sp_expand(tree: SPTree, *, vertex_count: int | None = None) -> Graph:
    """Rebuild the undirected graph described by a tree whose leaves are edges ``0..k-1``."""
    by_edge = {leaf.edge: (leaf.source, leaf.sink) for leaf in leaves(tree)}
    if sorted(by_edge) != list(range(len(by_edge))):
        msg = "leaves must be labelled 0..k-1 to expand"
        raise GraphError(msg)

    edges = tuple(by_edge[e] for e in range(len(by_edge)))
    largest = max(max(pair) for pair in edges)
    return Graph(
        directed=False,
        vertex_count=vertex_count if vertex_count is not None else largest + 1,
        source=tree.source,
        sink=tree.sink,
        edges=edges,
    )
