from path_games.graph.flow import CutResult, FlowResult, VertexCutResult, max_flow, min_edge_cut, min_vertex_cut
from path_games.graph.model import Graph
from path_games.graph.paths import PathResult, VertexPathResult, shortest_path, shortest_vertex_path
from path_games.graph.series_parallel import (
    SPLeaf,
    SPParallel,
    SPSeries,
    SPTree,
    leaves,
    reverse,
    sp_decompose,
    sp_expand,
    st_path_edges,
)
from path_games.graph.transform import SplitGraph, split_vertices

__all__ = [
    "CutResult",
    "FlowResult",
    "Graph",
    "PathResult",
    "SPLeaf",
    "SPParallel",
    "SPSeries",
    "SPTree",
    "SplitGraph",
    "VertexCutResult",
    "VertexPathResult",
    "leaves",
    "max_flow",
    "min_edge_cut",
    "min_vertex_cut",
    "reverse",
    "shortest_path",
    "shortest_vertex_path",
    "sp_decompose",
    "sp_expand",
    "split_vertices",
    "st_path_edges",
]
