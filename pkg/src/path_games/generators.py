"""Random instances for cross-checks and the ``generate`` command."""

import random
from fractions import Fraction

from path_games.game import Family, GameSpec, min_weight_winning_coalition
from path_games.graph import Graph, SPLeaf, SPParallel, SPSeries, SPTree, sp_expand


def random_rational(rng: random.Random, *, denominator: int = 8) -> Fraction:
    """A rational in ``[0, 1]`` with denominator dividing ``denominator``."""
    return Fraction(rng.randint(0, denominator), denominator)


def random_graph(
    rng: random.Random,
    *,
    vertices: int,
    edges: int,
    directed: bool = False,
    allow_terminal_edge: bool = True,
) -> Graph:
    """A random multigraph on ``vertices`` vertices with an s-t path (s = 0, t = ``vertices - 1``).

    A random s-t path through some internal vertices comes first; the remaining edges join random
    distinct vertices.
    """
    if vertices < (2 if allow_terminal_edge else 3):
        msg = f"too few vertices ({vertices}) for an s-t path"
        raise ValueError(msg)
    source, sink = 0, vertices - 1
    internal = list(range(1, sink))
    rng.shuffle(internal)
    lowest = 0 if allow_terminal_edge or not internal else 1
    stops = internal[: rng.randint(lowest, len(internal))] if internal else []
    route = [source, *stops, sink]
    pairs = list(zip(route, route[1:]))
    if edges < len(pairs):
        msg = f"{edges} edges cannot hold a path of length {len(pairs)}"
        raise ValueError(msg)

    while len(pairs) < edges:
        u, v = rng.sample(range(vertices), 2)
        if not allow_terminal_edge and {u, v} == {source, sink}:
            continue
        pairs.append((u, v))
    rng.shuffle(pairs)
    return Graph.from_edges(pairs, source=source, sink=sink, directed=directed, vertex_count=vertices)


def random_sp_tree(rng: random.Random, edges: int) -> SPTree:
    """A random decomposition tree with leaves ``0..edges-1``, source 0 and sink 1."""
    if edges < 1:
        msg = "a series-parallel graph needs at least one edge"
        raise ValueError(msg)
    next_edge = 0
    next_vertex = 2

    def build(count: int, source: int, sink: int) -> SPTree:
        nonlocal next_edge, next_vertex
        if count == 1:
            next_edge += 1
            return SPLeaf(next_edge - 1, source, sink)
        left = rng.randint(1, count - 1)
        if rng.random() < 0.5:
            middle = next_vertex
            next_vertex += 1
            return SPSeries(build(left, source, middle), build(count - left, middle, sink))
        return SPParallel(build(left, source, sink), build(count - left, source, sink))

    return build(edges, 0, 1)


def random_sp_graph(rng: random.Random, edges: int) -> Graph:
    return sp_expand(random_sp_tree(rng, edges))


def random_game(
    rng: random.Random,
    family: Family | str,
    graph: Graph,
    *,
    costly: bool = True,
    denominator: int = 8,
) -> GameSpec:
    """A game on ``graph`` with random costs in ``[0, 1]`` and a reward covering the cheapest winning coalition."""
    family = Family(family)
    costless = GameSpec(family, graph)
    if not costly:
        return costless

    costs = tuple(random_rational(rng, denominator=denominator) for _ in range(costless.n_players))
    cheapest = min_weight_winning_coalition(costless, costs)
    floor = cheapest.weight if cheapest is not None else Fraction(0)
    return GameSpec(family, graph, costs, floor + random_rational(rng, denominator=denominator))
