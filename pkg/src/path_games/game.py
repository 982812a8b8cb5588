"""The four path coalitional game families and their cost-based generalization."""

import collections.abc
import dataclasses
import enum
import sys
import typing as t
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from path_games.errors import InvalidGameError, NegativeGrandValueError, VpcgDirectEdgeError
from path_games.graph import Graph, min_edge_cut, min_vertex_cut, shortest_path, shortest_vertex_path
from path_games.rational import INF, ExtRational, Infinity

if sys.version_info >= (3, 11):
    from typing import Self
else:
    from typing_extensions import Self


class Family(str, enum.Enum):
    """Game family. Edge families have the edges as players, vertex families the internal vertices."""

    EPCG = "epcg"
    VPCG = "vpcg"
    EPCG_D = "epcg-dual"
    VPCG_D = "vpcg-dual"

    @property
    def is_dual(self) -> bool:
        return self in (Family.EPCG_D, Family.VPCG_D)

    @property
    def is_vertex_game(self) -> bool:
        return self in (Family.VPCG, Family.VPCG_D)

    @property
    def dual(self) -> "Family":
        return _DUALS[self]


_DUALS = {
    Family.EPCG: Family.EPCG_D,
    Family.EPCG_D: Family.EPCG,
    Family.VPCG: Family.VPCG_D,
    Family.VPCG_D: Family.VPCG,
}


@dataclass(frozen=True, order=True)
class Coalition:
    """A set of player indices stored as a bitmask (bit ``i`` is the ``i``-th player)."""

    mask: int = 0

    @classmethod
    def of(cls, indices: t.Iterable[int]) -> Self:
        mask = 0
        for i in indices:
            mask |= 1 << i
        return cls(mask)

    @classmethod
    def full(cls, n: int) -> Self:
        return cls((1 << n) - 1)

    def members(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.mask.bit_length()) if self.mask >> i & 1)

    def complement(self, n: int) -> "Coalition":
        return Coalition(((1 << n) - 1) & ~self.mask)

    def issubset(self, other: "Coalition") -> bool:
        return self.mask & ~other.mask == 0

    def __contains__(self, index: object) -> bool:
        return isinstance(index, int) and index >= 0 and bool(self.mask >> index & 1)

    def __iter__(self) -> t.Iterator[int]:
        return iter(self.members())

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __or__(self, other: "Coalition") -> "Coalition":
        return Coalition(self.mask | other.mask)

    def __and__(self, other: "Coalition") -> "Coalition":
        return Coalition(self.mask & other.mask)

    def __sub__(self, other: "Coalition") -> "Coalition":
        return Coalition(self.mask & ~other.mask)


class WinningCoalition(t.NamedTuple):
    coalition: Coalition
    weight: Fraction


@dataclass(frozen=True)
class GameSpec:
    """A (cost-based) path coalitional game.

    ``costs[i]`` belongs to the ``i``-th player of :attr:`players`. With all costs 0 and reward 1
    every coalition value equals the underlying simple game's value.

    Raises:
        InvalidGameError: If the simple-game axioms cannot hold (no s-t path, bad costs)
        VpcgDirectEdgeError: If a vertex family's graph joins s and t directly
        NegativeGrandValueError: If the cheapest winning coalition costs more than the reward
    """

    family: Family
    graph: Graph
    costs: tuple[Fraction, ...] = ()
    reward: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        if not self.costs:
            object.__setattr__(self, "costs", (Fraction(0),) * self.n_players)
        object.__setattr__(self, "costs", tuple(Fraction(c) for c in self.costs))
        object.__setattr__(self, "reward", Fraction(self.reward))

        if len(self.costs) != self.n_players:
            msg = f"expected {self.n_players} costs, got {len(self.costs)}"
            raise InvalidGameError(msg)
        if any(c < 0 for c in self.costs):
            msg = "costs must be nonnegative"
            raise InvalidGameError(msg)
        if self.reward < 0:
            msg = "reward must be nonnegative"
            raise InvalidGameError(msg)
        if self.family.is_vertex_game and self.graph.has_terminal_edge():
            msg = "vertex games cannot have a direct (source, sink) edge: the empty coalition would win"
            raise VpcgDirectEdgeError(msg)
        if not self.graph.connects():
            msg = "the graph has no source-sink path, so the grand coalition loses"
            raise InvalidGameError(msg)
        if self.grand_value < 0:
            msg = f"cheapest winning coalition costs more than the reward (grand value {self.grand_value})"
            raise NegativeGrandValueError(msg)

    @classmethod
    def costless(cls, family: Family | str, graph: Graph) -> Self:
        return cls(Family(family), graph)

    @cached_property
    def players(self) -> tuple[int, ...]:
        """Edge ids (edge families) or internal vertex ids (vertex families), in id order."""
        if self.family.is_vertex_game:
            return self.graph.internal_vertices
        return tuple(range(self.graph.edge_count))

    @property
    def n_players(self) -> int:
        return len(self.players)

    @cached_property
    def index_of(self) -> dict[int, int]:
        """Player (edge or vertex id) -> player index."""
        return {player: i for i, player in enumerate(self.players)}

    @cached_property
    def player_labels(self) -> tuple[str, ...]:
        names = self.graph.vertex_names if self.family.is_vertex_game else self.graph.edge_names
        return tuple(names[p] for p in self.players)

    @property
    def grand_coalition(self) -> Coalition:
        return Coalition.full(self.n_players)

    @property
    def is_costless(self) -> bool:
        return self.reward == 1 and not any(self.costs)

    @cached_property
    def grand_value(self) -> Fraction:
        """``r`` minus the cost of the cheapest winning coalition."""
        cheapest = min_weight_winning_coalition(self, self.costs)
        if cheapest is None:  # pragma: no cover - guarded by the connectivity check
            msg = "no winning coalition"
            raise InvalidGameError(msg)
        return self.reward - cheapest.weight

    def coalition(self, players: t.Iterable[int]) -> Coalition:
        """Coalition from player ids (edge or vertex ids)."""
        return Coalition.of(self.index_of[p] for p in players)


WinningOracle: t.TypeAlias = collections.abc.Callable[
    [GameSpec, collections.abc.Sequence[ExtRational]],
    WinningCoalition | None,
]

_ORACLES: dict[Family, WinningOracle] = {}


def register_oracle(family: Family) -> collections.abc.Callable[[WinningOracle], WinningOracle]:
    """Register the minimum-weight winning coalition oracle of a game family."""

    def decorator(oracle: WinningOracle) -> WinningOracle:
        _ORACLES[family] = oracle
        return oracle

    return decorator


def min_weight_winning_coalition(
    spec: GameSpec,
    weights: collections.abc.Sequence[ExtRational],
) -> WinningCoalition | None:
    """A winning coalition of minimum total weight.

    Players of weight +∞ are excluded, which is how the game is restricted to a coalition.

    Returns:
        The coalition and its weight, or ``None`` if every winning coalition has infinite weight
    """
    if len(weights) != spec.n_players:
        msg = f"expected {spec.n_players} player weights, got {len(weights)}"
        raise ValueError(msg)
    return _ORACLES[spec.family](spec, weights)


def _finite(weight: ExtRational) -> Fraction | None:
    return None if isinstance(weight, Infinity) else weight


@register_oracle(Family.EPCG)
def _cheapest_path(spec: GameSpec, weights: collections.abc.Sequence[ExtRational]) -> WinningCoalition | None:
    path = shortest_path(spec.graph, weights)
    if path is None:
        return None
    return WinningCoalition(Coalition.of(path.edges), path.weight)


@register_oracle(Family.VPCG)
def _cheapest_vertex_path(
    spec: GameSpec,
    weights: collections.abc.Sequence[ExtRational],
) -> WinningCoalition | None:
    path = shortest_vertex_path(spec.graph, dict(zip(spec.players, weights)))
    if path is None:
        return None
    return WinningCoalition(spec.coalition(path.vertices), path.weight)


@register_oracle(Family.EPCG_D)
def _cheapest_edge_cut(spec: GameSpec, weights: collections.abc.Sequence[ExtRational]) -> WinningCoalition | None:
    cut = min_edge_cut(spec.graph, weights)
    weight = _finite(cut.weight)
    if weight is None:
        return None
    return WinningCoalition(Coalition.of(cut.edges), weight)


@register_oracle(Family.VPCG_D)
def _cheapest_vertex_cut(
    spec: GameSpec,
    weights: collections.abc.Sequence[ExtRational],
) -> WinningCoalition | None:
    cut = min_vertex_cut(spec.graph, dict(zip(spec.players, weights)))
    if cut is None:
        return None
    weight = _finite(cut.weight)
    if weight is None:
        return None
    return WinningCoalition(spec.coalition(cut.vertices), weight)


def _primal_wins(spec: GameSpec, coalition: Coalition) -> bool:
    members = {spec.players[i] for i in coalition}
    if spec.family.is_vertex_game:
        return spec.graph.connects(vertices=members)
    return spec.graph.connects(edges=members)


def simple_value(spec: GameSpec, coalition: Coalition) -> int:
    """Value of the coalition in the underlying simple game (0 or 1).

    Duals use ``v(N) - v(N \\ S)`` of the primal family.
    """
    if spec.family.is_dual:
        return 1 - int(_primal_wins(spec, coalition.complement(spec.n_players)))
    return int(_primal_wins(spec, coalition))


def cost_value(spec: GameSpec, coalition: Coalition) -> Fraction:
    """Value in the cost-based game: 0 if losing, else ``r`` minus the cheapest winning sub-coalition.

    Winning sub-coalitions may cost more than ``r``; the value is then negative.
    """
    if not simple_value(spec, coalition):
        return Fraction(0)

    restricted = [cost if i in coalition else INF for i, cost in enumerate(spec.costs)]
    cheapest = min_weight_winning_coalition(spec, restricted)
    if cheapest is None:  # pragma: no cover - a winning coalition always contains a finite one
        msg = f"no winning sub-coalition found inside winning coalition {coalition.members()}"
        raise InvalidGameError(msg)
    return spec.reward - cheapest.weight


def grand_value(spec: GameSpec) -> Fraction:
    return spec.grand_value


def dual_family(spec: GameSpec) -> GameSpec:
    """The same graph, costs and reward under the dual family (EPCG <-> EPCG_D, VPCG <-> VPCG_D)."""
    return dataclasses.replace(spec, family=spec.family.dual)

