"""Core, least core and maxmin interception for path coalitional games."""

import collections.abc
import enum
import typing as t
from dataclasses import dataclass
from fractions import Fraction

from path_games.config import Settings
from path_games.errors import (
    CrossCheckError,
    InvalidGameError,
    InvalidPayoffError,
    NotEfficientError,
    SolverError,
    UnsupportedGameError,
    VpcgDirectEdgeError,
)
from path_games.game import (
    Coalition,
    Family,
    GameSpec,
    cost_value,
    min_weight_winning_coalition,
)
from path_games.graph import Graph, min_edge_cut, min_vertex_cut, shortest_path, shortest_vertex_path
from path_games.logs import get_logger
from path_games.lp import Constraint, LinearProgram, Relation, Sense, solve_lp
from path_games.rational import Infinity

log = get_logger(__name__)

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class PayoffVector:
    """One finite payoff per player, in player order."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if any(isinstance(v, Infinity) for v in self.values):
            msg = "payoffs must be finite"
            raise InvalidPayoffError(msg)
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, index: int) -> Fraction:
        return self.values[index]

    def __iter__(self) -> t.Iterator[Fraction]:
        return iter(self.values)

    @property
    def total(self) -> Fraction:
        return sum(self.values, _ZERO)

    def coalition_total(self, coalition: Coalition) -> Fraction:
        """``x(S)``."""
        return sum((self.values[i] for i in coalition), _ZERO)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.values)


class LeastCoreResult(t.NamedTuple):
    epsilon1: Fraction
    payoff: PayoffVector
    #: generated coalitions whose least-core constraint is active at the payoff
    tight_coalitions: tuple[Coalition, ...]
    iterations: int

    @property
    def min_excess(self) -> Fraction:
        return -self.epsilon1


class CoreTest(t.NamedTuple):
    nonempty: bool
    #: a veto player (edge or vertex id) when the core is nonempty
    witness: int | None


class Feasible(t.NamedTuple):
    """No coalition has excess below ``-eps``; ``coalition`` attains the smallest winning excess."""

    coalition: Coalition
    excess: Fraction


class Violated(t.NamedTuple):
    coalition: Coalition
    excess: Fraction


SeparationResult: t.TypeAlias = Feasible | Violated


class ExcessWitness(t.NamedTuple):
    excess: Fraction
    coalition: Coalition


def _check_payoff(spec: GameSpec, x: PayoffVector) -> None:
    if len(x) != spec.n_players:
        msg = f"payoff has {len(x)} entries, the game has {spec.n_players} players"
        raise InvalidPayoffError(msg)
    if not x.is_nonnegative():
        msg = "payoffs must be nonnegative"
        raise InvalidPayoffError(msg)


def check_efficient(spec: GameSpec, x: PayoffVector) -> None:
    """Raise unless ``x`` is a nonnegative payoff distributing exactly ``v(N)``.

    Raises:
        InvalidPayoffError: If the vector has the wrong length or a negative entry
        NotEfficientError: If the payoffs do not sum to the grand coalition's value
    """
    _check_payoff(spec, x)
    if x.total != spec.grand_value:
        msg = f"payoffs sum to {x.total}, the grand coalition is worth {spec.grand_value}"
        raise NotEfficientError(msg)


def core_nonempty(spec: GameSpec) -> CoreTest:
    """Veto-player test on the underlying simple game (costs are ignored).

    The witness is the lowest-id veto player: an edge or internal vertex whose removal
    disconnects s from t (primal families), a direct s-t edge (edge dual) or a vertex adjacent
    to both terminals (vertex dual).
    """
    g = spec.graph
    if spec.family is Family.EPCG:
        everything = set(range(g.edge_count))
        witness = next((e for e in range(g.edge_count) if not g.connects(edges=everything - {e})), None)
    elif spec.family is Family.VPCG:
        internal = set(g.internal_vertices)
        witness = next((v for v in g.internal_vertices if not g.connects(vertices=internal - {v})), None)
    elif spec.family is Family.EPCG_D:
        witness = next((e for e in range(g.edge_count) if g.joins_terminals(e)), None)
    else:
        from_source = {v for _, v in g.out_arcs[g.source]}
        witness = next(
            (v for v in g.internal_vertices if v in from_source and any(w == g.sink for _, w in g.out_arcs[v])),
            None,
        )
    return CoreTest(witness is not None, witness)


def separation_oracle(spec: GameSpec, x: PayoffVector, eps: Fraction) -> SeparationResult:
    """Certify that no coalition has excess below ``-eps`` or return one that does.

    Only winning coalitions can violate: with ``x >= 0`` a losing coalition's excess is ``x(S) >= 0``.
    The cheapest winning coalition under ``x'_i = x_i + c_i`` has the smallest excess among
    winning coalitions, namely ``x'(S*) - r``.
    """
    _check_payoff(spec, x)
    weights = [xi + ci for xi, ci in zip(x, spec.costs)]
    cheapest = min_weight_winning_coalition(spec, weights)
    if cheapest is None:  # pragma: no cover - finite weights always admit a winning coalition
        msg = "no winning coalition under finite weights"
        raise SolverError(msg)
    excess = cheapest.weight - spec.reward
    if excess >= -eps:
        return Feasible(cheapest.coalition, excess)
    return Violated(cheapest.coalition, excess)


def minimum_excess(spec: GameSpec, x: PayoffVector) -> ExcessWitness:
    """The minimum of ``x(S) - v(S)`` over all coalitions and a coalition attaining it.

    The empty coalition has excess 0, so the result is never positive.
    """
    found = separation_oracle(spec, x, _ZERO)
    if found.excess >= 0:
        return ExcessWitness(_ZERO, Coalition())
    return ExcessWitness(found.excess, found.coalition)


def in_epsilon_core(spec: GameSpec, x: PayoffVector, eps: Fraction) -> bool:
    """Whether ``x`` is efficient with every excess at least ``-eps``.

    Raises:
        NotEfficientError: If ``x`` does not distribute exactly ``v(N)``
    """
    check_efficient(spec, x)
    return isinstance(separation_oracle(spec, x, eps), Feasible)


def _master_program(n: int, grand: Fraction, rows: collections.abc.Mapping[Coalition, Fraction]) -> LinearProgram:
    """Minimize eps subject to efficiency and ``x(S) + eps >= v(S)`` for the generated coalitions."""
    constraints = [Constraint((*([_ONE] * n), _ZERO), Relation.EQ, grand)]
    for coalition, value in rows.items():
        coefficients = [_ZERO] * n
        for i in coalition:
            coefficients[i] = _ONE
        constraints.append(Constraint((*coefficients, _ONE), Relation.GE, value))
    return LinearProgram(n + 1, (*([_ZERO] * n), _ONE), Sense.MIN, tuple(constraints))


def least_core(spec: GameSpec, *, settings: Settings | None = None) -> LeastCoreResult:
    """Least core by constraint generation.

    The master program starts from the singletons and the cheapest winning coalition on the raw
    costs; each round adds the coalition the separation oracle reports, until it certifies the
    master's optimum for every coalition.

    Raises:
        SolverError: If a master program is not optimal, the oracle repeats a coalition, or the
            iteration guard is hit
    """
    settings = settings or Settings()
    n = spec.n_players
    rows: dict[Coalition, Fraction] = {}
    for i in range(n):
        singleton = Coalition.of((i,))
        rows[singleton] = cost_value(spec, singleton)
    cheapest = min_weight_winning_coalition(spec, spec.costs)
    if cheapest is not None:
        rows.setdefault(cheapest.coalition, cost_value(spec, cheapest.coalition))

    for iteration in range(1, settings.max_iterations + 1):
        solution = solve_lp(_master_program(n, spec.grand_value, rows))
        if not solution.is_optimal:
            msg = f"least-core master program is {solution.status.value}"
            raise SolverError(msg)

        x = PayoffVector(solution.values[:n])
        eps = solution.values[n]
        found = separation_oracle(spec, x, eps)
        log.debug(
            "least_core.iteration",
            iteration=iteration,
            epsilon=str(eps),
            coalitions=len(rows),
            violated=isinstance(found, Violated),
        )
        if isinstance(found, Feasible):
            tight = tuple(sorted(s for s, value in rows.items() if x.coalition_total(s) - value == -eps))
            return LeastCoreResult(eps, x, tight, iteration)

        if found.coalition in rows:
            msg = f"separation oracle returned coalition {found.coalition.members()} already in the master"
            raise SolverError(msg)
        rows[found.coalition] = cost_value(spec, found.coalition)

    msg = f"least core did not converge within {settings.max_iterations} iterations"
    raise SolverError(msg)


def in_least_core(spec: GameSpec, x: PayoffVector, *, settings: Settings | None = None) -> bool:
    """Whether ``x`` is an efficient payoff whose minimum excess reaches ``-epsilon1``."""
    check_efficient(spec, x)
    epsilon1 = least_core(spec, settings=settings).epsilon1
    return minimum_excess(spec, x).excess >= -epsilon1


def combinatorial_least_core(spec: GameSpec) -> LeastCoreResult:
    """Least core of a costless primal game from a minimum-cardinality cut, without an LP.

    Every member of the cut ``C`` receives ``1/|C|``; every s-t path crosses the cut, so the
    minimum excess is ``1/|C| - 1``.

    Raises:
        UnsupportedGameError: For dual families or games with costs or a reward other than 1
    """
    if spec.family.is_dual:
        msg = f"the closed form covers edge and vertex path games, not {spec.family.value}"
        raise UnsupportedGameError(msg)
    if not spec.is_costless:
        msg = "the closed form needs zero costs and reward 1"
        raise UnsupportedGameError(msg)

    g = spec.graph
    if spec.family is Family.EPCG:
        members = sorted(min_edge_cut(g, [_ONE] * g.edge_count).edges)
    else:
        vertex_cut = min_vertex_cut(g, dict.fromkeys(g.internal_vertices, _ONE))
        if vertex_cut is None:  # pragma: no cover - vertex games never have a terminal edge
            msg = "vertex game without a vertex cut"
            raise SolverError(msg)
        members = sorted(vertex_cut.vertices)

    share = Fraction(1, len(members))
    cut = spec.coalition(members)
    payoff = PayoffVector(tuple(share if i in cut else _ZERO for i in range(spec.n_players)))
    tight = minimum_excess(spec, payoff)
    return LeastCoreResult(_ONE - share, payoff, (tight.coalition,), 0)


class InterceptMode(str, enum.Enum):
    EDGE = "edge"
    VERTEX = "vertex"


class MaxminResult(t.NamedTuple):
    value: Fraction
    #: inspected edges or internal vertices, in id order
    players: tuple[int, ...]
    #: inspection probability per entry of ``players``
    strategy: tuple[Fraction, ...]
    #: the minimum cut carrying the strategy
    support: tuple[int, ...]
    #: optimum of the interception LP, equal to ``value``
    lp_value: Fraction
    iterations: int


def _detection_probabilities(
    players: tuple[int, ...],
    probabilities: collections.abc.Mapping[int, Fraction] | None,
) -> dict[int, Fraction]:
    if probabilities is None:
        return dict.fromkeys(players, _ONE)
    missing = [p for p in players if p not in probabilities]
    if missing:
        msg = f"detection probabilities missing for {missing}"
        raise InvalidGameError(msg)
    p = {player: Fraction(probabilities[player]) for player in players}
    if any(not 0 < value <= 1 for value in p.values()):
        msg = "detection probabilities must lie in (0, 1]"
        raise InvalidGameError(msg)
    return p


def _cheapest_route(
    g: Graph,
    mode: InterceptMode,
    weights: collections.abc.Mapping[int, Fraction],
) -> tuple[tuple[int, ...], Fraction]:
    if mode is InterceptMode.EDGE:
        path = shortest_path(g, [weights[e] for e in range(g.edge_count)])
        route = None if path is None else (path.edges, path.weight)
    else:
        vertex_path = shortest_vertex_path(g, weights)
        route = None if vertex_path is None else (vertex_path.vertices, vertex_path.weight)
    if route is None:  # pragma: no cover - connectivity is checked up front
        msg = "no source-sink path"
        raise SolverError(msg)
    return route


def _interception_program(
    players: tuple[int, ...],
    p: collections.abc.Mapping[int, Fraction],
    routes: collections.abc.Iterable[tuple[int, ...]],
) -> LinearProgram:
    """Maximize alpha subject to ``sum x = 1`` and ``sum_{e in P} p_e x_e >= alpha`` per route."""
    n = len(players)
    index = {player: i for i, player in enumerate(players)}
    constraints = [Constraint((*([_ONE] * n), _ZERO), Relation.EQ, _ONE)]
    for route in routes:
        coefficients = [_ZERO] * n
        for player in route:
            coefficients[index[player]] += p[player]
        constraints.append(Constraint((*coefficients, -_ONE), Relation.GE, _ZERO))
    return LinearProgram(n + 1, (*([_ZERO] * n), _ONE), Sense.MAX, tuple(constraints))


def maxmin_intercept(
    g: Graph,
    mode: InterceptMode | str,
    probabilities: collections.abc.Mapping[int, Fraction] | None = None,
    *,
    settings: Settings | None = None,
) -> MaxminResult:
    """Maxmin inspection strategy of the path intercept game.

    Takes a minimum cut under weights ``1/p``, inspects its members with probability proportional
    to ``1/p`` and certifies the value against the interception LP, solved by generating paths
    with a shortest-path oracle on weights ``x * p``.

    Args:
        g: The network
        mode: Inspect edges or internal vertices
        probabilities: Detection probability per edge id / internal vertex id (default all 1)
        settings: Solver settings (iteration guard)

    Raises:
        InvalidGameError: On bad probabilities or a network without s-t path
        VpcgDirectEdgeError: In vertex mode on a network with a direct s-t edge
        CrossCheckError: If the cut construction and the LP disagree
    """
    settings = settings or Settings()
    mode = InterceptMode(mode)
    if not g.connects():
        msg = "the network has no source-sink path"
        raise InvalidGameError(msg)
    if mode is InterceptMode.VERTEX and g.has_terminal_edge():
        msg = "a direct source-sink edge cannot be intercepted at a vertex"
        raise VpcgDirectEdgeError(msg)

    players = tuple(range(g.edge_count)) if mode is InterceptMode.EDGE else g.internal_vertices
    p = _detection_probabilities(players, probabilities)
    inverse = {player: 1 / value for player, value in p.items()}

    if mode is InterceptMode.EDGE:
        support = tuple(sorted(min_edge_cut(g, [inverse[e] for e in players]).edges))
    else:
        vertex_cut = min_vertex_cut(g, inverse)
        if vertex_cut is None:  # pragma: no cover - guarded above
            msg = "no vertex cut"
            raise SolverError(msg)
        support = tuple(sorted(vertex_cut.vertices))

    total = sum((inverse[player] for player in support), _ZERO)
    strategy = tuple(inverse[player] / total if player in support else _ZERO for player in players)
    value = 1 / total
    log.debug("maxmin.cut", mode=mode.value, support=list(support), value=str(value))

    routes: dict[tuple[int, ...], None] = {_cheapest_route(g, mode, p)[0]: None}
    for iteration in range(1, settings.max_iterations + 1):
        solution = solve_lp(_interception_program(players, p, routes))
        if not solution.is_optimal:
            msg = f"interception program is {solution.status.value}"
            raise SolverError(msg)

        x = solution.values[: len(players)]
        alpha = solution.values[len(players)]
        route, detection = _cheapest_route(g, mode, {pl: xi * p[pl] for pl, xi in zip(players, x)})
        log.debug("maxmin.iteration", iteration=iteration, alpha=str(alpha), routes=len(routes))
        if detection >= alpha:
            break
        if route in routes:
            msg = f"path oracle returned route {list(route)} already in the program"
            raise SolverError(msg)
        routes[route] = None
    else:
        msg = f"interception LP did not converge within {settings.max_iterations} iterations"
        raise SolverError(msg)

    if alpha != value:
        msg = f"cut construction gives {value}, the interception LP gives {alpha}"
        raise CrossCheckError(msg)
    return MaxminResult(value, players, strategy, support, alpha, iteration)


def path_detection(
    g: Graph,
    mode: InterceptMode | str,
    result: MaxminResult,
    probabilities: collections.abc.Mapping[int, Fraction] | None = None,
) -> Fraction:
    """Smallest detection probability ``sum x_e p_e`` over all s-t paths under ``result``'s strategy."""
    mode = InterceptMode(mode)
    p = _detection_probabilities(result.players, probabilities)
    weights = {player: x * p[player] for player, x in zip(result.players, result.strategy)}
    return _cheapest_route(g, mode, weights)[1]
