"""JSON documents: game files, payoff and probability files, and command results.

Every rational crosses the boundary as an exact ``p/q`` string.
"""

import collections.abc
import typing as t
from fractions import Fraction

import orjson
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, ValidationError

from path_games.errors import GameFileError
from path_games.game import Coalition, Family, GameSpec
from path_games.graph import Graph
from path_games.rational import format_rational, parse_rational

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE


def _to_fraction(value: t.Any) -> t.Any:
    if isinstance(value, bool):
        msg = "booleans are not rationals"
        raise ValueError(msg)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    msg = f"expected a rational string such as '1/3', got {type(value).__name__}"
    raise ValueError(msg)


def _to_identifier(value: t.Any) -> t.Any:
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    return value


Rational = t.Annotated[
    Fraction,
    BeforeValidator(_to_fraction),
    PlainSerializer(format_rational, return_type=str),
]
Identifier = t.Annotated[str, BeforeValidator(_to_identifier)]


class Document(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, extra="forbid")


class EdgeDocument(Document):
    """Edge."""

    id: int = Field(description="Edge id; ids must be 0..|E|-1")
    tail: Identifier = Field(description="Tail vertex id")
    head: Identifier = Field(description="Head vertex id")
    cost: Rational = Field(default=Fraction(0), description="Cost of the edge player")
    name: str | None = Field(default=None, description="Player label (default e<id>)")


class GameDocument(Document):
    """Game file."""

    directed: bool = Field(default=False, description="Whether edges are directed")
    vertices: list[Identifier] = Field(description="Vertex ids")
    source: Identifier = Field(description="Source vertex id")
    sink: Identifier = Field(description="Sink vertex id")
    edges: list[EdgeDocument] = Field(description="Edges")
    vertex_costs: dict[Identifier, Rational] = Field(
        default_factory=dict,
        description="Cost of each internal vertex player",
    )
    reward: Rational = Field(default=Fraction(1), description="Reward of a winning coalition")
    family: Family = Field(description="Game family")


class PayoffDocument(Document):
    """Payoff file."""

    model_config = ConfigDict(extra="ignore")

    payoff: dict[Identifier, Rational] = Field(description="Payoff per player label")


def _load(text: str | bytes, what: str) -> t.Any:
    try:
        return orjson.loads(text)
    except orjson.JSONDecodeError as e:
        msg = f"{what} is not valid JSON: {e.msg} (line {e.lineno}, column {e.colno})"
        raise GameFileError(msg, reason="syntax", line=e.lineno, column=e.colno) from e


_ModelT = t.TypeVar("_ModelT", bound=BaseModel)


def _validate(model: type[_ModelT], data: t.Any, what: str) -> _ModelT:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        msg = f"{what} does not match the expected format: {e}"
        raise GameFileError(msg, reason="schema") from e


def parse_game_file(text: str | bytes) -> tuple[Graph, GameSpec]:
    """Parse a game document.

    Raises:
        GameFileError: On syntax errors (with line and column) and on unknown vertices, duplicate
            ids, non-contiguous edge ids, self-loops, missing terminals or negative costs
        InvalidGameError: If the game violates the simple-game axioms (for instance
            :class:`~path_games.errors.VpcgDirectEdgeError`)
    """
    document = _validate(GameDocument, _load(text, "game file"), "game file")

    if len(set(document.vertices)) != len(document.vertices):
        msg = "vertex ids must be unique"
        raise GameFileError(msg, reason="duplicate_id")
    index = {name: i for i, name in enumerate(document.vertices)}
    for role, vertex in (("source", document.source), ("sink", document.sink)):
        if vertex not in index:
            msg = f"{role} {vertex!r} is not a listed vertex"
            raise GameFileError(msg, reason="missing_terminal")
    if document.source == document.sink:
        msg = "source and sink must differ"
        raise GameFileError(msg, reason="missing_terminal")

    edges = sorted(document.edges, key=lambda edge: edge.id)
    ids = [edge.id for edge in edges]
    if len(set(ids)) != len(ids):
        msg = "edge ids must be unique"
        raise GameFileError(msg, reason="duplicate_id")
    if ids != list(range(len(ids))):
        msg = "edge ids must be 0..|E|-1"
        raise GameFileError(msg, reason="edge_ids")

    endpoints: list[tuple[int, int]] = []
    for edge in edges:
        for vertex in (edge.tail, edge.head):
            if vertex not in index:
                msg = f"edge {edge.id} refers to unknown vertex {vertex!r}"
                raise GameFileError(msg, reason="unknown_vertex")
        if edge.tail == edge.head:
            msg = f"edge {edge.id} is a self-loop"
            raise GameFileError(msg, reason="self_loop")
        endpoints.append((index[edge.tail], index[edge.head]))

    names = tuple(edge.name if edge.name is not None else f"e{edge.id}" for edge in edges)
    if len(set(names)) != len(names):
        msg = "edge names must be unique"
        raise GameFileError(msg, reason="duplicate_id")

    graph = Graph(
        directed=document.directed,
        vertex_count=len(document.vertices),
        source=index[document.source],
        sink=index[document.sink],
        edges=tuple(endpoints),
        vertex_names=tuple(document.vertices),
        edge_names=names,
    )

    if document.reward < 0 or any(edge.cost < 0 for edge in edges):
        msg = "costs and the reward must be nonnegative"
        raise GameFileError(msg, reason="negative_cost")
    for vertex, cost in document.vertex_costs.items():
        if vertex not in index or vertex in (document.source, document.sink):
            msg = f"vertex cost given for {vertex!r}, which is not an internal vertex"
            raise GameFileError(msg, reason="unknown_vertex")
        if cost < 0:
            msg = f"vertex {vertex!r} has a negative cost"
            raise GameFileError(msg, reason="negative_cost")

    if document.family.is_vertex_game:
        if any(edge.cost for edge in edges):
            msg = f"edge costs do not apply to the {document.family.value} family"
            raise GameFileError(msg, reason="unexpected_costs")
        costs = tuple(document.vertex_costs.get(graph.vertex_names[v], Fraction(0)) for v in graph.internal_vertices)
    else:
        if any(document.vertex_costs.values()):
            msg = f"vertex costs do not apply to the {document.family.value} family"
            raise GameFileError(msg, reason="unexpected_costs")
        costs = tuple(edge.cost for edge in edges)

    return graph, GameSpec(document.family, graph, costs, document.reward)


def game_document(spec: GameSpec) -> GameDocument:
    g = spec.graph
    names = g.vertex_names
    edge_costs = spec.costs if not spec.family.is_vertex_game else (Fraction(0),) * g.edge_count
    return GameDocument(
        directed=g.directed,
        vertices=list(names),
        source=names[g.source],
        sink=names[g.sink],
        edges=[
            EdgeDocument(
                id=e,
                tail=names[u],
                head=names[v],
                cost=edge_costs[e],
                name=None if g.edge_names[e] == f"e{e}" else g.edge_names[e],
            )
            for e, (u, v) in enumerate(g.edges)
        ],
        vertex_costs=(
            {label: cost for label, cost in zip(spec.player_labels, spec.costs) if cost}
            if spec.family.is_vertex_game
            else {}
        ),
        reward=spec.reward,
        family=spec.family,
    )


def dump_game(spec: GameSpec) -> bytes:
    """Serialize a game in the format :func:`parse_game_file` reads."""
    return dumps(game_document(spec).model_dump(mode="json", exclude_none=True))


def parse_payoff_file(text: str | bytes, spec: GameSpec) -> tuple[Fraction, ...]:
    """Parse ``{"payoff": {player label: rational}}``; every player must be listed.

    Other top-level keys are ignored, so command results carrying a payoff are accepted as is.
    """
    document = _validate(PayoffDocument, _load(text, "payoff file"), "payoff file")
    labels = spec.player_labels
    unknown = sorted(set(document.payoff) - set(labels))
    if unknown:
        msg = f"payoff names unknown players {unknown}"
        raise GameFileError(msg, reason="unknown_player")
    missing = [label for label in labels if label not in document.payoff]
    if missing:
        msg = f"payoff is missing players {missing}"
        raise GameFileError(msg, reason="missing_player")
    return tuple(document.payoff[label] for label in labels)


def parse_probabilities_file(text: str | bytes, graph: Graph, *, vertices: bool) -> dict[int, Fraction]:
    """Parse ``{edge-or-vertex id: rational}`` into detection probabilities keyed by graph id.

    Edges may be named by their label or their numeric id; vertices by their vertex id.
    """
    data = _load(text, "probability file")
    if not isinstance(data, collections.abc.Mapping):
        msg = "probability file must be an object"
        raise GameFileError(msg, reason="schema")

    if vertices:
        lookup = {name: v for v, name in enumerate(graph.vertex_names) if v in graph.internal_vertices}
    else:
        lookup = {name: e for e, name in enumerate(graph.edge_names)}
        lookup.update({str(e): e for e in range(graph.edge_count)})

    probabilities: dict[int, Fraction] = {}
    for key, value in data.items():
        if key not in lookup:
            msg = f"probability given for unknown {'vertex' if vertices else 'edge'} {key!r}"
            raise GameFileError(msg, reason="unknown_player")
        try:
            probabilities[lookup[key]] = _to_fraction(value)
        except ValueError as e:
            msg = f"probability of {key!r}: {e}"
            raise GameFileError(msg, reason="schema") from e
    return probabilities


def coalition_labels(spec: GameSpec, coalition: Coalition) -> list[str]:
    return [spec.player_labels[i] for i in coalition]


def dumps(data: t.Any) -> bytes:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    return orjson.dumps(data, option=JSON_OPTIONS)


class CoreDocument(Document):
    """Result of ``core``."""

    nonempty: bool = Field(description="Whether the core is nonempty")
    witness: str | None = Field(description="Lowest-id veto player")


class LeastCoreDocument(Document):
    """Result of ``leastcore``."""

    method: str = Field(description="Solver used")
    epsilon1: Rational = Field(description="Least-core value")
    min_excess: Rational = Field(description="Minimum excess of the payoff, -epsilon1")
    payoff: dict[str, Rational] = Field(description="Payoff per player label")
    tight_coalitions: list[list[str]] = Field(description="Generated coalitions active at the payoff")
    iterations: int = Field(description="Master programs solved")


class MembershipDocument(Document):
    """Result of ``verify``."""

    check: t.Literal["epsilon-core", "least-core"] = Field(description="Membership tested")
    member: bool = Field(description="Whether the payoff passes")
    epsilon: Rational = Field(description="Excess bound the payoff was checked against")
    min_excess: Rational = Field(description="Minimum excess of the payoff")
    witness: list[str] = Field(description="A coalition attaining the minimum excess")


class TraceStepDocument(Document):
    case: str = Field(description="Combination rule applied at the node")
    source: str = Field(description="Node source terminal")
    sink: str = Field(description="Node sink terminal")
    child_cuts: list[int] = Field(description="Minimum cut size per child")
    alpha: Rational | None = Field(description="Share of the left child")
    child_minima: list[Rational] = Field(description="Smallest nonzero payoff per child")
    cut: int = Field(description="Minimum cut size of the node")


class NucleolusDocument(Document):
    """Result of ``nucleolus``."""

    method: str = Field(description="Solver used")
    payoff: dict[str, Rational] = Field(description="Payoff per player label")
    min_cut: int | None = Field(description="Minimum s-t edge cut size (decomposition method)")
    trace: list[TraceStepDocument] | None = Field(description="Per-node record (decomposition method)")


class MaxminDocument(Document):
    """Result of ``maxmin``."""

    mode: str = Field(description="Inspected element kind")
    value: Rational = Field(description="Guaranteed interception probability")
    lp_value: Rational = Field(description="Optimum of the interception LP")
    strategy: dict[str, Rational] = Field(description="Inspection probability per edge or vertex")
    support: list[str] = Field(description="Minimum cut carrying the strategy")
    iterations: int = Field(description="Interception programs solved")


class ValueDocument(Document):
    """Result of ``value``."""

    coalition: list[str] = Field(description="Coalition members")
    winning: bool = Field(description="Whether the coalition wins the simple game")
    value: Rational = Field(description="Coalition value in the cost-based game")


class CheckDocument(Document):
    name: str = Field(description="Cross-check name")
    status: t.Literal["agree", "disagree", "skipped"] = Field(description="Outcome")
    detail: str | None = Field(default=None, description="Compared values or the reason for skipping")


class SelftestDocument(Document):
    """Result of ``selftest``."""

    agree: bool = Field(description="Whether no check disagreed")
    checks: list[CheckDocument] = Field(description="Individual cross-checks")
