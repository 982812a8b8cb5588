"""The ``path-games`` command line.

Every command prints one JSON document on stdout. Exit codes: 0 on success, 1 on parse,
validation or usage errors (with a structured error object), 2 when ``selftest`` finds a
disagreement or a solver's internal cross-check fails.
"""

import collections.abc
import hashlib
import pathlib
import random
import sys
import time
import typing as t
from dataclasses import dataclass
from fractions import Fraction

import click

from path_games.config import Settings
from path_games.documents import (
    CheckDocument,
    CoreDocument,
    Document,
    LeastCoreDocument,
    MaxminDocument,
    MembershipDocument,
    NucleolusDocument,
    SelftestDocument,
    TraceStepDocument,
    ValueDocument,
    coalition_labels,
    dump_game,
    dumps,
    parse_game_file,
    parse_payoff_file,
    parse_probabilities_file,
)
from path_games.errors import (
    CrossCheckError,
    GameFileError,
    NotSeriesParallelError,
    PathGamesError,
    UnsupportedGameError,
)
from path_games.game import Coalition, Family, GameSpec, cost_value, dual_family, simple_value
from path_games.generators import random_game, random_graph, random_sp_graph
from path_games.graph import Graph
from path_games.logs import configure_logging, get_logger
from path_games.nucleolus import min_cut_membership, nucleolus_sp
from path_games.oracle import brute_force_core_empty, brute_force_least_core, brute_force_nucleolus, enumerate_values
from path_games.rational import parse_rational
from path_games.solve import (
    LeastCoreResult,
    PayoffVector,
    combinatorial_least_core,
    core_nonempty,
    in_epsilon_core,
    least_core,
    maxmin_intercept,
    minimum_excess,
    path_detection,
)

log = get_logger(__name__)


class RationalType(click.ParamType):
    name = "rational"

    def convert(self, value: t.Any, param: click.Parameter | None, ctx: click.Context | None) -> Fraction:
        if isinstance(value, Fraction):
            return value
        try:
            return parse_rational(str(value))
        except ValueError as e:
            self.fail(str(e), param, ctx)


@dataclass
class _State:
    settings: Settings
    timings: bool
    started: int


@dataclass(frozen=True)
class _Input:
    graph: Graph
    spec: GameSpec
    digest: str


def _read(path: pathlib.Path, what: str) -> bytes:
    try:
        return path.read_bytes()
    except OSError as e:
        msg = f"Could not read {what} {path}: {e.strerror}"
        raise GameFileError(msg, reason="unreadable") from e


def _load_game(path: pathlib.Path) -> _Input:
    raw = _read(path, "game file")
    graph, spec = parse_game_file(raw)
    return _Input(graph, spec, hashlib.sha256(raw).hexdigest())


def _emit(command: str, game: _Input | None, document: Document) -> None:
    state = click.get_current_context().find_object(_State)
    payload: dict[str, t.Any] = {"command": command, **document.model_dump(mode="json")}
    if game is not None:
        payload["input_sha256"] = game.digest
    if state is not None and state.timings:
        payload["timings"] = {"elapsed_ms": (time.perf_counter_ns() - state.started) // 1_000_000}
    click.echo(dumps(payload).decode(), nl=False)


def _settings() -> Settings:
    return click.get_current_context().ensure_object(_State).settings


def _payoff_map(spec: GameSpec, payoff: PayoffVector) -> dict[str, Fraction]:
    return dict(zip(spec.player_labels, payoff))


def _least_core_document(spec: GameSpec, method: str, result: LeastCoreResult) -> LeastCoreDocument:
    return LeastCoreDocument(
        method=method,
        epsilon1=result.epsilon1,
        min_excess=result.min_excess,
        payoff=_payoff_map(spec, result.payoff),
        tight_coalitions=[coalition_labels(spec, s) for s in result.tight_coalitions],
        iterations=result.iterations,
    )


GameFile = click.Path(dir_okay=False, path_type=pathlib.Path)


@click.group()
@click.option("--config", type=GameFile, help="YAML settings file (overrides PATH_GAMES_* variables)")
@click.option("--log-level", type=click.Choice(["debug", "info", "warning", "error", "critical"]))
@click.option("--log-format", type=click.Choice(["json", "text"]))
@click.option("--allow-large", is_flag=True, default=None, help="Enumerate coalitions beyond the player cap")
@click.option("--timings", is_flag=True, help="Add wall-clock timings to the output")
@click.pass_context
def cli(
    ctx: click.Context,
    config: pathlib.Path | None,
    log_level: str | None,
    log_format: str | None,
    allow_large: bool | None,
    timings: bool,
) -> None:
    """Solve s-t path coalitional games exactly."""
    settings = Settings.from_yaml(config) if config is not None else Settings.from_env()
    settings = settings.updated(log_level=log_level, log_format=log_format, allow_large=allow_large or None)
    configure_logging(settings)
    ctx.obj = _State(settings, timings, time.perf_counter_ns())


@cli.command()
@click.argument("game_file", type=GameFile)
def core(game_file: pathlib.Path) -> None:
    """Veto-player test for a nonempty core."""
    game = _load_game(game_file)
    test = core_nonempty(game.spec)
    witness = None if test.witness is None else game.spec.player_labels[game.spec.index_of[test.witness]]
    _emit("core", game, CoreDocument(nonempty=test.nonempty, witness=witness))


@cli.command()
@click.argument("game_file", type=GameFile)
@click.option("--method", type=click.Choice(["cg", "combinatorial", "brute"]), default="cg", show_default=True)
def leastcore(game_file: pathlib.Path, method: str) -> None:
    """Least core and its value epsilon1."""
    game = _load_game(game_file)
    if method == "cg":
        result = least_core(game.spec, settings=_settings())
    elif method == "combinatorial":
        result = combinatorial_least_core(game.spec)
    else:
        result = brute_force_least_core(enumerate_values(game.spec, settings=_settings()))
    _emit("leastcore", game, _least_core_document(game.spec, method, result))


@cli.command()
@click.argument("game_file", type=GameFile)
@click.option("--payoff", "payoff_file", type=GameFile, required=True, help="Payoff file")
@click.option("--epsilon", type=RationalType(), help="Excess bound; least-core membership when omitted")
def verify(game_file: pathlib.Path, payoff_file: pathlib.Path, epsilon: Fraction | None) -> None:
    """Check epsilon-core (or least-core) membership of a payoff."""
    game = _load_game(game_file)
    payoff = PayoffVector(parse_payoff_file(_read(payoff_file, "payoff file"), game.spec))
    if epsilon is None:
        bound = least_core(game.spec, settings=_settings()).epsilon1
        member = in_epsilon_core(game.spec, payoff, bound)
        check: t.Literal["epsilon-core", "least-core"] = "least-core"
    else:
        member = in_epsilon_core(game.spec, payoff, epsilon)
        bound = epsilon
        check = "epsilon-core"
    lowest = minimum_excess(game.spec, payoff)
    document = MembershipDocument(
        check=check,
        member=member,
        epsilon=bound,
        min_excess=lowest.excess,
        witness=coalition_labels(game.spec, lowest.coalition),
    )
    _emit("verify", game, document)


def _require_sp_game(spec: GameSpec) -> None:
    if spec.family is not Family.EPCG or not spec.is_costless or spec.graph.directed:
        msg = "the decomposition method needs a costless edge path game on an undirected network"
        raise UnsupportedGameError(msg)


@cli.command()
@click.argument("game_file", type=GameFile)
@click.option("--method", type=click.Choice(["sp", "brute"]), default="sp", show_default=True)
def nucleolus(game_file: pathlib.Path, method: str) -> None:
    """Nucleolus, by series-parallel decomposition or by sequential LPs."""
    game = _load_game(game_file)
    spec = game.spec
    if method == "brute":
        payoff = brute_force_nucleolus(enumerate_values(spec, settings=_settings()))
        document = NucleolusDocument(method=method, payoff=_payoff_map(spec, payoff), min_cut=None, trace=None)
    else:
        _require_sp_game(spec)
        result = nucleolus_sp(game.graph)
        names = game.graph.vertex_names
        trace = [
            TraceStepDocument(
                case=step.case.value,
                source=names[step.source],
                sink=names[step.sink],
                child_cuts=list(step.child_cuts),
                alpha=step.alpha,
                child_minima=list(step.child_minima),
                cut=step.cut,
            )
            for step in result.trace
        ]
        document = NucleolusDocument(
            method=method,
            payoff=_payoff_map(spec, result.payoff),
            min_cut=result.min_cut,
            trace=trace,
        )
    _emit("nucleolus", game, document)


@cli.command()
@click.argument("game_file", type=GameFile)
@click.option("--mode", type=click.Choice(["edge", "vertex"]), required=True)
@click.option("--probs", "probs_file", type=GameFile, help="Detection probability per edge or vertex (default 1)")
def maxmin(game_file: pathlib.Path, mode: str, probs_file: pathlib.Path | None) -> None:
    """Maxmin inspection strategy of the path intercept game on the game's network."""
    game = _load_game(game_file)
    g = game.graph
    vertices = mode == "vertex"
    probabilities: dict[int, Fraction] | None = None
    if probs_file is not None:
        probabilities = parse_probabilities_file(_read(probs_file, "probability file"), g, vertices=vertices)
    result = maxmin_intercept(g, mode, probabilities, settings=_settings())
    labels = g.vertex_names if vertices else g.edge_names
    document = MaxminDocument(
        mode=mode,
        value=result.value,
        lp_value=result.lp_value,
        strategy={labels[player]: x for player, x in zip(result.players, result.strategy)},
        support=[labels[player] for player in result.support],
        iterations=result.iterations,
    )
    _emit("maxmin", game, document)


def _parse_coalition(spec: GameSpec, text: str) -> Coalition:
    labels = [label.strip() for label in text.split(",") if label.strip()]
    index = {label: i for i, label in enumerate(spec.player_labels)}
    unknown = [label for label in labels if label not in index]
    if unknown:
        msg = f"unknown players {unknown}; players are {list(spec.player_labels)}"
        raise click.BadParameter(msg, param_hint="--coalition")
    return Coalition.of(index[label] for label in labels)


@cli.command()
@click.argument("game_file", type=GameFile)
@click.option("--coalition", required=True, help="Comma-separated player labels (empty for the empty coalition)")
def value(game_file: pathlib.Path, coalition: str) -> None:
    """Value of a coalition."""
    game = _load_game(game_file)
    members = _parse_coalition(game.spec, coalition)
    document = ValueDocument(
        coalition=coalition_labels(game.spec, members),
        winning=bool(simple_value(game.spec, members)),
        value=cost_value(game.spec, members),
    )
    _emit("value", game, document)


def _compare(name: str, left: object, right: object) -> CheckDocument:
    status: t.Literal["agree", "disagree"] = "agree" if left == right else "disagree"
    return CheckDocument(name=name, status=status, detail=f"{left} vs {right}")


def _selftest_checks(game: _Input, settings: Settings) -> collections.abc.Iterator[CheckDocument]:
    spec, g = game.spec, game.graph
    table = None
    if spec.n_players <= settings.brute_force_cap or settings.allow_large:
        table = enumerate_values(spec, settings=settings)

    generated = least_core(spec, settings=settings)
    if table is None:
        yield CheckDocument(name="least_core.cg_vs_brute", status="skipped", detail="too many players")
    else:
        brute = brute_force_least_core(table)
        yield _compare("least_core.cg_vs_brute", generated.epsilon1, brute.epsilon1)
        lowest = min(table.excess(generated.payoff.values, mask) for mask in range(1 << table.n))
        yield _compare("least_core.cg_payoff_in_brute_core", lowest >= -brute.epsilon1, True)
        yield _compare(
            "least_core.brute_payoff_passes_oracle",
            in_epsilon_core(spec, brute.payoff, generated.epsilon1),
            True,
        )

    if spec.is_costless and not spec.family.is_dual:
        closed = combinatorial_least_core(spec)
        yield _compare("least_core.closed_form_vs_cg", closed.epsilon1, generated.epsilon1)
        mode = "vertex" if spec.family.is_vertex_game else "edge"
        try:
            interception = maxmin_intercept(g, mode, settings=settings)
        except CrossCheckError as e:
            yield CheckDocument(name="maxmin.cut_vs_lp", status="disagree", detail=str(e))
        else:
            yield _compare("maxmin.cut_vs_lp", interception.value, interception.lp_value)
            yield _compare("maxmin.value_vs_least_core", interception.value, 1 - generated.epsilon1)
            yield _compare("maxmin.strategy_guarantee", path_detection(g, mode, interception), interception.value)
    else:
        yield CheckDocument(
            name="least_core.closed_form_vs_cg",
            status="skipped",
            detail="needs a costless primal game",
        )

    if spec.is_costless and table is not None:
        yield _compare("core.veto_vs_brute", core_nonempty(spec).nonempty, not brute_force_core_empty(table))
        yield _compare("core.veto_vs_epsilon1", core_nonempty(spec).nonempty, generated.epsilon1 == 0)
        dual = enumerate_values(dual_family(spec), settings=settings)
        by_complement = all(
            dual[mask] == table.grand_value - table[table.full ^ mask] for mask in range(1 << table.n)
        )
        yield _compare("game.dual_definition", by_complement, True)

    try:
        _require_sp_game(spec)
        decomposed = nucleolus_sp(g)
    except (UnsupportedGameError, NotSeriesParallelError) as e:
        yield CheckDocument(name="nucleolus.sp_vs_brute", status="skipped", detail=str(e))
        return
    if table is not None:
        yield _compare("nucleolus.sp_vs_brute", decomposed.payoff, brute_force_nucleolus(table))
    flags = min_cut_membership(g)
    off_cut = [decomposed.payoff[e] for e in range(g.edge_count) if not flags[e]]
    yield _compare("nucleolus.zero_off_min_cuts", all(x == 0 for x in off_cut), True)


@cli.command()
@click.argument("game_file", type=GameFile)
def selftest(game_file: pathlib.Path) -> int:
    """Run every applicable cross-check between independent solvers."""
    game = _load_game(game_file)
    checks = list(_selftest_checks(game, _settings()))
    agree = all(check.status != "disagree" for check in checks)
    for check in checks:
        log.debug("selftest.check", name=check.name, status=check.status)
    _emit("selftest", game, SelftestDocument(agree=agree, checks=checks))
    return 0 if agree else 2


@cli.command()
@click.option("--family", type=click.Choice([f.value for f in Family]), default=Family.EPCG.value, show_default=True)
@click.option("--kind", type=click.Choice(["graph", "sp"]), default="graph", show_default=True)
@click.option("--vertices", type=click.IntRange(min=2), default=5, show_default=True)
@click.option("--edges", type=click.IntRange(min=1), default=7, show_default=True)
@click.option("--directed", is_flag=True, help="Directed network (graph kind only)")
@click.option("--costly", is_flag=True, help="Random costs in [0, 1] and a covering reward")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--output", type=click.Path(dir_okay=False, writable=True, path_type=pathlib.Path))
def generate(
    family: str,
    kind: str,
    vertices: int,
    edges: int,
    directed: bool,
    costly: bool,
    seed: int,
    output: pathlib.Path | None,
) -> None:
    """Write a random game file."""
    rng = random.Random(seed)
    vertex_game = Family(family).is_vertex_game
    if kind == "sp":
        graph = random_sp_graph(rng, edges)
    else:
        try:
            graph = random_graph(
                rng,
                vertices=vertices,
                edges=edges,
                directed=directed,
                allow_terminal_edge=not vertex_game,
            )
        except ValueError as e:
            raise click.BadParameter(str(e)) from e
    spec = random_game(rng, family, graph, costly=costly)
    data = dump_game(spec)
    if output is None:
        click.echo(data.decode(), nl=False)
    else:
        output.write_bytes(data)


def _emit_error(error: PathGamesError | click.ClickException) -> None:
    if isinstance(error, PathGamesError):
        details = error.to_dict()
    else:
        details = {"code": "usage", "type": type(error).__name__, "message": error.format_message()}
    log.error("command.failed", **details)
    click.echo(dumps({"error": details}).decode(), nl=False)


def run(argv: collections.abc.Sequence[str] | None = None) -> int:
    """Run the command line and return its exit code instead of exiting."""
    try:
        result = cli.main(args=list(argv) if argv is not None else None, prog_name="path-games", standalone_mode=False)
    except CrossCheckError as e:
        _emit_error(e)
        return 2
    except PathGamesError as e:
        _emit_error(e)
        return 1
    except click.ClickException as e:
        _emit_error(e)
        return 1
    except click.Abort:
        return 1
    return result if isinstance(result, int) else 0


def main() -> None:
    sys.exit(run())
