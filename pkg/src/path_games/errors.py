import typing as t


class PathGamesError(Exception):
    """The base exception of the ``path-games`` library."""

    code: t.ClassVar[str] = "error"

    def to_dict(self) -> dict[str, t.Any]:
        """Structured representation used by the CLI error object."""
        return {"code": self.code, "type": type(self).__name__, "message": str(self)}


class GameFileError(PathGamesError):
    """A game, payoff or probability document could not be read.

    ``reason`` names the failed check (``syntax``, ``schema``, ``unknown_vertex``, ...).
    """

    code = "invalid_document"

    def __init__(
        self,
        message: str,
        *,
        reason: str,
        line: int | None = None,
        column: int | None = None,
    ) -> None:
        super().__init__(message)
        self.reason = reason
        self.line = line
        self.column = column

    def to_dict(self) -> dict[str, t.Any]:
        data = super().to_dict()
        data["reason"] = self.reason
        if self.line is not None:
            data["line"] = self.line
            data["column"] = self.column
        return data


class GraphError(PathGamesError):
    """The graph violates a structural requirement."""

    code = "invalid_graph"


class InvalidGameError(PathGamesError):
    """A game definition violates the simple-game axioms."""

    code = "invalid_game"


class VpcgDirectEdgeError(InvalidGameError):
    """A vertex game has a direct (s, t) edge, so the empty coalition would win."""

    code = "vpcg_direct_edge"


class NegativeGrandValueError(InvalidGameError):
    """The cheapest winning coalition costs more than the reward."""

    code = "negative_grand_value"


class NotSeriesParallelError(GraphError):
    """The graph cannot be reduced to a single s-t edge."""

    code = "not_series_parallel"

    def __init__(self, message: str, *, witness: tuple[tuple[int, int], ...]) -> None:
        super().__init__(message)
        #: Endpoints of the irreducible remnant's (composite) edges.
        self.witness = witness

    def to_dict(self) -> dict[str, t.Any]:
        data = super().to_dict()
        data["witness"] = [list(pair) for pair in self.witness]
        return data


class UnsupportedGameError(PathGamesError):
    """The requested method does not apply to this game."""

    code = "unsupported_game"


class InvalidPayoffError(PathGamesError):
    """A payoff vector is malformed (wrong players or negative entries)."""

    code = "invalid_payoff"


class NotEfficientError(InvalidPayoffError):
    """A payoff vector does not distribute exactly the grand coalition's value."""

    code = "not_efficient"


class TooManyPlayersError(PathGamesError):
    """Coalition enumeration was requested beyond the configured cap."""

    code = "too_many_players"


class SolverError(PathGamesError):
    """A solver broke one of its own invariants."""

    code = "solver_error"


class CrossCheckError(PathGamesError):
    """Two independent computations of the same quantity disagree."""

    code = "cross_check_failed"


class ConfigurationError(PathGamesError):
    """Solver settings could not be loaded."""

    code = "invalid_config"
