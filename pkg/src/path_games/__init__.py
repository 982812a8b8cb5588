from path_games.config import Settings
from path_games.documents import dump_game, parse_game_file, parse_payoff_file, parse_probabilities_file
from path_games.errors import (
    ConfigurationError,
    CrossCheckError,
    GameFileError,
    GraphError,
    InvalidGameError,
    InvalidPayoffError,
    NegativeGrandValueError,
    NotEfficientError,
    NotSeriesParallelError,
    PathGamesError,
    SolverError,
    TooManyPlayersError,
    UnsupportedGameError,
    VpcgDirectEdgeError,
)
from path_games.game import (
    Coalition,
    Family,
    GameSpec,
    WinningCoalition,
    cost_value,
    dual_family,
    grand_value,
    min_weight_winning_coalition,
    simple_value,
)
from path_games.graph import Graph
from path_games.lp import LinearProgram, LpSolution, LpStatus, solve_lp
from path_games.nucleolus import NucleolusResult, min_cut_membership, nucleolus_sp
from path_games.oracle import (
    ValueTable,
    brute_force_core_empty,
    brute_force_least_core,
    brute_force_nucleolus,
    enumerate_values,
)
from path_games.rational import INF, ExtRational
from path_games.solve import (
    CoreTest,
    InterceptMode,
    LeastCoreResult,
    MaxminResult,
    PayoffVector,
    combinatorial_least_core,
    core_nonempty,
    in_epsilon_core,
    in_least_core,
    least_core,
    maxmin_intercept,
    minimum_excess,
    separation_oracle,
)

__all__ = [
    "INF",
    "Coalition",
    "ConfigurationError",
    "CoreTest",
    "CrossCheckError",
    "ExtRational",
    "Family",
    "GameFileError",
    "GameSpec",
    "Graph",
    "GraphError",
    "InterceptMode",
    "InvalidGameError",
    "InvalidPayoffError",
    "LeastCoreResult",
    "LinearProgram",
    "LpSolution",
    "LpStatus",
    "MaxminResult",
    "NegativeGrandValueError",
    "NotEfficientError",
    "NotSeriesParallelError",
    "NucleolusResult",
    "PathGamesError",
    "PayoffVector",
    "Settings",
    "SolverError",
    "TooManyPlayersError",
    "UnsupportedGameError",
    "ValueTable",
    "VpcgDirectEdgeError",
    "WinningCoalition",
    "brute_force_core_empty",
    "brute_force_least_core",
    "brute_force_nucleolus",
    "combinatorial_least_core",
    "core_nonempty",
    "cost_value",
    "dual_family",
    "dump_game",
    "enumerate_values",
    "grand_value",
    "in_epsilon_core",
    "in_least_core",
    "least_core",
    "maxmin_intercept",
    "min_cut_membership",
    "min_weight_winning_coalition",
    "nucleolus_sp",
    "parse_game_file",
    "parse_payoff_file",
    "parse_probabilities_file",
    "separation_oracle",
    "simple_value",
    "solve_lp",
]
