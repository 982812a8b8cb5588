import random
from fractions import Fraction

import pytest
from conftest import simple_table, sorted_excesses

from path_games.config import Settings
from path_games.errors import TooManyPlayersError
from path_games.game import Family, GameSpec
from path_games.generators import random_game, random_graph
from path_games.graph import Graph
from path_games.oracle import (
    ValueTable,
    brute_force_core_empty,
    brute_force_least_core,
    brute_force_nucleolus,
    enumerate_values,
)

F = Fraction


def majority(mask: int) -> bool:
    return bin(mask).count("1") >= 2


def veto(mask: int) -> bool:
    """Player 0 with anyone else."""
    return bool(mask & 1) and mask != 1


class TestValueTable:
    def test_diamond(self, diamond: Graph) -> None:
        """Path coalitions of the diamond are worth 1, crossing pairs 0."""
        table = enumerate_values(GameSpec.costless(Family.EPCG, diamond))
        assert table.n == 4
        assert table.grand_value == 1
        assert table[0b0011] == 1
        assert table[0b1001] == 0
        assert table.is_simple()
        assert table.is_monotone()

    def test_costly_values(self, costly_parallel: GameSpec) -> None:
        """Each winning coalition keeps the reward minus its cheapest path."""
        table = enumerate_values(costly_parallel)
        assert table.values == (0, F(3, 4), F(1, 2), F(3, 4))
        assert not table.is_simple()

    def test_rejects_malformed_tables(self) -> None:
        """Tables need all 2^n values and a worthless empty coalition."""
        with pytest.raises(ValueError, match="needs 4 values"):
            ValueTable(2, (F(0), F(1)))
        with pytest.raises(ValueError, match="empty coalition"):
            ValueTable(1, (F(1), F(1)))

    def test_excess(self) -> None:
        table = simple_table(3, majority)
        assert table.excess((F(1, 3),) * 3, 0b011) == F(-1, 3)
        assert sorted_excesses(table, (F(1, 3),) * 3) == (F(-1, 3),) * 3 + (F(1, 3),) * 3

    def test_player_cap(self, parallel: Graph) -> None:
        """Enumeration stops at the player cap unless large games are allowed."""
        spec = GameSpec.costless(Family.EPCG, parallel)
        with pytest.raises(TooManyPlayersError):
            enumerate_values(spec, settings=Settings(brute_force_cap=1))
        assert enumerate_values(spec, settings=Settings(brute_force_cap=1, allow_large=True)).n == 2


class TestBruteForceLeastCore:
    def test_majority(self) -> None:
        """Three-player majority spreads its epsilon of 1/3 evenly."""
        result = brute_force_least_core(simple_table(3, majority))
        assert result.epsilon1 == F(1, 3)
        assert result.payoff.values == (F(1, 3),) * 3
        assert len(result.tight_coalitions) == 3

    def test_veto_game_has_a_core(self) -> None:
        """The veto player collects everything at epsilon 0."""
        result = brute_force_least_core(simple_table(3, veto))
        assert result.epsilon1 == 0
        assert result.payoff.values == (1, 0, 0)


class TestBruteForceCore:
    def test_majority_core_is_empty(self) -> None:
        assert brute_force_core_empty(simple_table(3, majority))

    def test_veto_core_is_not_empty(self) -> None:
        assert not brute_force_core_empty(simple_table(3, veto))

    def test_diamond(self, diamond: Graph, series: Graph) -> None:
        """Two disjoint paths leave the core empty."""
        assert brute_force_core_empty(enumerate_values(GameSpec.costless(Family.EPCG, diamond)))
        assert not brute_force_core_empty(enumerate_values(GameSpec.costless(Family.EPCG, series)))


class TestBruteForceNucleolus:
    def test_diamond(self, diamond: Graph) -> None:
        """All four diamond edges get 1/4."""
        table = enumerate_values(GameSpec.costless(Family.EPCG, diamond))
        assert brute_force_nucleolus(table).values == (F(1, 4),) * 4

    def test_symmetric_and_veto_games(self) -> None:
        assert brute_force_nucleolus(simple_table(3, majority)).values == (F(1, 3),) * 3
        assert brute_force_nucleolus(simple_table(3, veto)).values == (1, 0, 0)

    def test_single_player(self, single_edge: Graph) -> None:
        """A lone player takes the grand value."""
        table = enumerate_values(GameSpec.costless(Family.EPCG, single_edge))
        assert brute_force_nucleolus(table).values == (1,)

    @pytest.mark.parametrize(
        ("network", "expected"),
        [
            ("parallel", (F(1, 2), F(1, 2))),
            ("edge_beside_path", (F(1, 2), F(1, 4), F(1, 4))),
        ],
    )
    def test_direct_terminal_edges(self, request: pytest.FixtureRequest, network: str, expected: tuple[F, ...]) -> None:
        """A player winning alone is not floored at its own value."""
        g: Graph = request.getfixturevalue(network)
        table = enumerate_values(GameSpec.costless(Family.EPCG, g))
        assert brute_force_nucleolus(table).values == expected

    def test_singletons_worth_the_grand_value(self) -> None:
        """Players worth the grand value alone split it evenly."""
        table = ValueTable(2, (F(0), F(1), F(1), F(1)))
        assert brute_force_nucleolus(table).values == (F(1, 2), F(1, 2))

    @pytest.mark.parametrize("seed", range(8))
    def test_lexicographically_beats_the_least_core_payoff(self, seed: int) -> None:
        """Sorted excesses of the nucleolus dominate those of any other least-core payoff."""
        rng = random.Random(seed)
        g = random_graph(rng, vertices=4, edges=6, allow_terminal_edge=seed % 2 == 0)
        table = enumerate_values(GameSpec.costless(Family.EPCG, g))
        nucleolus = brute_force_nucleolus(table)
        least = brute_force_least_core(table)
        assert sorted_excesses(table, nucleolus.values) >= sorted_excesses(table, least.payoff.values)
        assert min(sorted_excesses(table, nucleolus.values)[0], F(0)) == -least.epsilon1
        assert sum(nucleolus.values) == table.grand_value
        assert all(x >= 0 for x in nucleolus.values)

    @pytest.mark.parametrize("seed", range(6))
    def test_relabelling_players_permutes_the_payoff(self, seed: int) -> None:
        """The nucleolus is unique, so it follows any renaming of the players."""
        rng = random.Random(seed)
        g = random_graph(rng, vertices=4, edges=5)
        table = enumerate_values(GameSpec.costless(Family.EPCG, g))
        order = list(range(table.n))
        rng.shuffle(order)

        def relabel(mask: int) -> int:
            return sum(1 << order[i] for i in range(table.n) if mask >> i & 1)

        shuffled = [F(0)] * len(table.values)
        for mask, value in enumerate(table.values):
            shuffled[relabel(mask)] = value
        original = brute_force_nucleolus(table).values
        permuted = brute_force_nucleolus(ValueTable(table.n, tuple(shuffled))).values
        assert tuple(permuted[order[i]] for i in range(table.n)) == original

    @pytest.mark.parametrize("seed", range(4))
    def test_costly_games(self, seed: int) -> None:
        """Costly games keep efficiency and the least-core minimum excess."""
        rng = random.Random(seed)
        spec = random_game(rng, Family.EPCG, random_graph(rng, vertices=4, edges=5))
        table = enumerate_values(spec)
        nucleolus = brute_force_nucleolus(table)
        least = brute_force_least_core(table)
        assert sum(nucleolus.values) == table.grand_value
        assert min(sorted_excesses(table, nucleolus.values)[0], F(0)) == -least.epsilon1
