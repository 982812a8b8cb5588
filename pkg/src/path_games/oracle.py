"""Brute-force reference solvers over the explicit table of all ``2^n`` coalition values."""

import collections.abc
from dataclasses import dataclass
from fractions import Fraction

from path_games.config import Settings
from path_games.errors import SolverError, TooManyPlayersError
from path_games.game import Coalition, GameSpec, cost_value, simple_value
from path_games.logs import get_logger
from path_games.lp import Constraint, LinearProgram, LpStatus, Relation, Sense, solve_lp
from path_games.solve import LeastCoreResult, PayoffVector

log = get_logger(__name__)

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class ValueTable:
    """``values[mask]`` is the value of the coalition whose members are the set bits of ``mask``."""

    n: int
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.values) != 1 << self.n:
            msg = f"a table over {self.n} players needs {1 << self.n} values, got {len(self.values)}"
            raise ValueError(msg)
        if self.values[0] != 0:
            msg = "the empty coalition must be worth 0"
            raise ValueError(msg)

    def __getitem__(self, coalition: Coalition | int) -> Fraction:
        mask = coalition.mask if isinstance(coalition, Coalition) else coalition
        return self.values[mask]

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def grand_value(self) -> Fraction:
        return self.values[self.full]

    def is_simple(self) -> bool:
        return all(v in (0, 1) for v in self.values) and self.grand_value == 1

    def is_monotone(self) -> bool:
        return all(
            self.values[mask] <= self.values[mask | 1 << i]
            for mask in range(1 << self.n)
            for i in range(self.n)
        )

    def excess(self, x: collections.abc.Sequence[Fraction], mask: int) -> Fraction:
        """``x(S) - v(S)``."""
        return _total(x, mask) - self.values[mask]


def _total(x: collections.abc.Sequence[Fraction], mask: int) -> Fraction:
    total = _ZERO
    i = 0
    while mask:
        if mask & 1:
            total += x[i]
        mask >>= 1
        i += 1
    return total


def _indicator(n: int, mask: int) -> list[Fraction]:
    return [_ONE if mask >> i & 1 else _ZERO for i in range(n)]


def enumerate_values(spec: GameSpec, *, settings: Settings | None = None) -> ValueTable:
    """Tabulate every coalition's value.

    Raises:
        TooManyPlayersError: Beyond ``settings.brute_force_cap`` players unless ``allow_large`` is set
    """
    settings = settings or Settings()
    n = spec.n_players
    if n > settings.brute_force_cap and not settings.allow_large:
        msg = f"{n} players exceed the enumeration cap of {settings.brute_force_cap}"
        raise TooManyPlayersError(msg)

    if spec.is_costless:
        values = tuple(Fraction(simple_value(spec, Coalition(mask))) for mask in range(1 << n))
    else:
        values = tuple(cost_value(spec, Coalition(mask)) for mask in range(1 << n))
    return ValueTable(n, values)


def brute_force_least_core(table: ValueTable) -> LeastCoreResult:
    """Least core with every coalition's constraint ``x(S) + eps >= v(S)`` explicit."""
    n = table.n
    constraints = [Constraint((*([_ONE] * n), _ZERO), Relation.EQ, table.grand_value)]
    constraints.extend(
        Constraint((*_indicator(n, mask), _ONE), Relation.GE, table.values[mask]) for mask in range(1 << n)
    )
    solution = solve_lp(LinearProgram(n + 1, (*([_ZERO] * n), _ONE), Sense.MIN, tuple(constraints)))
    if not solution.is_optimal:
        msg = f"least-core program is {solution.status.value}"
        raise SolverError(msg)

    x, eps = solution.values[:n], solution.values[n]
    tight = tuple(Coalition(mask) for mask in range(1, 1 << n) if table.excess(x, mask) == -eps)
    return LeastCoreResult(eps, PayoffVector(x), tight, 1)


def brute_force_core_empty(table: ValueTable) -> bool:
    """Whether no efficient ``x >= 0`` has ``x(S) >= v(S)`` for every coalition."""
    n = table.n
    constraints = [Constraint((_ONE,) * n, Relation.EQ, table.grand_value)]
    constraints.extend(
        Constraint(tuple(_indicator(n, mask)), Relation.GE, table.values[mask]) for mask in range(1 << n)
    )
    solution = solve_lp(LinearProgram(n, (_ZERO,) * n, Sense.MIN, tuple(constraints)))
    return solution.status is LpStatus.INFEASIBLE


class _Span:
    """Row space of the coalition indicator vectors fixed so far (exact Gaussian elimination)."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.rows: list[tuple[int, list[Fraction]]] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, mask: int) -> list[Fraction]:
        vector = _indicator(self.n, mask)
        for pivot, row in self.rows:
            factor = vector[pivot]
            if factor:
                vector = [v - factor * r for v, r in zip(vector, row)]
        return vector

    def contains(self, mask: int) -> bool:
        return not any(self._reduce(mask))

    def add(self, mask: int) -> bool:
        vector = self._reduce(mask)
        pivot = next((i for i, v in enumerate(vector) if v), None)
        if pivot is None:
            return False
        self.rows.append((pivot, [v / vector[pivot] for v in vector]))
        return True


class _Schedule:
    """The stage programs of the sequential nucleolus computation.

    Excess rows are activated lazily: a program is re-solved with the rows its optimum violates
    until the optimum satisfies every remaining candidate coalition.
    """

    def __init__(self, table: ValueTable) -> None:
        self.table = table
        self.n = table.n
        self.members = tuple(
            tuple(i for i in range(table.n) if mask >> i & 1) for mask in range(1 << table.n)
        )
        self.fixed: dict[int, Fraction] = {}
        self.candidates: list[int] = []
        self.active: set[int] = set()

    def excess(self, x: collections.abc.Sequence[Fraction], mask: int) -> Fraction:
        return sum((x[i] for i in self.members[mask]), _ZERO) - self.table.values[mask]

    def _row(self, mask: int, extra: int) -> list[Fraction]:
        row = [_ZERO] * (self.n + extra)
        for i in self.members[mask]:
            row[i] = _ONE
        return row

    def _base_constraints(self, extra: int) -> list[Constraint]:
        constraints = [Constraint(tuple(self._row(self.table.full, extra)), Relation.EQ, self.table.grand_value)]
        constraints.extend(
            Constraint(tuple(self._row(mask, extra)), Relation.EQ, self.table.values[mask] + level)
            for mask, level in self.fixed.items()
        )
        return constraints

    def _violated(
        self,
        x: collections.abc.Sequence[Fraction],
        level: Fraction,
        exclude: collections.abc.Container[int] = (),
    ) -> list[int]:
        return [
            mask
            for mask in self.candidates
            if mask not in self.active and mask not in exclude and self.excess(x, mask) < level
        ]

    def max_min_excess(self) -> tuple[Fraction, tuple[Fraction, ...]]:
        """Maximize ``t`` with ``x(S) - v(S) >= t`` for every candidate coalition."""
        n = self.n
        while True:
            constraints = self._base_constraints(1)
            for mask in sorted(self.active):
                row = self._row(mask, 1)
                row[n] = -_ONE
                constraints.append(Constraint(tuple(row), Relation.GE, self.table.values[mask]))
            program = LinearProgram(
                n + 1,
                (*([_ZERO] * n), _ONE),
                Sense.MAX,
                tuple(constraints),
                lower_bounds=(*([_ZERO] * n), None),
            )
            solution = solve_lp(program)
            if solution.status is LpStatus.UNBOUNDED and len(self.active) < len(self.candidates):
                self.active.update(self.candidates)
                continue
            if not solution.is_optimal:
                msg = f"nucleolus stage program is {solution.status.value}"
                raise SolverError(msg)

            x, level = solution.values[:n], solution.values[n]
            violated = self._violated(x, level)
            if not violated:
                return level, x
            self.active.update(violated)

    def max_slack(self, tight: list[int], level: Fraction) -> tuple[Fraction, ...]:
        """Maximize the total of slacks ``s_S <= 1`` with ``x(S) - v(S) - s_S >= level`` over ``tight``.

        Every other candidate keeps excess at least ``level``. A tight coalition with positive
        slack at the optimum is not fixed at ``level``.
        """
        n, k = self.n, len(tight)
        while True:
            constraints = self._base_constraints(k)
            for j, mask in enumerate(tight):
                row = self._row(mask, k)
                row[n + j] = -_ONE
                constraints.append(Constraint(tuple(row), Relation.GE, self.table.values[mask] + level))
            constraints.extend(
                Constraint(tuple(self._row(mask, k)), Relation.GE, self.table.values[mask] + level)
                for mask in sorted(self.active.difference(tight))
            )
            program = LinearProgram(
                n + k,
                (*([_ZERO] * n), *([_ONE] * k)),
                Sense.MAX,
                tuple(constraints),
                upper_bounds=(*([None] * n), *([_ONE] * k)),
            )
            solution = solve_lp(program)
            if not solution.is_optimal:
                msg = f"slack program is {solution.status.value}"
                raise SolverError(msg)

            violated = self._violated(solution.values[:n], level, exclude=set(tight))
            if not violated:
                return solution.values[n:]
            self.active.update(violated)


def brute_force_nucleolus(table: ValueTable) -> PayoffVector:
    """Nucleolus by the sequential LP scheme.

    Each stage maximizes the smallest excess over the coalitions not yet fixed, subject to
    efficiency, ``x >= 0`` and the excess levels fixed by earlier stages. The coalitions whose
    excess no stage-optimal payoff can raise are fixed at that level: a slack program peels off
    the tight coalitions it can raise until none is left to raise. Coalitions in the span of the
    fixed ones drop out, and the payoff is unique once the fixed coalitions span all players.

    Raises:
        SolverError: If a stage fixes no coalition
    """
    n = table.n
    span = _Span(n)
    span.add(table.full)
    schedule = _Schedule(table)
    schedule.candidates = [mask for mask in range(1, table.full) if not span.contains(mask)]
    schedule.active = {1 << i for i in range(n)}.intersection(schedule.candidates)

    x: tuple[Fraction, ...] = (table.grand_value,) if n == 1 else ()
    stage = 0
    while span.rank < n:
        stage += 1
        level, x = schedule.max_min_excess()

        forced = [mask for mask in schedule.candidates if schedule.excess(x, mask) == level]
        while forced:
            slack = schedule.max_slack(forced, level)
            if not any(slack):
                break
            forced = [mask for mask, s in zip(forced, slack) if not s]

        if not forced:
            msg = f"nucleolus stage {stage} fixed no coalition"
            raise SolverError(msg)

        for mask in forced:
            span.add(mask)
        schedule.fixed.update(dict.fromkeys(forced, level))
        schedule.candidates = [
            mask for mask in schedule.candidates if mask not in schedule.fixed and not span.contains(mask)
        ]
        schedule.active.intersection_update(schedule.candidates)
        log.debug("nucleolus.stage", stage=stage, level=str(level), fixed=len(forced), rank=span.rank)

    return PayoffVector(x)
