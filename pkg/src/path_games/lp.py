"""Exact rational linear programming.

A two-phase primal simplex over :class:`fractions.Fraction` with Bland's rule (lowest-index
entering column, lowest-index basic variable among ratio ties), which never cycles. Rows implied
by the variable bounds are dropped before the tableau is built; the tableau rows are sparse.
"""

import collections.abc
import enum
import typing as t
from dataclasses import dataclass, field
from fractions import Fraction

from path_games.logs import get_logger
from path_games.rational import Infinity

log = get_logger(__name__)

_ZERO = Fraction(0)


class Relation(str, enum.Enum):
    LE = "<="
    GE = ">="
    EQ = "="


class Sense(str, enum.Enum):
    MIN = "min"
    MAX = "max"


class LpStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    """``coefficients · x  relation  rhs``."""

    coefficients: tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction

    def __post_init__(self) -> None:
        values = (*self.coefficients, self.rhs)
        if any(isinstance(v, Infinity) for v in values):
            msg = "linear program entries must be finite"
            raise ValueError(msg)
        object.__setattr__(self, "coefficients", tuple(Fraction(a) for a in self.coefficients))
        object.__setattr__(self, "rhs", Fraction(self.rhs))
        object.__setattr__(self, "relation", Relation(self.relation))

    def activity(self, values: collections.abc.Sequence[Fraction]) -> Fraction:
        return sum((a * x for a, x in zip(self.coefficients, values) if a), _ZERO)

    def is_satisfied(self, values: collections.abc.Sequence[Fraction]) -> bool:
        activity = self.activity(values)
        if self.relation is Relation.LE:
            return activity <= self.rhs
        if self.relation is Relation.GE:
            return activity >= self.rhs
        return activity == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """A linear program over ``variable_count`` variables.

    Lower bounds default to 0; a lower bound of ``None`` makes the variable free. Upper bounds
    default to ``None`` (unbounded above).
    """

    variable_count: int
    objective: tuple[Fraction, ...]
    sense: Sense = Sense.MIN
    constraints: tuple[Constraint, ...] = ()
    lower_bounds: tuple[Fraction | None, ...] = field(default=())
    upper_bounds: tuple[Fraction | None, ...] = field(default=())

    def __post_init__(self) -> None:
        n = self.variable_count
        if not self.lower_bounds:
            object.__setattr__(self, "lower_bounds", (_ZERO,) * n)
        if not self.upper_bounds:
            object.__setattr__(self, "upper_bounds", (None,) * n)
        object.__setattr__(self, "objective", tuple(Fraction(c) for c in self.objective))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "sense", Sense(self.sense))

        if len(self.objective) != n or len(self.lower_bounds) != n or len(self.upper_bounds) != n:
            msg = f"objective and bounds must have {n} entries"
            raise ValueError(msg)
        for index, constraint in enumerate(self.constraints):
            if len(constraint.coefficients) != n:
                msg = f"constraint {index} has {len(constraint.coefficients)} coefficients, expected {n}"
                raise ValueError(msg)
        for bound in (*self.lower_bounds, *self.upper_bounds):
            if isinstance(bound, Infinity):
                msg = "bounds must be finite (use None for no bound)"
                raise ValueError(msg)

    def objective_at(self, values: collections.abc.Sequence[Fraction]) -> Fraction:
        return sum((c * x for c, x in zip(self.objective, values) if c), _ZERO)

    def is_feasible(self, values: collections.abc.Sequence[Fraction]) -> bool:
        for x, lower, upper in zip(values, self.lower_bounds, self.upper_bounds):
            if (lower is not None and x < lower) or (upper is not None and x > upper):
                return False
        return all(c.is_satisfied(values) for c in self.constraints)


class LpSolution(t.NamedTuple):
    status: LpStatus
    #: primal values of the original variables (empty unless optimal)
    values: tuple[Fraction, ...] = ()
    objective: Fraction | None = None
    #: labels of the final basic columns, in column order
    basis: tuple[str, ...] = ()

    @property
    def is_optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


class _Tableau:
    """Sparse simplex tableau in canonical form for the current basis (minimization)."""

    def __init__(self, rows: list[dict[int, Fraction]], rhs: list[Fraction], basis: list[int]) -> None:
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.reduced: dict[int, Fraction] = {}
        self.value = _ZERO
        self.pivots = 0

    def price(self, costs: collections.abc.Mapping[int, Fraction]) -> None:
        reduced = dict(costs)
        value = _ZERO
        for i, basic in enumerate(self.basis):
            cost = costs.get(basic)
            if not cost:
                continue
            value += cost * self.rhs[i]
            for j, a in self.rows[i].items():
                reduced[j] = reduced.get(j, _ZERO) - cost * a
        self.reduced = {j: d for j, d in reduced.items() if d}
        self.value = value

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        pivot = row[c]
        if pivot != 1:
            row = {j: a / pivot for j, a in row.items()}
            self.rows[r] = row
            self.rhs[r] /= pivot

        for i, other in enumerate(self.rows):
            factor = other.get(c) if i != r else None
            if factor is None:
                continue
            _eliminate(other, row, factor)
            self.rhs[i] -= factor * self.rhs[r]

        factor = self.reduced.get(c)
        if factor is not None:
            _eliminate(self.reduced, row, factor)
            self.value += factor * self.rhs[r]

        self.basis[r] = c
        self.pivots += 1

    def optimize(self, blocked: collections.abc.Container[int] = frozenset()) -> bool:
        """Pivot to optimality. Returns ``False`` if the objective is unbounded below."""
        while True:
            entering = min((j for j, d in self.reduced.items() if d < 0 and j not in blocked), default=None)
            if entering is None:
                return True

            leaving: int | None = None
            best = _ZERO
            for i, row in enumerate(self.rows):
                a = row.get(entering)
                if a is None or a <= 0:
                    continue
                ratio = self.rhs[i] / a
                if leaving is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leaving]):
                    leaving, best = i, ratio
            if leaving is None:
                return False
            self.pivot(leaving, entering)

    def drop_row(self, i: int) -> None:
        del self.rows[i]
        del self.rhs[i]
        del self.basis[i]


def _eliminate(target: dict[int, Fraction], row: collections.abc.Mapping[int, Fraction], factor: Fraction) -> None:
    for j, a in row.items():
        updated = target.get(j, _ZERO) - factor * a
        if updated:
            target[j] = updated
        else:
            target.pop(j, None)


def _row_range(
    constraint: Constraint,
    lower: collections.abc.Sequence[Fraction | None],
    upper: collections.abc.Sequence[Fraction | None],
) -> tuple[Fraction | None, Fraction | None]:
    """Smallest and largest activity over the bound box (``None`` when unbounded)."""
    low: Fraction | None = _ZERO
    high: Fraction | None = _ZERO
    for a, lo, hi in zip(constraint.coefficients, lower, upper):
        if not a:
            continue
        at_low, at_high = (lo, hi) if a > 0 else (hi, lo)
        low = None if low is None or at_low is None else low + a * at_low
        high = None if high is None or at_high is None else high + a * at_high
    return low, high


def _implied_by_bounds(
    constraint: Constraint,
    lower: collections.abc.Sequence[Fraction | None],
    upper: collections.abc.Sequence[Fraction | None],
) -> bool:
    if constraint.relation is Relation.EQ:
        return False
    low, high = _row_range(constraint, lower, upper)
    if constraint.relation is Relation.GE:
        return low is not None and low >= constraint.rhs
    return high is not None and high <= constraint.rhs


class _Row(t.NamedTuple):
    coefficients: dict[int, Fraction]
    relation: Relation
    rhs: Fraction


def solve_lp(program: LinearProgram) -> LpSolution:
    """Solve a linear program exactly.

    Returns:
        An optimal basic solution, or the ``INFEASIBLE`` / ``UNBOUNDED`` status
    """
    n = program.variable_count

    # Structural columns: x_j = lower_j + y_j, or x_j = y+ - y- for free variables.
    labels: list[str] = []
    terms: list[tuple[tuple[int, int], ...]] = []
    shift: list[Fraction] = []
    rows: list[_Row] = []
    for j, (lower, upper) in enumerate(zip(program.lower_bounds, program.upper_bounds)):
        if lower is None:
            labels.extend((f"x{j}+", f"x{j}-"))
            plus, minus = len(labels) - 2, len(labels) - 1
            terms.append(((plus, 1), (minus, -1)))
            shift.append(_ZERO)
            if upper is not None:
                rows.append(_Row({plus: Fraction(1), minus: Fraction(-1)}, Relation.LE, upper))
        else:
            labels.append(f"x{j}")
            terms.append(((len(labels) - 1, 1),))
            shift.append(lower)
            if upper is not None:
                rows.append(_Row({len(labels) - 1: Fraction(1)}, Relation.LE, upper - lower))

    dropped = 0
    for constraint in program.constraints:
        if _implied_by_bounds(constraint, program.lower_bounds, program.upper_bounds):
            dropped += 1
            continue
        coefficients: dict[int, Fraction] = {}
        rhs = constraint.rhs
        for j, a in enumerate(constraint.coefficients):
            if not a:
                continue
            rhs -= a * shift[j]
            for column, sign in terms[j]:
                coefficients[column] = coefficients.get(column, _ZERO) + sign * a
        rows.append(_Row({c: a for c, a in coefficients.items() if a}, constraint.relation, rhs))

    # Canonical form: nonnegative right-hand sides, one slack / surplus per inequality and one
    # artificial per row without a natural basic column.
    normalized: list[_Row] = []
    for row in rows:
        if row.rhs < 0:
            relation = {Relation.LE: Relation.GE, Relation.GE: Relation.LE}.get(row.relation, Relation.EQ)
            row = _Row({c: -a for c, a in row.coefficients.items()}, relation, -row.rhs)
        if not row.coefficients:
            if row.relation is Relation.LE or row.rhs == 0:
                continue
            log.debug("lp.solved", status=LpStatus.INFEASIBLE.value, reason="empty row")
            return LpSolution(LpStatus.INFEASIBLE)
        normalized.append(row)

    tableau_rows: list[dict[int, Fraction]] = []
    basis: list[int] = []
    needs_artificial: list[int] = []
    for i, row in enumerate(normalized):
        coefficients = dict(row.coefficients)
        if row.relation is not Relation.EQ:
            labels.append(f"{'slack' if row.relation is Relation.LE else 'surplus'}{i}")
            coefficients[len(labels) - 1] = Fraction(1 if row.relation is Relation.LE else -1)
        tableau_rows.append(coefficients)
        if row.relation is Relation.LE:
            basis.append(len(labels) - 1)
        else:
            basis.append(-1)
            needs_artificial.append(i)

    artificials: set[int] = set()
    for i in needs_artificial:
        labels.append(f"artificial{i}")
        column = len(labels) - 1
        tableau_rows[i][column] = Fraction(1)
        basis[i] = column
        artificials.add(column)

    tableau = _Tableau(tableau_rows, [row.rhs for row in normalized], basis)

    if artificials:
        tableau.price({a: Fraction(1) for a in artificials})
        tableau.optimize()
        if tableau.value > 0:
            log.debug("lp.solved", status=LpStatus.INFEASIBLE.value, rows=len(tableau.rows), pivots=tableau.pivots)
            return LpSolution(LpStatus.INFEASIBLE)
        _drive_out(tableau, artificials)

    sign = 1 if program.sense is Sense.MIN else -1
    costs: dict[int, Fraction] = {}
    for j, c in enumerate(program.objective):
        if c:
            for column, term_sign in terms[j]:
                costs[column] = costs.get(column, _ZERO) + sign * term_sign * c
    tableau.price(costs)
    if not tableau.optimize(blocked=artificials):
        log.debug("lp.solved", status=LpStatus.UNBOUNDED.value, rows=len(tableau.rows), pivots=tableau.pivots)
        return LpSolution(LpStatus.UNBOUNDED)

    column_values = dict(zip(tableau.basis, tableau.rhs))
    values = tuple(
        shift[j] + sum((term_sign * column_values.get(column, _ZERO) for column, term_sign in terms[j]), _ZERO)
        for j in range(n)
    )
    log.debug(
        "lp.solved",
        status=LpStatus.OPTIMAL.value,
        rows=len(tableau.rows),
        dropped_rows=dropped,
        columns=len(labels),
        pivots=tableau.pivots,
    )
    return LpSolution(
        LpStatus.OPTIMAL,
        values,
        program.objective_at(values),
        tuple(labels[c] for c in sorted(tableau.basis)),
    )


def _drive_out(tableau: _Tableau, artificials: set[int]) -> None:
    """Pivot zero-valued artificials out of the basis, dropping rows that turn out redundant."""
    i = 0
    while i < len(tableau.rows):
        if tableau.basis[i] not in artificials:
            i += 1
            continue
        replacement = min((j for j in tableau.rows[i] if j not in artificials), default=None)
        if replacement is None:
            tableau.drop_row(i)
            continue
        tableau.pivot(i, replacement)
        i += 1

    for row in tableau.rows:
        for column in artificials.intersection(row):
            del row[column]
    for column in artificials:
        tableau.reduced.pop(column, None)
