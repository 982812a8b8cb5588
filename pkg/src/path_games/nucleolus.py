"""Nucleolus of costless edge path games on undirected series-parallel networks."""

import enum
import typing as t
from fractions import Fraction

from path_games.errors import SolverError
from path_games.graph import Graph, SPLeaf, SPSeries, SPTree, min_edge_cut, sp_decompose
from path_games.logs import get_logger
from path_games.rational import Infinity
from path_games.solve import PayoffVector

log = get_logger(__name__)

_ZERO = Fraction(0)
_ONE = Fraction(1)


class NodeCase(str, enum.Enum):
    BASE = "base"
    SERIES_UNEQUAL = "series-unequal"
    SERIES_EQUAL = "series-equal"
    PARALLEL = "parallel"


class TraceStep(t.NamedTuple):
    """How one decomposition node combined its children's nucleoli."""

    case: NodeCase
    source: int
    sink: int
    #: minimum cut size of each child (one entry for a leaf)
    child_cuts: tuple[int, ...]
    #: share of the left child (``None`` when no scaling happens)
    alpha: Fraction | None
    #: smallest nonzero payoff of each child, recorded for the equal-cut series case
    child_minima: tuple[Fraction, ...]
    #: minimum cut size of the node
    cut: int


class NucleolusResult(t.NamedTuple):
    payoff: PayoffVector
    #: one step per decomposition node, children before parents
    trace: tuple[TraceStep, ...]
    #: minimum s-t edge cut size of the network
    min_cut: int

    @property
    def epsilon1(self) -> Fraction:
        return 1 - Fraction(1, self.min_cut)


class _Node(t.NamedTuple):
    payoff: dict[int, Fraction]
    cut: int
    smallest: Fraction


def _smallest_nonzero(payoff: dict[int, Fraction]) -> Fraction:
    positive = [x for x in payoff.values() if x]
    if not positive:
        msg = "a series-parallel component has no positive payoff"
        raise SolverError(msg)
    return min(positive)


def _combine(tree: SPTree, left: _Node, right: _Node) -> tuple[_Node, TraceStep]:
    cuts = (left.cut, right.cut)
    minima: tuple[Fraction, ...] = ()
    if isinstance(tree, SPSeries):
        if left.cut != right.cut:
            keep, drop = (left, right) if left.cut < right.cut else (right, left)
            payoff = {**dict.fromkeys(drop.payoff, _ZERO), **keep.payoff}
            node = _Node(payoff, keep.cut, keep.smallest)
            return node, TraceStep(NodeCase.SERIES_UNEQUAL, tree.source, tree.sink, cuts, None, minima, node.cut)
        case = NodeCase.SERIES_EQUAL
        alpha = right.smallest / (left.smallest + right.smallest)
        minima = (left.smallest, right.smallest)
        cut = left.cut
    else:
        case = NodeCase.PARALLEL
        alpha = Fraction(left.cut, left.cut + right.cut)
        cut = left.cut + right.cut

    payoff = {e: alpha * x for e, x in left.payoff.items()}
    payoff.update({e: (1 - alpha) * x for e, x in right.payoff.items()})
    node = _Node(payoff, cut, _smallest_nonzero(payoff))
    return node, TraceStep(case, tree.source, tree.sink, cuts, alpha, minima, cut)


def nucleolus_sp(g: Graph) -> NucleolusResult:
    """Nucleolus of the costless edge path game on an undirected series-parallel network.

    Works bottom-up over :func:`~path_games.graph.sp_decompose`: a leaf pays its edge 1; a series
    node keeps the child with the smaller minimum cut and pays the other child 0, or, on equal
    cuts, splits with ``alpha = m''/(m'+m'')`` over the children's smallest nonzero payoffs; a
    parallel node splits with ``alpha = c'/(c'+c'')`` over the children's minimum cut sizes.
    Edges on no simple s-t path receive 0.

    Raises:
        GraphError: If the network is directed or s and t are disconnected
        NotSeriesParallelError: If the network is not series-parallel
    """
    tree = sp_decompose(g)

    done: dict[int, _Node] = {}
    trace: list[TraceStep] = []
    stack: list[tuple[SPTree, bool]] = [(tree, False)]
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, SPLeaf):
            done[id(node)] = _Node({node.edge: _ONE}, 1, _ONE)
            trace.append(TraceStep(NodeCase.BASE, node.source, node.sink, (1,), None, (), 1))
            continue
        if not expanded:
            stack.extend(((node, True), (node.right, False), (node.left, False)))
            continue
        combined, step = _combine(node, done.pop(id(node.left)), done.pop(id(node.right)))
        done[id(node)] = combined
        trace.append(step)
        log.debug("nucleolus.node", case=step.case.value, cuts=list(step.child_cuts), alpha=str(step.alpha))

    root = done[id(tree)]
    payoff = PayoffVector(tuple(root.payoff.get(e, _ZERO) for e in range(g.edge_count)))
    return NucleolusResult(payoff, tuple(trace), root.cut)


def min_cut_membership(g: Graph) -> tuple[bool, ...]:
    """Per edge, whether some minimum-cardinality s-t edge cut contains it.

    Lowering one edge's weight to ``1 - 1/(2|E|)`` (all others 1) pushes the minimum cut below
    the unit minimum ``c`` exactly when that edge lies on a cut of size ``c``.
    """
    m = g.edge_count
    baseline = min_edge_cut(g, [_ONE] * m).weight
    if isinstance(baseline, Infinity) or baseline == 0:
        return (False,) * m

    lowered = 1 - Fraction(1, 2 * m)
    flags = []
    for e in range(m):
        weights = [_ONE] * m
        weights[e] = lowered
        flags.append(min_edge_cut(g, weights).weight < baseline)
    return tuple(flags)
