"""Semimatroid of graph balance inside the complete lift matroid.

Edge subsets over E_0 = E plus an extra point e_0 use bit position |E| for e_0. The extra point is
ordered above every edge.
"""

from collections.abc import Sequence
from typing import Any

from .bitset import EdgeSubset, all_subsets, bitset_to_indices, contains, is_subset, popcount
from .dichromatic import weight_monomial
from .gain_graph import components
from .models import GainGraph, WeightedGainGraph
from .polynomial import Y, Polynomial
from .switching import contract

EdgeOrdering = Sequence[int]


class IndependenceError(ValueError):
    pass


def e0_bit(g: GainGraph) -> int:
    return 1 << g.num_edges


def default_order(g: GainGraph) -> list[int]:
    return list(range(g.num_edges))


def _positions(g: GainGraph, order: EdgeOrdering) -> dict[int, int]:
    if sorted(order) != list(range(g.num_edges)):
        raise ValueError(f"Edge ordering must be a permutation of {g.num_edges} edges, got {list(order)}")
    pos = {e: k for k, e in enumerate(order)}
    pos[g.num_edges] = g.num_edges
    return pos


def lift_rank(g: GainGraph, s: EdgeSubset, with_e0: bool = False) -> int:
    """Rank in the complete lift matroid; half edges act as unbalanced loops, loose edges as balanced loops."""
    e0 = e0_bit(g)
    with_e0 = with_e0 or bool(s & e0)
    part = components(g, s & ~e0)
    rank = g.n - part.c
    if with_e0 or part.b != part.c:
        rank += 1
    return rank


def is_independent(g: GainGraph, s: EdgeSubset) -> bool:
    return popcount(s) == lift_rank(g, s)


def is_balanced0(g: GainGraph, s: EdgeSubset) -> bool:
    """Balance for subsets of E_0: e_0 counts as unbalanced."""
    if s & e0_bit(g):
        return False
    part = components(g, s)
    return part.b == part.c


def lift_closure(g: GainGraph, s: EdgeSubset) -> EdgeSubset:
    rank = lift_rank(g, s)
    closed = s
    for k in range(g.num_edges + 1):
        bit = 1 << k
        if not s & bit and lift_rank(g, s | bit) == rank:
            closed |= bit
    return closed


def _require_independent(g: GainGraph, f: EdgeSubset) -> None:
    if not is_independent(g, f):
        raise IndependenceError(f"{g.labels_of(f & ~e0_bit(g))} is not independent in the lift matroid")


def fundamental_circuit(g: GainGraph, f: EdgeSubset, e: int) -> EdgeSubset:
    """The unique circuit inside f plus e."""
    _require_independent(g, f)
    bit = 1 << e
    if contains(f, e) or not contains(lift_closure(g, f), e):
        raise IndependenceError(f"Edge {e + 1} is not in the closure of F minus F")
    circuit = bit
    for x in bitset_to_indices(f):
        if is_independent(g, (f | bit) & ~(1 << x)):
            circuit |= 1 << x
    return circuit


def fundamental_cocircuit(g: GainGraph, f: EdgeSubset, x: int) -> EdgeSubset:
    """clos(F) minus clos(F - x)."""
    _require_independent(g, f)
    if not contains(f, x):
        raise IndependenceError(f"Edge {x + 1} is not in F")
    return lift_closure(g, f) & ~lift_closure(g, f & ~(1 << x))


class ActivityReport:
    """Internal and external activity of an independent set relative to an edge ordering."""

    def __init__(self, ea: EdgeSubset, ia: EdgeSubset, ii: EdgeSubset, ei: EdgeSubset):
        self.ea = ea
        self.ia = ia
        self.ii = ii
        self.ei = ei

    @property
    def epsilon(self) -> int:
        return popcount(self.ea)

    @property
    def iota(self) -> int:
        return popcount(self.ia)

    def to_dict(self, g: GainGraph | None = None) -> dict[str, Any]:
        def show(s: EdgeSubset):
            return g.labels_of(s & ~e0_bit(g)) if g is not None else bitset_to_indices(s)

        return {
            "EA": show(self.ea),
            "IA": show(self.ia),
            "II": show(self.ii),
            "EI": show(self.ei),
            "epsilon": self.epsilon,
            "iota": self.iota,
        }

    def __repr__(self):
        return f"ActivityReport(epsilon={self.epsilon}, iota={self.iota})"


def _largest(s: EdgeSubset, pos: dict[int, int]) -> int:
    return max(bitset_to_indices(s), key=pos.__getitem__)


def activities0(g: GainGraph, f: EdgeSubset, order: EdgeOrdering) -> ActivityReport:
    """Activities of any independent subset of E_0."""
    pos = _positions(g, order)
    _require_independent(g, f)
    closure = lift_closure(g, f)
    ea = ei = ia = ii = 0
    for e in bitset_to_indices(closure & ~f):
        if _largest(fundamental_circuit(g, f, e), pos) == e:
            ea |= 1 << e
        else:
            ei |= 1 << e
    for x in bitset_to_indices(f):
        if _largest(fundamental_cocircuit(g, f, x), pos) == x:
            ia |= 1 << x
        else:
            ii |= 1 << x
    return ActivityReport(ea, ia, ii, ei)


def _require_balanced_independent(g: GainGraph, f: EdgeSubset) -> None:
    if not is_balanced0(g, f) or not is_independent(g, f):
        raise IndependenceError(f"{g.labels_of(f & ~e0_bit(g))} is not a balanced independent set")


def activities(g: GainGraph, f: EdgeSubset, order: EdgeOrdering) -> ActivityReport:
    _require_balanced_independent(g, f)
    return activities0(g, f, order)


def minimal_basis(g: GainGraph, s: EdgeSubset, order: EdgeOrdering) -> EdgeSubset:
    """Greedy basis of s taken in the order O (e_0 last)."""
    pos = _positions(g, order)
    basis = 0
    for e in sorted(bitset_to_indices(s), key=pos.__getitem__):
        if is_independent(g, basis | 1 << e):
            basis |= 1 << e
    return basis


def reverse_greedy_extension(g: GainGraph, f: EdgeSubset, order: EdgeOrdering) -> EdgeSubset:
    """Scan E - F from the top of O, keeping each edge that leaves the set balanced and independent."""
    pos = _positions(g, order)
    _require_balanced_independent(g, f)
    t = f
    for e in sorted(range(g.num_edges), key=pos.__getitem__, reverse=True):
        if contains(t, e):
            continue
        candidate = t | 1 << e
        if is_balanced0(g, candidate) and is_independent(g, candidate):
            t = candidate
    return t


def spanning_forests(g: GainGraph) -> list[EdgeSubset]:
    """All balanced independent edge sets."""
    return [s for s in all_subsets(g.num_edges) if is_balanced0(g, s) and is_independent(g, s)]


def balanced_circuits(g: GainGraph) -> list[EdgeSubset]:
    """Circuits of the lift matroid that are balanced edge sets."""
    found = []
    for s in range(1, 1 << g.num_edges):
        if not is_balanced0(g, s) or is_independent(g, s):
            continue
        if all(is_independent(g, s & ~(1 << x)) for x in bitset_to_indices(s)):
            found.append(s)
    return found


def broken_circuit(c: EdgeSubset, order: EdgeOrdering, g: GainGraph) -> EdgeSubset:
    return c & ~(1 << _largest(c, _positions(g, order)))


def forest_expansion(wg: WeightedGainGraph, order: EdgeOrdering | None = None) -> Polynomial:
    """Sum over spanning forests F of y^epsilon(F) times the u-variables of the contracted weights."""
    g = wg.graph
    order = default_order(g) if order is None else order
    total = Polynomial()
    for f in spanning_forests(g):
        eps = activities(g, f, order).epsilon
        total = total + Y**eps * weight_monomial(contract(wg, f))
    return total


def interval_holds(
    g: GainGraph, f: EdgeSubset, s: EdgeSubset, order: EdgeOrdering, report: ActivityReport | None = None
) -> bool:
    """Whether F is contained in S and S lies inside F plus EA_0(F).

    ``report`` may carry the already computed zero-activities of F.
    """
    if not is_subset(f, s):
        return False
    report = activities0(g, f, order) if report is None else report
    return is_subset(s, f | report.ea)
