"""Colorations of gain graphs by Z^d with list and filter restrictions.

The gain group acts on colors by translation. An edge e from v_i to v_j is improper for a coloration
x when x_j = x_i + phi(e). Counting paths accept either a list-weighted graph plus a ColorFilter or
a graph already weighted by pairs (list, filter).
"""

import itertools
from collections.abc import Iterable
from math import prod
from typing import Any

from . import lattice
from .bitset import EdgeSubset, popcount
from .dichromatic import evaluate, q_total_subset
from .gain_graph import UnbalancedSetError, balanced_subsets, components, lat_b
from .lattice import Ideal, LatticeVector
from .models import EdgeKind, GainGraph, WeightedGainGraph
from .semigroups import WHOLE, FilterElement, FilterSemigroup, ListSemigroup, PairSemigroup
from .switching import contract
from .utils import VerificationError, brute_force_limit, debug

Coloration = tuple[LatticeVector, ...]


class ColorFilter:
    """One filter M_i per vertex: a principal ideal, a finite set of colors, or every color."""

    def __init__(self, filters: Iterable[FilterElement]):
        self.filters: tuple[FilterElement, ...] = tuple(filters)

    @classmethod
    def ideals(cls, bounds: Iterable[LatticeVector]) -> "ColorFilter":
        return cls(Ideal(tuple(m)) for m in bounds)

    @classmethod
    def whole(cls, n: int) -> "ColorFilter":
        return cls([WHOLE] * n)

    @classmethod
    def from_dict(cls, payload: Any, d: int) -> "ColorFilter":
        if not isinstance(payload, list):
            raise ValueError("filter: expected a list with one filter per vertex")
        semigroup = FilterSemigroup()
        return cls(semigroup.parse(item, d, f"filter[{k}]") for k, item in enumerate(payload))

    def to_dict(self) -> list[dict[str, Any]]:
        semigroup = FilterSemigroup()
        return [semigroup.dump(f) for f in self.filters]

    def __len__(self):
        return len(self.filters)

    def __getitem__(self, i: int) -> FilterElement:
        return self.filters[i]

    def __eq__(self, other):
        return isinstance(other, ColorFilter) and self.filters == other.filters

    def __hash__(self):
        return hash(self.filters)

    def __repr__(self):
        return f"ColorFilter({list(self.filters)!r})"


def _require_plain_edges(g: GainGraph) -> None:
    extra = g.edges_of_kind(EdgeKind.HALF, EdgeKind.LOOSE)
    if extra:
        raise ValueError(
            f"Coloration counts are defined for graphs without half or loose edges, found {g.labels_of(extra)}"
        )


def improper_set(g: GainGraph, x: Coloration) -> EdgeSubset:
    """Edges whose endpoint colors differ by exactly the gain. Half and loose edges are never improper."""
    if len(x) != g.n:
        raise ValueError(f"Coloration has {len(x)} colors for {g.n} vertices")
    improper = 0
    for k, e in enumerate(g.edges):
        if e.kind in (EdgeKind.LINK, EdgeKind.LOOP):
            if x[e.head] == lattice.add(x[e.tail], e.gain):  # type: ignore[index,arg-type]
                improper |= 1 << k
    return improper


def doubly_weighted(wg: WeightedGainGraph, filt: ColorFilter) -> WeightedGainGraph:
    """Pairs every list weight with its vertex filter."""
    if not isinstance(wg.semigroup, ListSemigroup):
        raise ValueError(f"Filters apply to list weights, not to '{wg.semigroup.tag}'")
    if len(filt) != wg.n:
        raise ValueError(f"Filter has {len(filt)} entries for {wg.n} vertices")
    pairs = list(zip(wg.weights, filt.filters, strict=True))
    return WeightedGainGraph(wg.graph, PairSemigroup(wg.semigroup), pairs)


def _as_pair(wg: WeightedGainGraph, filt: ColorFilter | None) -> WeightedGainGraph:
    if isinstance(wg.semigroup, PairSemigroup):
        if filt is not None:
            raise ValueError("The graph already carries filters; do not pass another")
        return wg
    return doubly_weighted(wg, filt if filt is not None else ColorFilter.whole(wg.n))


def _sizes(pw: WeightedGainGraph) -> list[int]:
    semigroup = pw.semigroup
    assert isinstance(semigroup, PairSemigroup)
    return [semigroup.size(w) for w in pw.weights]


def effective_lists(wg: WeightedGainGraph, filt: ColorFilter | None = None) -> list[frozenset]:
    """h_i intersected with M_i at every vertex; raises InfiniteListError when one is infinite."""
    pw = _as_pair(wg, filt)
    semigroup = pw.semigroup
    assert isinstance(semigroup, PairSemigroup)
    return [semigroup.members(w) for w in pw.weights]


def _colorations(lists: list[frozenset], limit: int | None) -> Iterable[Coloration]:
    total = prod(len(s) for s in lists)
    cutoff = brute_force_limit(limit)
    if total > cutoff:
        raise ValueError(f"Brute force would enumerate {total} colorations, above the limit of {cutoff}")
    debug(f"Enumerating {total} colorations")
    return itertools.product(*(sorted(s) for s in lists))


def count_proper_bruteforce(wg: WeightedGainGraph, filt: ColorFilter | None = None, limit: int | None = None) -> int:
    _require_plain_edges(wg.graph)
    lists = effective_lists(wg, filt)
    return sum(1 for x in _colorations(lists, limit) if improper_set(wg.graph, x) == 0)


def _mobius_sum(pw: WeightedGainGraph) -> int:
    lat = lat_b(pw.graph)
    total = 0
    for b in lat:
        mu = lat.mu(b)
        if mu:
            total += mu * prod(_sizes(contract(pw, b)))
    return total


def _alternating_sum(pw: WeightedGainGraph) -> int:
    return sum((-1) ** popcount(b) * prod(_sizes(contract(pw, b))) for b in balanced_subsets(pw.graph))


def count_proper_mobius(wg: WeightedGainGraph, filt: ColorFilter | None = None) -> int:
    """Proper colorations by Möbius inversion over closed balanced sets, checked against the alternating form."""
    _require_plain_edges(wg.graph)
    pw = _as_pair(wg, filt)
    by_mobius = _mobius_sum(pw)
    by_subsets = _alternating_sum(pw)
    if by_mobius != by_subsets:
        raise VerificationError(f"Möbius sum {by_mobius} differs from alternating sum {by_subsets}")
    return by_mobius


def count_with_improper_exactly(wg: WeightedGainGraph, b: EdgeSubset, filt: ColorFilter | None = None) -> int:
    """Colorations whose improper set is exactly b, as proper colorations of the contraction by b."""
    _require_plain_edges(wg.graph)
    if not all(components(wg.graph, b).balanced):
        raise UnbalancedSetError(f"{wg.graph.labels_of(b)} is unbalanced; no coloration has it as improper set")
    return count_proper_mobius(contract(_as_pair(wg, filt), b))


def count_with_improper_exactly_bruteforce(
    wg: WeightedGainGraph, b: EdgeSubset, filt: ColorFilter | None = None, limit: int | None = None
) -> int:
    _require_plain_edges(wg.graph)
    lists = effective_lists(wg, filt)
    return sum(1 for x in _colorations(lists, limit) if improper_set(wg.graph, x) == b)


def list_chromatic(wg: WeightedGainGraph, filt: ColorFilter | None = None) -> int:
    """Sum over closed balanced B of mu(empty, B) times the filtered list sizes of the contraction by B."""
    _require_plain_edges(wg.graph)
    return _mobius_sum(_as_pair(wg, filt))


def chi_from_q(wg: WeightedGainGraph, filt: ColorFilter | None = None) -> int:
    """(-1)^n Q(v=-1, z=0) with each u-variable set to minus the size of its filtered list."""
    _require_plain_edges(wg.graph)
    pw = _as_pair(wg, filt)
    semigroup = pw.semigroup
    assert isinstance(semigroup, PairSemigroup)
    q = q_total_subset(pw)
    assignment = {key: -semigroup.size(semigroup.from_key(key)) for key in q.u_keys()}
    value = (-1) ** pw.n * evaluate(q, assignment, -1, 0)
    if value.denominator != 1:
        raise VerificationError(f"Chromatic evaluation is not an integer: {value}")
    return int(value)
