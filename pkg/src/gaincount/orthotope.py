"""Lattice points in orthotopes outside affinographic hyperplanes and row-affinographic subspaces.

A hyperplane x_j = x_i + a is the link v_i -> v_j with gain a. Colors are lattice points, lists are
the allowed values of a coordinate (or row), and bounds are principal-ideal filters.
"""

import itertools
from collections.abc import Iterable, Sequence
from math import prod
from typing import Any

import networkx as nx

from . import lattice
from .bitset import EdgeSubset, popcount
from .coloring import ColorFilter, list_chromatic
from .gain_graph import balanced_subsets, components, lat_b
from .lattice import Box, LatticeVector, format_vector
from .models import Edge, EdgeKind, GainGraph, WeightedGainGraph
from .polynomial import ONE, Polynomial, m_var
from .semigroups import ConeMinusFinite, FiniteList, PuncturedCone
from .switching import SwitchingFunction, contract, top_switching
from .utils import brute_force_limit, debug

Hyperplane = tuple[int, int, LatticeVector]
BoundMatrix = Sequence[LatticeVector]


class AffinographicArrangement:
    """Hyperplanes x_j = x_i + a in (Z^d)^n, vertices 0-based."""

    def __init__(self, n: int, d: int, hyperplanes: Iterable[Hyperplane] = ()):
        if n < 0 or d < 1:
            raise ValueError(f"Arrangement needs n >= 0 and d >= 1, got n={n}, d={d}")
        self.n = n
        self.d = d
        planes = []
        for k, (i, j, a) in enumerate(hyperplanes):
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"Hyperplane {k + 1} refers to coordinate outside 1..{n}")
            a = tuple(a)
            if len(a) != d:
                raise lattice.DimensionError(f"Hyperplane {k + 1} has a shift of dimension {len(a)}, expected {d}")
            if i == j and not any(a):
                raise ValueError(f"Hyperplane {k + 1} (x{i + 1} = x{i + 1}) is the whole space")
            planes.append((i, j, a))
        self.hyperplanes: tuple[Hyperplane, ...] = tuple(planes)

    def violated_by(self, x: Sequence[LatticeVector]) -> bool:
        """True when x lies on some hyperplane."""
        return any(x[j] == lattice.add(x[i], a) for i, j, a in self.hyperplanes)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "d": self.d,
            "hyperplanes": [{"i": i + 1, "j": j + 1, "a": list(a)} for i, j, a in self.hyperplanes],
        }

    def __eq__(self, other):
        if not isinstance(other, AffinographicArrangement):
            return NotImplemented
        return (self.n, self.d, self.hyperplanes) == (other.n, other.d, other.hyperplanes)

    def __hash__(self):
        return hash((self.n, self.d, self.hyperplanes))

    def __repr__(self):
        return f"AffinographicArrangement(n={self.n}, d={self.d}, hyperplanes={len(self.hyperplanes)})"


class Cofinite:
    """The nonnegative integers minus finitely many values."""

    def __init__(self, excluded: Iterable[int] = ()):
        self.excluded: frozenset[int] = frozenset(excluded)

    def cut(self, m: int) -> frozenset[int]:
        return frozenset(x for x in range(m + 1) if x not in self.excluded)

    def to_dict(self) -> dict[str, Any]:
        return {"cofinite": sorted(self.excluded)}

    def __eq__(self, other):
        return isinstance(other, Cofinite) and self.excluded == other.excluded

    def __hash__(self):
        return hash(("cofinite", self.excluded))

    def __repr__(self):
        return f"Cofinite({sorted(self.excluded)})"


BoundedList = frozenset | Cofinite


def arrangement_to_gain_graph(arr: AffinographicArrangement) -> GainGraph:
    edges = []
    for i, j, a in arr.hyperplanes:
        # A nonzero self-shift x_i = x_i + a is empty and becomes an unbalanced loop.
        edges.append(Edge.loop(i, a) if i == j else Edge.link(i, j, a))
    return GainGraph(arr.d, arr.n, edges)


def _lattice_terms(g: GainGraph) -> list[tuple[int, tuple[frozenset[int], ...], SwitchingFunction]]:
    """(mu, blocks, top switching) for every closed balanced set with nonzero Möbius value."""
    lat = lat_b(g)
    terms = []
    for b in lat:
        mu = lat.mu(b)
        if mu:
            terms.append((mu, components(g, b).blocks, top_switching(g, b)))
    return terms


def _scalar_bounds(arr: AffinographicArrangement, values: Sequence[int], name: str) -> list[int]:
    if arr.d != 1:
        raise ValueError(f"This count is for hyperplanes (d = 1), got d = {arr.d}")
    if len(values) != arr.n:
        raise ValueError(f"Expected {arr.n} values for {name}, got {len(values)}")
    return [int(v) for v in values]


def _interval_sum(arr: AffinographicArrangement, h: Sequence[int], m: Sequence[int]) -> int:
    g = arrangement_to_gain_graph(arr)
    total = 0
    for mu, blocks, eta in _lattice_terms(g):
        term = mu
        for block in blocks:
            top = min(m[v] + eta[v][0] for v in block)
            bottom = max(h[v] + eta[v][0] for v in block)
            term *= max(0, 1 + top - bottom)
        total += term
    return total


def count_orthotope(arr: AffinographicArrangement, m: Sequence[int]) -> int:
    """Integer points of [0, m_1] x ... x [0, m_n] on no hyperplane."""
    m = _scalar_bounds(arr, m, "m")
    if any(v < 0 for v in m):
        raise ValueError(f"Orthotope bounds must be nonnegative, got {m}")
    return _interval_sum(arr, [0] * arr.n, m)


def count_orthotope_intervals(arr: AffinographicArrangement, h: Sequence[int], m: Sequence[int]) -> int:
    """Integer points with h_i <= x_i <= m_i on no hyperplane."""
    return _interval_sum(arr, _scalar_bounds(arr, h, "h"), _scalar_bounds(arr, m, "m"))


def _points_bruteforce(arr: AffinographicArrangement, choices: list[list[LatticeVector]], limit: int | None) -> int:
    total = prod(len(c) for c in choices)
    cutoff = brute_force_limit(limit)
    if total > cutoff:
        raise ValueError(f"Brute force would enumerate {total} points, above the limit of {cutoff}")
    debug(f"Enumerating {total} candidate points")
    return sum(1 for x in itertools.product(*choices) if not arr.violated_by(x))


def count_orthotope_bruteforce(
    arr: AffinographicArrangement, m: Sequence[int], h: Sequence[int] | None = None, limit: int | None = None
) -> int:
    m = _scalar_bounds(arr, m, "m")
    h = [0] * arr.n if h is None else _scalar_bounds(arr, h, "h")
    return _points_bruteforce(arr, [[(x,) for x in range(lo, hi + 1)] for lo, hi in zip(h, m, strict=True)], limit)


def _vector_lists(arr: AffinographicArrangement, lists: Sequence[Iterable]) -> list[frozenset]:
    if len(lists) != arr.n:
        raise ValueError(f"Expected {arr.n} lists, got {len(lists)}")
    out = []
    for k, items in enumerate(lists):
        points = set()
        for x in items:
            x = (x,) if isinstance(x, int) else tuple(x)
            if len(x) != arr.d:
                raise lattice.DimensionError(f"List {k + 1} has a value of dimension {len(x)}, expected {arr.d}")
            points.add(x)
        out.append(frozenset(points))
    return out


def _list_weighted(arr: AffinographicArrangement, lists: list[frozenset]) -> WeightedGainGraph:
    return WeightedGainGraph(arrangement_to_gain_graph(arr), FiniteList(), lists)


def count_lists(arr: AffinographicArrangement, lists: Sequence[Iterable]) -> int:
    """Points of L_1 x ... x L_n on no hyperplane, by the alternating sum over balanced edge sets."""
    wg = _list_weighted(arr, _vector_lists(arr, lists))
    total = 0
    for b in balanced_subsets(wg.graph):
        total += (-1) ** popcount(b) * prod(len(w) for w in contract(wg, b).weights)
    return total


def count_lists_bruteforce(arr: AffinographicArrangement, lists: Sequence[Iterable], limit: int | None = None) -> int:
    return _points_bruteforce(arr, [sorted(s) for s in _vector_lists(arr, lists)], limit)


def _cut_lists(arr: AffinographicArrangement, lists: Sequence[BoundedList], m: Sequence[int]) -> list[frozenset]:
    m = _scalar_bounds(arr, m, "m")
    if len(lists) != arr.n:
        raise ValueError(f"Expected {arr.n} lists, got {len(lists)}")
    cut = []
    for k, (values, bound) in enumerate(zip(lists, m, strict=True)):
        if isinstance(values, Cofinite):
            cut.append(values.cut(bound))
            continue
        if any(x < 0 for x in values):
            raise ValueError(f"List {k + 1} has negative values; bounded lists are subsets of the nonnegative integers")
        cut.append(frozenset(x for x in values if x <= bound))
    return cut


def count_lists_bounded(arr: AffinographicArrangement, lists: Sequence[BoundedList], m: Sequence[int]) -> int:
    """Points of P cap (L_1 x ... x L_n) on no hyperplane, by Möbius inversion over closed balanced sets."""
    wg = _list_weighted(arr, _vector_lists(arr, _cut_lists(arr, lists, m)))
    lat = lat_b(wg.graph)
    total = 0
    for b in lat:
        mu = lat.mu(b)
        if mu:
            total += mu * prod(len(w) for w in contract(wg, b).weights)
    return total


def count_lists_bounded_bruteforce(
    arr: AffinographicArrangement, lists: Sequence[BoundedList], m: Sequence[int], limit: int | None = None
) -> int:
    cut = _cut_lists(arr, lists, m)
    return _points_bruteforce(arr, [[(x,) for x in sorted(s)] for s in cut], limit)


def alpha(g: GainGraph, j: int, i: int) -> LatticeVector | None:
    """Join of the gains of all simple paths from v_j to v_i; None when there is no path."""
    if j == i:
        return lattice.zero(g.d)
    graph = g.to_networkx()
    best = None
    for path in nx.all_simple_edge_paths(graph, j, i):
        gain = lattice.zero(g.d)
        for tail, _, key in path:
            gain = lattice.add(gain, g.edges[key].gain_from(tail))
        best = gain if best is None else lattice.join(best, gain)
    return best


def alpha_vertex(g: GainGraph, j: int) -> LatticeVector:
    """Join of the gains of all simple paths that begin at v_j, the trivial path included."""
    return lattice.join_all(a for i in range(g.n) if (a := alpha(g, j, i)) is not None)


def _cone_weights(wg: WeightedGainGraph) -> list[PuncturedCone]:
    if not isinstance(wg.semigroup, ConeMinusFinite):
        raise ValueError(f"Piecewise counting needs cone-minus-finite weights, got '{wg.semigroup.tag}'")
    return list(wg.weights)


def _require_orthotope_graph(g: GainGraph) -> None:
    for e in g.edges:
        if e.kind is EdgeKind.LOOSE:
            raise ValueError(f"Loose edge {e.label} is not allowed here")
        if e.kind is EdgeKind.HALF:
            raise ValueError(f"Half edge {e.label} is not allowed here")
        if e.kind is EdgeKind.LOOP and not any(e.gain):  # type: ignore[arg-type]
            raise ValueError(f"Balanced loop {e.label} is not allowed here")


def threshold(wg: WeightedGainGraph) -> tuple[LatticeVector, ...]:
    """Per vertex i, the join over j of hat(h_j) + alpha_ji."""
    cones = _cone_weights(wg)
    g = wg.graph
    result = []
    for i in range(g.n):
        candidates = []
        for j in range(g.n):
            a = alpha(g, j, i)
            if a is not None:
                candidates.append(lattice.add(cones[j].hat, a))
        result.append(lattice.join_all(candidates))
    return tuple(result)


def common_threshold(wg: WeightedGainGraph) -> LatticeVector:
    """Join over j of hat(h_j) + alpha_j."""
    cones = _cone_weights(wg)
    return lattice.join_all(lattice.add(cones[j].hat, alpha_vertex(wg.graph, j)) for j in range(wg.n))


def _check_bounds(wg: WeightedGainGraph, m: BoundMatrix) -> tuple[LatticeVector, ...]:
    if len(m) != wg.n:
        raise ValueError(f"Expected {wg.n} bound vectors, got {len(m)}")
    rows = tuple(tuple(row) for row in m)
    for k, row in enumerate(rows):
        if len(row) != wg.d:
            raise lattice.DimensionError(f"Bound {k + 1} has dimension {len(row)}, expected {wg.d}")
    return rows


def _excluded_in_cone(cones: list[PuncturedCone], block: frozenset[int], eta: SwitchingFunction) -> int:
    lo = lattice.join_all(lattice.add(cones[v].apex, eta[v]) for v in block)
    shifted = {lattice.add(x, eta[v]) for v in block for x in cones[v].exclusions}
    return sum(1 for x in shifted if lattice.leq(lo, x))


def _block_factor(
    cones: list[PuncturedCone], block: frozenset[int], eta: SwitchingFunction, m: tuple[LatticeVector, ...]
) -> int:
    box = 1
    for k in range(len(m[0])):
        top = min(m[v][k] + eta[v][k] for v in block)
        bottom = max(cones[v].apex[k] + eta[v][k] for v in block)
        box *= top - bottom + 1
    return box - _excluded_in_cone(cones, block, eta)


def _p_value(wg: WeightedGainGraph, m: tuple[LatticeVector, ...], terms=None) -> int:
    cones = _cone_weights(wg)
    terms = _lattice_terms(wg.graph) if terms is None else terms
    return sum(mu * prod(_block_factor(cones, block, eta, m) for block in blocks) for mu, blocks, eta in terms)


def _signature(wg: WeightedGainGraph, m: tuple[LatticeVector, ...], terms) -> tuple:
    """Which vertex attains each shifted minimum min_W (m_ik + eta(v_i)_k); ties go to the smallest vertex."""
    sig = []
    for _, blocks, eta in terms:
        for block in blocks:
            if len(block) < 2:
                continue
            for k in range(wg.d):
                sig.append(min(sorted(block), key=lambda v, k=k: m[v][k] + eta[v][k]))
    return tuple(sig)


def _geq_all(m: Sequence[LatticeVector], bound: Sequence[LatticeVector]) -> bool:
    return all(lattice.leq(b, x) for x, b in zip(m, bound, strict=True))


def chamber_base(
    wg: WeightedGainGraph, bound: Sequence[LatticeVector] | None = None, terms: list | None = None
) -> list[list[int]]:
    """Lowest corner of the chamber used by chamber_polynomial.

    Every vertex starts one step above the largest threshold coordinate, then vertex i is lifted by i*S.
    """
    _require_orthotope_graph(wg.graph)
    terms = _lattice_terms(wg.graph) if terms is None else terms
    bound = threshold(wg) if bound is None else bound
    spread = 2 * max((abs(c) for _, _, eta in terms for vec in eta for c in vec), default=0) + 3
    top = [max((bound[i][k] for i in range(wg.n)), default=0) for k in range(wg.d)]
    return [[top[k] + 1 + spread * i for k in range(wg.d)] for i in range(wg.n)]


def chamber_polynomial(wg: WeightedGainGraph, bound: Sequence[LatticeVector] | None = None) -> Polynomial:
    """Multilinear polynomial of p on the chamber where every vertex's bounds sit far above the previous one's.

    The chamber starts one step above the threshold; vertex i is shifted up by i*S with S larger than
    twice every switching value, so the order of shifted bounds is the same at every corner of the
    unit cube used for interpolation.
    """
    terms = _lattice_terms(wg.graph)
    base = chamber_base(wg, bound, terms)
    coords = [(i, k) for i in range(wg.n) for k in range(wg.d)]

    values: dict[tuple[int, ...], int] = {}
    for corner in itertools.product((0, 1), repeat=len(coords)):
        m = tuple(tuple(base[i][k] + corner[i * wg.d + k] for k in range(wg.d)) for i in range(wg.n))
        values[corner] = _p_value(wg, m, terms)

    result = Polynomial()
    for subset in itertools.product((0, 1), repeat=len(coords)):
        coef = 0
        for corner, value in values.items():
            if all(c <= s for c, s in zip(corner, subset, strict=True)):
                coef += (-1) ** (sum(subset) - sum(corner)) * value
        if not coef:
            continue
        term = Polynomial.constant(coef)
        for (i, k), chosen in zip(coords, subset, strict=True):
            if chosen:
                term = term * (m_var(i, k) - base[i][k])
        result = result + term
    debug(f"Chamber polynomial with {len(result.terms)} terms")
    return result


class PiecewiseEvaluation:
    """Value of p at m, its threshold, and which chamber m lies in."""

    def __init__(
        self,
        wg: WeightedGainGraph,
        m: tuple[LatticeVector, ...],
        value: int,
        bound: tuple[LatticeVector, ...],
        signature: tuple,
    ):
        self.wg = wg
        self.m = m
        self.value = value
        self.threshold = bound
        self.signature = signature

    @property
    def above_threshold(self) -> bool:
        return _geq_all(self.m, self.threshold)

    def chamber_polynomial(self) -> Polynomial:
        return chamber_polynomial(self.wg, self.threshold)

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "threshold": [list(t) for t in self.threshold],
            "above_threshold": self.above_threshold,
            "signature": [v + 1 for v in self.signature],
        }

    def __repr__(self):
        return f"PiecewiseEvaluation(value={self.value}, above_threshold={self.above_threshold})"


def chi_piecewise(wg: WeightedGainGraph, m: BoundMatrix) -> PiecewiseEvaluation:
    """p(m) = sum over closed balanced B of mu(empty, B) times, per block W, the shifted box size minus exclusions.

    Equals the list chromatic count whenever m is at or above the threshold.
    """
    _require_orthotope_graph(wg.graph)
    rows = _check_bounds(wg, m)
    terms = _lattice_terms(wg.graph)
    return PiecewiseEvaluation(wg, rows, _p_value(wg, rows, terms), threshold(wg), _signature(wg, rows, terms))


def list_count_under(wg: WeightedGainGraph, m: BoundMatrix) -> int:
    """Exact number of proper colorations x <= m."""
    return list_chromatic(wg, ColorFilter.ideals(_check_bounds(wg, m)))


class CommonBoundEvaluation:
    """p evaluated with every vertex bounded by the same m', with its polynomial in m'."""

    def __init__(self, m: LatticeVector, value: int, bound: LatticeVector, polynomial: Polynomial):
        self.m = m
        self.value = value
        self.threshold = bound
        self.polynomial = polynomial

    @property
    def above_threshold(self) -> bool:
        return lattice.leq(self.threshold, self.m)

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "threshold": list(self.threshold),
            "above_threshold": self.above_threshold,
            "polynomial": self.polynomial.to_dict(),
        }

    def __repr__(self):
        return f"CommonBoundEvaluation(value={self.value}, above_threshold={self.above_threshold})"


def common_bound_polynomial(wg: WeightedGainGraph) -> Polynomial:
    """p with every bound set to the same m', as a polynomial in the coordinates of m'."""
    _require_orthotope_graph(wg.graph)
    cones = _cone_weights(wg)
    total = Polynomial()
    for mu, blocks, eta in _lattice_terms(wg.graph):
        term = Polynomial.constant(mu)
        for block in blocks:
            box = ONE
            for k in range(wg.d):
                bottom = max(cones[v].apex[k] + eta[v][k] for v in block)
                box = box * (m_var(k) - bottom + 1)
            term = term * (box - _excluded_in_cone(cones, block, eta))
        total = total + term
    return total


def chi_common_bound(wg: WeightedGainGraph, m: LatticeVector) -> CommonBoundEvaluation:
    m = tuple(m)
    if len(m) != wg.d:
        raise lattice.DimensionError(f"Common bound has dimension {len(m)}, expected {wg.d}")
    poly = common_bound_polynomial(wg)
    value = poly.evaluate(lambda var: m[var[1]])
    return CommonBoundEvaluation(m, int(value), common_threshold(wg), poly)


def count_matrix(arr: AffinographicArrangement, h: BoundMatrix, m: BoundMatrix) -> int:
    """Integer matrices H <= X <= M whose rows avoid every subspace x_j = x_i + a."""
    wg = _matrix_weighted(arr, h, m)
    return list_chromatic(wg, ColorFilter.ideals(m))


def _matrix_weighted(arr: AffinographicArrangement, h: BoundMatrix, m: BoundMatrix) -> WeightedGainGraph:
    if len(h) != arr.n or len(m) != arr.n:
        raise ValueError(f"H and M need {arr.n} rows each")
    for k, (lo, hi) in enumerate(zip(h, m, strict=True)):
        if len(lo) != arr.d or len(hi) != arr.d:
            raise lattice.DimensionError(f"Row {k + 1} of H or M does not have {arr.d} entries")
        if not lattice.leq(tuple(lo), tuple(hi)):
            lo_text, hi_text = format_vector(tuple(lo)), format_vector(tuple(hi))
            raise ValueError(f"H is not below M in row {k + 1}: {lo_text} > {hi_text}")
    g = arrangement_to_gain_graph(arr)
    return WeightedGainGraph(g, ConeMinusFinite(), [PuncturedCone(tuple(row)) for row in h])


def count_matrix_bruteforce(
    arr: AffinographicArrangement, h: BoundMatrix, m: BoundMatrix, limit: int | None = None
) -> int:
    _matrix_weighted(arr, h, m)
    choices = [list(Box(tuple(lo), tuple(hi)).points()) for lo, hi in zip(h, m, strict=True)]
    return _points_bruteforce(arr, choices, limit)


def _require_simple_zero_gain(g: GainGraph) -> None:
    seen = set()
    for e in g.edges:
        if e.kind is not EdgeKind.LINK:
            raise ValueError(f"Edge {e.label} is a {e.kind.value} edge; a simple graph has links only")
        if any(e.gain):  # type: ignore[arg-type]
            raise ValueError(f"Edge {e.label} has a nonzero gain; expected a graph without gains")
        pair = frozenset((e.tail, e.head))
        if pair in seen:
            raise ValueError(f"Edge {e.label} is parallel to another edge; expected a simple graph")
        seen.add(pair)


def chi_graph_no_gains(wg: WeightedGainGraph, m: BoundMatrix) -> PiecewiseEvaluation:
    """p on a simple graph with zero gains; valid once every bound is at least the join of all hat(h_j)."""
    _require_simple_zero_gain(wg.graph)
    cones = _cone_weights(wg)
    rows = _check_bounds(wg, m)
    terms = _lattice_terms(wg.graph)
    top = lattice.join_all(c.hat for c in cones) if cones else ()
    bound = tuple(top for _ in range(wg.n))
    return PiecewiseEvaluation(wg, rows, _p_value(wg, rows, terms), bound, _signature(wg, rows, terms))


def orthozero_bound(wg: WeightedGainGraph, b: EdgeSubset) -> tuple[LatticeVector, ...]:
    """Per vertex j, the join over i in the block of j of h_i + eta(v_i) - eta(v_j), for the contraction by b."""
    cones = _cone_weights(wg)
    part = components(wg.graph, b)
    eta = top_switching(wg.graph, b)
    result = []
    for j in range(wg.n):
        block = part.blocks[part.block_of(j)]
        result.append(lattice.join_all(lattice.sub(lattice.add(cones[i].apex, eta[i]), eta[j]) for i in block))
    return tuple(result)
