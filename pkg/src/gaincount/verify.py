"""Randomized oracle-equivalence suites.

Every suite draws small instances from a seeded ``random.Random`` and checks that two independent
computations agree, or that a structural identity holds exactly. The ``verify`` command and the
test suite run the same code.
"""

import itertools
import json
import random
from collections.abc import Callable, Iterable
from pathlib import Path
from typing import Any

from . import lattice
from .activities import (
    activities,
    activities0,
    balanced_circuits,
    broken_circuit,
    forest_expansion,
    fundamental_circuit,
    interval_holds,
    is_balanced0,
    is_independent,
    lift_closure,
    lift_rank,
    minimal_basis,
    reverse_greedy_extension,
    spanning_forests,
)
from .bitset import all_subsets, bitset_to_indices, contains, is_subset, popcount
from .coloring import (
    ColorFilter,
    chi_from_q,
    count_proper_bruteforce,
    count_proper_mobius,
    count_with_improper_exactly,
    count_with_improper_exactly_bruteforce,
    doubly_weighted,
    improper_set,
    list_chromatic,
)
from .dichromatic import collapse_u, gain_graph_dichromatic, q_graph, q_total_delcon, q_total_subset, weight_monomial
from .gain_graph import balanced_closure, balanced_subsets, components, is_balanced, lat_b
from .lattice import Ideal
from .main import write_graph
from .models import Edge, EdgeKind, GainGraph, WeightedGainGraph
from .orthotope import (
    AffinographicArrangement,
    Cofinite,
    arrangement_to_gain_graph,
    chamber_base,
    chamber_polynomial,
    chi_piecewise,
    count_lists,
    count_lists_bounded,
    count_lists_bounded_bruteforce,
    count_lists_bruteforce,
    count_matrix,
    count_matrix_bruteforce,
    count_orthotope,
    count_orthotope_bruteforce,
    count_orthotope_intervals,
    list_count_under,
    orthozero_bound,
    threshold,
)
from .polynomial import ONE, V, m_var
from .semigroups import (
    WHOLE,
    ConeMinusFinite,
    FilterSemigroup,
    FiniteList,
    MaxZd,
    PairSemigroup,
    PuncturedCone,
    SumZd,
    WeightSemigroup,
)
from .switching import contract, delete, switched_gain, top_switching
from .utils import VerificationError, debug

ALL_KINDS = (EdgeKind.LINK, EdgeKind.LOOP, EdgeKind.HALF, EdgeKind.LOOSE)
PLAIN_KINDS = (EdgeKind.LINK, EdgeKind.LOOP)
KIND_WEIGHTS = {EdgeKind.LINK: 6, EdgeKind.LOOP: 1, EdgeKind.HALF: 1, EdgeKind.LOOSE: 1}

# Instances per suite when --count is not given.
DEFAULT_COUNTS = {
    "expansion": 200,
    "tree": 100,
    "coloring": 200,
    "contracted-proper": 50,
    "geometry": 100,
    "orthotope-theorem": 30,
    "structure": 25,
    "nwgen": 60,
}

# (max vertices, max edges, max dimension) per suite.
DEFAULT_CAPS = {
    "expansion": (4, 5, 2),
    "tree": (4, 5, 2),
    "coloring": (4, 5, 2),
    "contracted-proper": (4, 5, 2),
    "geometry": (4, 5, 1),
    "orthotope-theorem": (3, 3, 2),
    "structure": (4, 5, 2),
    "nwgen": (4, 5, 2),
}

# Grids above the threshold larger than this are sampled instead of enumerated.
MAX_GRID_POINTS = 1024


class SuiteResult:
    """Pass and failure tally for one suite; failing instances can be written to a directory."""

    def __init__(self, name: str, dump_dir: Path | None = None):
        self.name = name
        self.passed = 0
        self.failures: list[str] = []
        self.dump_dir = dump_dir

    @property
    def failed(self) -> int:
        return len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, condition: bool, message: str, instance: Any = None, filt: ColorFilter | None = None) -> bool:
        if condition:
            self.passed += 1
            return True
        self.fail(message, instance, filt)
        return False

    def fail(self, message: str, instance: Any = None, filt: ColorFilter | None = None):
        self.failures.append(message)
        debug(f"{self.name}: {message}")
        if self.dump_dir is not None and instance is not None:
            self._dump(instance, filt)

    def _dump(self, instance: Any, filt: ColorFilter | None):
        self.dump_dir.mkdir(parents=True, exist_ok=True)  # type: ignore[union-attr]
        path = self.dump_dir / f"{self.name}-{len(self.failures)}.json"  # type: ignore[operator]
        if isinstance(instance, WeightedGainGraph):
            write_graph(instance, str(path), filt)
        else:
            path.write_text(json.dumps(instance.to_dict(), indent=2) + "\n")

    def to_dict(self) -> dict[str, Any]:
        return {"suite": self.name, "passed": self.passed, "failed": self.failed, "failures": self.failures}

    def __repr__(self):
        return f"SuiteResult({self.name}: {self.passed} passed, {self.failed} failed)"


class SuiteConfig:
    """Seeded generator settings shared by the checks of one suite."""

    def __init__(self, name: str, seed: int, count: int, max_n: int, max_e: int, max_d: int):
        self.rng = random.Random(f"{seed}:{name}")
        self.count = count
        self.max_n = max_n
        self.max_e = max_e
        self.max_d = max_d


# Generators


def random_vector(rng: random.Random, d: int, lo: int = -2, hi: int = 2) -> lattice.LatticeVector:
    return tuple(rng.randint(lo, hi) for _ in range(d))


def random_gain_graph(
    rng: random.Random,
    max_n: int,
    max_e: int,
    max_d: int,
    kinds: Iterable[EdgeKind] = ALL_KINDS,
    gain_range: int = 2,
    zero_gains: bool = False,
    d: int | None = None,
) -> GainGraph:
    """A small gain graph; links are drawn most often."""
    kinds = list(kinds)
    d = rng.randint(1, max_d) if d is None else d
    n = rng.randint(1, max_n)
    edges = []
    for _ in range(rng.randint(0, max_e)):
        kind = rng.choices(kinds, weights=[KIND_WEIGHTS[k] for k in kinds])[0]
        if kind is EdgeKind.LINK and n < 2:
            kind = EdgeKind.LOOP if EdgeKind.LOOP in kinds else None
        if kind is None:
            continue
        gain = lattice.zero(d) if zero_gains else random_vector(rng, d, -gain_range, gain_range)
        if kind is EdgeKind.LINK:
            tail, head = rng.sample(range(n), 2)
            edges.append(Edge.link(tail, head, gain))
        elif kind is EdgeKind.LOOP:
            edges.append(Edge.loop(rng.randrange(n), gain))
        elif kind is EdgeKind.HALF:
            edges.append(Edge.half(rng.randrange(n)))
        else:
            edges.append(Edge.loose())
    return GainGraph(d, n, edges)


def random_weighted_graph(
    rng: random.Random, semigroup: WeightSemigroup, max_n: int, max_e: int, max_d: int, **kwargs
) -> WeightedGainGraph:
    g = random_gain_graph(rng, max_n, max_e, max_d, **kwargs)
    return WeightedGainGraph(g, semigroup, [semigroup.random_element(rng, g.d) for _ in range(g.n)])


def random_order(rng: random.Random, g: GainGraph) -> list[int]:
    order = list(range(g.num_edges))
    rng.shuffle(order)
    return order


def random_filter(rng: random.Random, d: int):
    """An ideal, a finite set, or the whole lattice."""
    choice = rng.random()
    if choice < 0.6:
        return Ideal(random_vector(rng, d, 0, 4))
    if choice < 0.85:
        return frozenset(random_vector(rng, d, 0, 3) for _ in range(rng.randint(0, 5)))
    return WHOLE


def random_arrangement(
    rng: random.Random, max_n: int, max_planes: int, d: int = 1, shift: int = 3
) -> AffinographicArrangement:
    n = rng.randint(1, max_n)
    planes = []
    for _ in range(rng.randint(0, max_planes)):
        if n >= 2 and rng.random() < 0.9:
            i, j = rng.sample(range(n), 2)
            planes.append((i, j, random_vector(rng, d, -shift, shift)))
        else:
            a = random_vector(rng, d, -shift, shift)
            if not any(a):
                a = (1, *a[1:])
            v = rng.randrange(n)
            planes.append((v, v, a))
    return AffinographicArrangement(n, d, planes)


def random_cone_graph(rng: random.Random, max_n: int, max_e: int, max_d: int) -> WeightedGainGraph:
    """Links and unbalanced loops weighted by cones with at most two excluded points."""
    g = random_gain_graph(rng, max_n, max_e, max_d, kinds=PLAIN_KINDS)
    edges = []
    for e in g.edges:
        if e.kind is EdgeKind.LOOP and not any(e.gain):  # type: ignore[arg-type]
            e = Edge.loop(e.tail, (1, *e.gain[1:]), e.label)  # type: ignore[arg-type,index]
        edges.append(e)
    g = g.with_edges(edges)
    semigroup = ConeMinusFinite()
    return WeightedGainGraph(g, semigroup, [semigroup.random_element(rng, g.d) for _ in range(g.n)])


def _drop_balanced_digons(g: GainGraph, order: list[int]) -> tuple[GainGraph, list[int]]:
    """Keeps the first of parallel links with equal gains; ``order`` is carried over by label."""
    kept: list[Edge] = []
    for e in g.edges:
        if e.kind is EdgeKind.LINK and any(
            f.kind is EdgeKind.LINK
            and {f.tail, f.head} == {e.tail, e.head}
            and f.gain_from(e.tail) == e.gain  # type: ignore[arg-type]
            for f in kept
        ):
            continue
        kept.append(e)
    position = {e.label: k for k, e in enumerate(kept)}
    kept_order = [position[g.edges[e].label] for e in order if g.edges[e].label in position]
    return g.with_edges(kept), kept_order


def _attempt(result: SuiteResult, label: str, fn: Callable[[], None], instance: Any = None):
    try:
        fn()
    except (ValueError, VerificationError) as e:
        result.fail(f"{label}: {type(e).__name__}: {e}", instance)


# Suites


def check_expansion(cfg: SuiteConfig, result: SuiteResult):
    """Subset expansion against deletion-contraction, and the collapse to the rank-based polynomial."""
    for k in range(cfg.count):
        semigroup = MaxZd() if k % 2 == 0 else SumZd()
        wg = random_weighted_graph(cfg.rng, semigroup, cfg.max_n, cfg.max_e, cfg.max_d)

        def run(wg=wg, k=k):
            q = q_total_subset(wg)
            result.check(q == q_total_delcon(wg), f"instance {k}: subset and deletion-contraction differ", wg)
            collapsed = collapse_u(q)
            result.check(
                collapsed.substitute(("z",), 0) == gain_graph_dichromatic(wg.graph, balanced_only=True),
                f"instance {k}: Q(u, v, 0) does not match the balanced rank expansion",
                wg,
            )
            result.check(
                collapsed.substitute(("z",), 1) == gain_graph_dichromatic(wg.graph, balanced_only=False),
                f"instance {k}: Q(u, v, 1) does not match the full rank expansion",
                wg,
            )

        _attempt(result, f"instance {k}", run, wg)


def check_tree(cfg: SuiteConfig, result: SuiteResult, orders_per_graph: int = 5):
    """The forest expansion under several orderings equals Q(u, y - 1, 0)."""
    for k in range(cfg.count):
        semigroup = MaxZd() if k % 2 == 0 else SumZd()
        wg = random_weighted_graph(cfg.rng, semigroup, cfg.max_n, cfg.max_e, cfg.max_d)
        orders = [random_order(cfg.rng, wg.graph) for _ in range(orders_per_graph)]

        def run(wg=wg, k=k, orders=orders):
            expected = q_total_subset(wg).substitute(("z",), 0)
            for order in orders:
                forest = forest_expansion(wg, order).substitute(("y",), V + 1)
                result.check(forest == expected, f"instance {k}: forest expansion differs for order {order}", wg)

        _attempt(result, f"instance {k}", run, wg)


def _coloring_instance(cfg: SuiteConfig, k: int) -> tuple[WeightedGainGraph, ColorFilter | None]:
    rng = cfg.rng
    if k % 4 == 3:
        wg = random_weighted_graph(rng, ConeMinusFinite(), min(cfg.max_n, 3), cfg.max_e, cfg.max_d, kinds=PLAIN_KINDS)
        filt = ColorFilter(Ideal(tuple(a + rng.randint(0, 2) for a in w.apex)) for w in wg.weights)
        return wg, filt
    wg = random_weighted_graph(rng, FiniteList(), cfg.max_n, cfg.max_e, cfg.max_d, kinds=PLAIN_KINDS)
    if rng.random() < 0.5:
        return wg, None
    return wg, ColorFilter(random_filter(rng, wg.d) for _ in range(wg.n))


def check_coloring(cfg: SuiteConfig, result: SuiteResult):
    """Brute force, Möbius inversion and the dichromatic evaluation count the same colorations."""
    for k in range(cfg.count):
        wg, filt = _coloring_instance(cfg, k)

        def run(wg=wg, filt=filt, k=k):
            brute = count_proper_bruteforce(wg, filt)
            mobius = count_proper_mobius(wg, filt)
            from_q = chi_from_q(wg, filt)
            paired = list_chromatic(doubly_weighted(wg, filt if filt is not None else ColorFilter.whole(wg.n)))
            result.check(
                brute == mobius == from_q == paired,
                f"instance {k}: brute {brute}, Möbius {mobius}, from Q {from_q}, paired {paired}",
                wg,
                filt,
            )

        _attempt(result, f"instance {k}", run, wg)


def check_contracted_proper(cfg: SuiteConfig, result: SuiteResult):
    """Colorations with improper set exactly B are the proper colorations of the contraction by B."""
    for k in range(cfg.count):
        wg = random_weighted_graph(cfg.rng, FiniteList(), cfg.max_n, cfg.max_e, cfg.max_d, kinds=PLAIN_KINDS)

        def run(wg=wg, k=k):
            for b in balanced_subsets(wg.graph):
                brute = count_with_improper_exactly_bruteforce(wg, b)
                contracted = count_with_improper_exactly(wg, b)
                labels = wg.graph.labels_of(b)
                message = f"instance {k}, B={labels}: brute {brute}, contracted {contracted}"
                result.check(brute == contracted, message, wg)

        _attempt(result, f"instance {k}", run, wg)


def _random_bounded_list(rng: random.Random):
    values = rng.sample(range(7), rng.randint(0, 4))
    if rng.random() < 0.5:
        return Cofinite(values[:2])
    return frozenset(values)


def check_geometry(cfg: SuiteConfig, result: SuiteResult):
    """Every lattice-point count against enumeration."""
    rng = cfg.rng
    for k in range(cfg.count):
        arr = random_arrangement(rng, cfg.max_n, cfg.max_e)
        m = [rng.randint(0, 6) for _ in range(arr.n)]
        h = [rng.randint(-2, mi) for mi in m]
        lists = [frozenset(rng.sample(range(-3, 4), rng.randint(0, 4))) for _ in range(arr.n)]
        bounded = [_random_bounded_list(rng) for _ in range(arr.n)]

        def run(arr=arr, m=m, h=h, lists=lists, bounded=bounded, k=k):
            brute = count_orthotope_bruteforce(arr, m)
            result.check(count_orthotope(arr, m) == brute, f"instance {k}: orthotope count at m={m}", arr)
            g = arrangement_to_gain_graph(arr)
            cones = WeightedGainGraph(g, ConeMinusFinite(), [PuncturedCone((0,))] * arr.n)
            chromatic = list_chromatic(cones, ColorFilter.ideals((x,) for x in m))
            result.check(chromatic == brute, f"instance {k}: list chromatic {chromatic} != {brute}", arr)
            result.check(
                count_orthotope_intervals(arr, h, m) == count_orthotope_bruteforce(arr, m, h),
                f"instance {k}: interval count for h={h}, m={m}",
                arr,
            )
            result.check(
                count_lists(arr, lists) == count_lists_bruteforce(arr, lists),
                f"instance {k}: list count for {[sorted(s) for s in lists]}",
                arr,
            )
            result.check(
                count_lists_bounded(arr, bounded, m) == count_lists_bounded_bruteforce(arr, bounded, m),
                f"instance {k}: bounded list count for {bounded} at m={m}",
                arr,
            )

        _attempt(result, f"instance {k}", run, arr)

        matrix = random_arrangement(rng, min(cfg.max_n, 3), cfg.max_e, d=rng.randint(1, 2), shift=2)
        lo = [random_vector(rng, matrix.d) for _ in range(matrix.n)]
        hi = [tuple(x + rng.randint(0, 3) for x in row) for row in lo]

        def run_matrix(arr=matrix, lo=lo, hi=hi, k=k):
            counted = count_matrix(arr, lo, hi)
            brute = count_matrix_bruteforce(arr, lo, hi)
            result.check(counted == brute, f"instance {k}: matrix count {counted} != {brute} for H={lo}, M={hi}", arr)

        _attempt(result, f"matrix instance {k}", run_matrix, matrix)


def _grid(rng: random.Random, lo: tuple, span: int) -> list[tuple[lattice.LatticeVector, ...]]:
    n, d = len(lo), len(lo[0]) if lo else 0
    axes = [range(lo[i][c], lo[i][c] + span + 1) for i in range(n) for c in range(d)]
    size = (span + 1) ** (n * d)
    if size <= MAX_GRID_POINTS:
        flats = list(itertools.product(*axes))
    else:
        flats = [tuple(rng.choice(axis) for axis in axes) for _ in range(MAX_GRID_POINTS)]
    return [tuple(tuple(flat[i * d + c] for c in range(d)) for i in range(n)) for flat in flats]


def _shift(point: list[list[int]], offsets: dict[tuple[int, int], int]) -> tuple[lattice.LatticeVector, ...]:
    return tuple(
        tuple(x + offsets.get((i, c), 0) for c, x in enumerate(row)) for i, row in enumerate(point)
    )


def check_orthotope_theorem(cfg: SuiteConfig, result: SuiteResult, span: int = 3):
    """p agrees with the exact count above the threshold and is a multilinear polynomial on a chamber."""
    rng = cfg.rng
    for k in range(cfg.count):
        wg = random_cone_graph(rng, cfg.max_n, cfg.max_e, cfg.max_d)

        def run(wg=wg, k=k):
            bound = threshold(wg)
            for m in _grid(rng, bound, span):
                p = chi_piecewise(wg, m).value
                exact = list_count_under(wg, m)
                if not result.check(p == exact, f"instance {k}: p={p} but {exact} colorations below m={m}", wg):
                    return

            base = chamber_base(wg, bound)
            coords = [(i, c) for i in range(wg.n) for c in range(wg.d)]

            def p_at(offsets: dict[tuple[int, int], int]) -> int:
                return chi_piecewise(wg, _shift(base, offsets)).value

            for coord in coords:
                second = p_at({coord: 2}) - 2 * p_at({coord: 1}) + p_at({})
                result.check(second == 0, f"instance {k}: second difference {second} along {coord}", wg)

            poly = chamber_polynomial(wg, bound)
            top = ONE
            for i, c in coords:
                top = top * m_var(i, c)
            (top_mono,) = top.terms
            result.check(poly.coefficient(top_mono) == 1, f"instance {k}: leading coefficient is not 1", wg)
            for _ in range(4):
                offsets = {coord: rng.randint(0, 2) for coord in coords}
                point = _shift(base, offsets)
                value = poly.evaluate(lambda var, point=point: point[var[1]][var[2]])
                result.check(value == p_at(offsets), f"instance {k}: chamber polynomial differs at {point}", wg)

            _check_orthozero(wg, result, k, rng)

        _attempt(result, f"instance {k}", run, wg)


def _check_orthozero(wg: WeightedGainGraph, result: SuiteResult, k: int, rng: random.Random):
    """A block's filtered list is empty whenever its vertex bound is not reached."""
    for _ in range(3):
        m = tuple(tuple(a + rng.randint(-2, 2) for a in w.apex) for w in wg.weights)
        pw = doubly_weighted(wg, ColorFilter.ideals(m))
        for b in lat_b(wg.graph):
            bound = orthozero_bound(wg, b)
            contracted = contract(pw, b)
            semigroup = contracted.semigroup
            assert isinstance(semigroup, PairSemigroup)
            part = components(wg.graph, b)
            for j in range(wg.n):
                if lattice.leq(bound[j], m[j]):
                    continue
                size = semigroup.size(contracted.weights[part.block_of(j)])
                result.check(size == 0, f"instance {k}: block of vertex {j + 1} has {size} colors below m={m}", wg)


# Structure checks


def _repeated_ops(cfg: SuiteConfig, result: SuiteResult, k: int):
    semigroup = MaxZd() if k % 2 == 0 else SumZd()
    wg = random_weighted_graph(cfg.rng, semigroup, cfg.max_n + 1, cfg.max_e + 1, cfg.max_d)
    q = r = 0
    for e in range(wg.graph.num_edges):
        choice = cfg.rng.randrange(3)
        if choice == 0:
            q |= 1 << e
        elif choice == 1:
            r |= 1 << e

    def run():
        once = contract(wg, q)
        twice = contract(once, once.graph.mask_for_labels(wg.graph.labels_of(r)))
        result.check(
            twice == contract(wg, q | r),
            f"instance {k}: contracting Q={wg.graph.labels_of(q)} then R={wg.graph.labels_of(r)} differs",
            wg,
        )
        r_labels = wg.graph.labels_of(r)
        without_q = delete(wg, q)
        pruned = delete(without_q, without_q.graph.mask_for_labels(r_labels))
        result.check(pruned == delete(wg, q | r), f"instance {k}: repeated deletion differs", wg)
        without_r = delete(wg, r)
        mixed = contract(without_r, without_r.graph.mask_for_labels(wg.graph.labels_of(q)))
        result.check(
            delete(once, once.graph.mask_for_labels(r_labels)) == mixed,
            f"instance {k}: deleting R after contracting Q differs from the reverse order",
            wg,
        )

    _attempt(result, f"repeated operations {k}", run, wg)


def _top_switching(cfg: SuiteConfig, result: SuiteResult, k: int):
    g = random_gain_graph(cfg.rng, cfg.max_n, cfg.max_e, cfg.max_d, gain_range=1)
    s = cfg.rng.getrandbits(g.num_edges) if g.num_edges else 0
    if not is_balanced(g, s):
        return
    eta = top_switching(g, s)
    for block in components(g, s).blocks:
        meet = lattice.meet_all(eta[v] for v in block)
        result.check(meet == lattice.zero(g.d), f"instance {k}: top switching has meet {meet} on a block")
    for e in bitset_to_indices(s):
        edge = g.edges[e]
        if edge.has_gain:
            result.check(
                switched_gain(edge, eta) == lattice.zero(g.d), f"instance {k}: edge {edge.label} keeps a gain"
            )


def _improper(cfg: SuiteConfig, result: SuiteResult, k: int):
    g = random_gain_graph(cfg.rng, cfg.max_n, cfg.max_e, cfg.max_d, kinds=PLAIN_KINDS, gain_range=1)
    x = tuple(random_vector(cfg.rng, g.d, 0, 2) for _ in range(g.n))
    bad = improper_set(g, x)
    balanced = is_balanced(g, bad)
    result.check(balanced, f"instance {k}: improper set of {x} is unbalanced")
    if balanced:
        result.check(balanced_closure(g, bad) == bad, f"instance {k}: improper set of {x} is not closed")


def _lift_rank_axioms(g: GainGraph, result: SuiteResult, k: int):
    ground = g.num_edges + 1
    rank = {s: lift_rank(g, s) for s in all_subsets(ground)}
    result.check(rank[0] == 0, f"instance {k}: empty set has rank {rank[0]}")
    for a, ra in rank.items():
        if not 0 <= ra <= popcount(a):
            result.fail(f"instance {k}: rank {ra} out of range for {bitset_to_indices(a)}")
        for x in range(ground):
            if not contains(a, x) and rank[a | 1 << x] - ra not in (0, 1):
                result.fail(f"instance {k}: adding {x} to {bitset_to_indices(a)} jumps the rank")
        for b in range(a, 1 << ground):
            if rank[a | b] + rank[a & b] > ra + rank[b]:
                result.fail(f"instance {k}: rank is not submodular on {bitset_to_indices(a)}, {bitset_to_indices(b)}")
    result.passed += 1


def _basis_intervals(g: GainGraph, order: list[int], result: SuiteResult, k: int):
    ground = g.num_edges + 1
    independent = [f for f in all_subsets(ground) if is_independent(g, f)]
    reports = {f: activities0(g, f, order) for f in independent}
    for s in all_subsets(ground):
        owners = [f for f in independent if interval_holds(g, f, s, order, reports[f])]
        basis = minimal_basis(g, s, order)
        if owners != [basis]:
            result.fail(f"instance {k}: {bitset_to_indices(s)} lies in intervals of {owners}, minimal basis {basis}")
            continue
        if is_balanced0(g, s) != is_balanced0(g, basis):
            result.fail(f"instance {k}: balance changes inside the interval of {bitset_to_indices(basis)}")
            continue
        result.passed += 1
    ii = {f: r.ii for f, r in reports.items()}
    for f in independent:
        for f2 in independent:
            if is_subset(f, f2) and not is_subset(ii[f], ii[f2]):
                result.fail(f"instance {k}: internal inactivity shrinks from {f} to {f2}")


def _forest_lemmas(g: GainGraph, order: list[int], result: SuiteResult, k: int):
    circuits = balanced_circuits(g)
    broken = [broken_circuit(c, order, g) for c in circuits]
    for f in spanning_forests(g):
        report = activities(g, f, order)
        for bc in broken:
            if is_subset(bc, f):
                result.check(is_subset(bc, report.ii), f"instance {k}: broken circuit {bc} in {f} is not inactive")
        t = reverse_greedy_extension(g, f, order)
        top = activities(g, t, order)
        result.check(reverse_greedy_extension(g, t, order) == t, f"instance {k}: extension of {f} is not stable")
        result.check(
            is_subset(top.ii, f) and is_subset(t & ~f, top.ia), f"instance {k}: extension of {f} breaks activity"
        )
        result.check(is_subset(report.ii, top.ii), f"instance {k}: extension of {f} loses internal inactivity")
        result.check(report.epsilon == top.epsilon, f"instance {k}: extension of {f} changes external activity")


def _external_activity(g: GainGraph, order: list[int], result: SuiteResult, k: int):
    g, order = _drop_balanced_digons(g, order)
    broken = {broken_circuit(c, order, g) for c in balanced_circuits(g)}
    for f in spanning_forests(g):
        report = activities(g, f, order)
        for e in bitset_to_indices(lift_closure(g, f) & ~f):
            rest = fundamental_circuit(g, f, e) & ~(1 << e)
            result.check(
                (rest in broken) == contains(report.ea, e),
                f"instance {k}: external activity of {g.edges[e].label} relative to {g.labels_of(f)}",
            )


def _semigroup_laws(cfg: SuiteConfig, result: SuiteResult, k: int):
    rng = cfg.rng
    d = rng.randint(1, cfg.max_d)
    semigroups: list[tuple[WeightSemigroup, Callable[[], Any]]] = []
    for s in (MaxZd(), SumZd(), FiniteList(), ConeMinusFinite()):
        semigroups.append((s, lambda s=s: s.random_element(rng, d)))
    filters = FilterSemigroup()
    semigroups.append((filters, lambda: random_filter(rng, d)))
    for inner in (FiniteList(), ConeMinusFinite()):
        pair = PairSemigroup(inner)
        semigroups.append((pair, lambda pair=pair: (pair.lists.random_element(rng, d), random_filter(rng, d))))

    zero = lattice.zero(d)
    for s, draw in semigroups:
        a, b, c = draw(), draw(), draw()
        g, h = random_vector(rng, d), random_vector(rng, d)
        name = s.tag if not isinstance(s, PairSemigroup) else f"pair/{s.lists.tag}"
        result.check(s.key(s.add(a, b)) == s.key(s.add(b, a)), f"instance {k}: {name} is not commutative")
        result.check(
            s.key(s.add(s.add(a, b), c)) == s.key(s.add(a, s.add(b, c))), f"instance {k}: {name} is not associative"
        )
        result.check(s.key(s.act(a, zero)) == s.key(a), f"instance {k}: {name} moves under the zero gain")
        result.check(
            s.key(s.act(s.act(a, g), h)) == s.key(s.act(a, lattice.add(g, h))),
            f"instance {k}: {name} action does not compose",
        )
        result.check(
            s.key(s.act(s.add(a, b), g)) == s.key(s.add(s.act(a, g), s.act(b, g))),
            f"instance {k}: {name} action does not distribute",
        )


def check_structure(cfg: SuiteConfig, result: SuiteResult):
    """Switching, closure, matroid and semigroup identities."""
    for k in range(cfg.count):
        _repeated_ops(cfg, result, k)
        _top_switching(cfg, result, k)
        _improper(cfg, result, k)
        _semigroup_laws(cfg, result, k)
        g = random_gain_graph(cfg.rng, cfg.max_n, cfg.max_e, cfg.max_d, gain_range=1)
        order = random_order(cfg.rng, g)
        _attempt(result, f"lift rank {k}", lambda g=g: _lift_rank_axioms(g, result, k))
        _attempt(result, f"basis intervals {k}", lambda g=g, o=order: _basis_intervals(g, o, result, k))
        _attempt(result, f"forest lemmas {k}", lambda g=g, o=order: _forest_lemmas(g, o, result, k))
        _attempt(result, f"external activity {k}", lambda g=g, o=order: _external_activity(g, o, result, k))


def check_nwgen(cfg: SuiteConfig, result: SuiteResult):
    """Tutte axioms of the gain-free polynomial as polynomial identities."""
    rng = cfg.rng
    empty = GainGraph(1, 0)
    result.check(q_graph(WeightedGainGraph(empty, SumZd(), [])) == ONE, "the graph with no vertices is not 1")
    for k in range(cfg.count):
        semigroup = MaxZd() if k % 2 == 0 else SumZd()
        wg = random_weighted_graph(rng, semigroup, cfg.max_n, cfg.max_e, cfg.max_d, kinds=PLAIN_KINDS, zero_gains=True)
        other = random_weighted_graph(
            rng, semigroup, cfg.max_n, cfg.max_e, wg.d, kinds=PLAIN_KINDS, zero_gains=True, d=wg.d
        )

        def run(wg=wg, other=other, k=k):
            q = q_graph(wg)
            result.check(q == q_total_subset(wg), f"instance {k}: gain-free and zero-gain polynomials differ", wg)
            for e in wg.graph.links():
                bit = 1 << e
                split = q_graph(delete(wg, bit)) + q_graph(contract(wg, bit))
                result.check(q == split, f"instance {k}: additivity fails on {wg.graph.edges[e].label}", wg)
            union = wg.disjoint_union(other)
            result.check(q_graph(union) == q * q_graph(other), f"instance {k}: not multiplicative", wg)
            edgeless = wg.with_graph(wg.graph.with_edges([]))
            result.check(
                q_graph(edgeless) == weight_monomial(wg), f"instance {k}: edgeless graph is not the weight monomial", wg
            )
            loop = Edge.loop(rng.randrange(wg.n), lattice.zero(wg.d))
            looped = wg.with_graph(wg.graph.with_edges([*wg.graph.edges, loop]))
            result.check(q_graph(looped) == (V + 1) * q, f"instance {k}: a loop does not contribute v + 1", wg)

        _attempt(result, f"instance {k}", run, wg)


SUITES: dict[str, Callable[[SuiteConfig, SuiteResult], None]] = {
    "expansion": check_expansion,
    "tree": check_tree,
    "coloring": check_coloring,
    "contracted-proper": check_contracted_proper,
    "geometry": check_geometry,
    "orthotope-theorem": check_orthotope_theorem,
    "structure": check_structure,
    "nwgen": check_nwgen,
}


def run_suite(
    name: str,
    seed: int = 0,
    count: int | None = None,
    max_n: int | None = None,
    max_e: int | None = None,
    max_d: int | None = None,
    dump_dir: Path | None = None,
) -> SuiteResult:
    if name not in SUITES:
        raise ValueError(f"Unknown suite '{name}'. Expected one of {list(SUITES)}")
    cap_n, cap_e, cap_d = DEFAULT_CAPS[name]
    cfg = SuiteConfig(
        name,
        seed,
        DEFAULT_COUNTS[name] if count is None else count,
        cap_n if max_n is None else max_n,
        cap_e if max_e is None else max_e,
        cap_d if max_d is None else max_d,
    )
    if cfg.max_n < 1 or cfg.max_e < 0 or cfg.max_d < 1:
        raise ValueError("Size caps need max-n >= 1, max-e >= 0 and max-d >= 1")
    result = SuiteResult(name, dump_dir)
    debug(f"Running suite {name} with {cfg.count} instances")
    SUITES[name](cfg, result)
    return result


def run_suites(names: Iterable[str] | None = None, seed: int = 0, **kwargs) -> list[SuiteResult]:
    """Runs the named suites, or all of them, each with its own generator derived from ``seed``."""
    return [run_suite(name, seed, **kwargs) for name in (names or SUITES)]
