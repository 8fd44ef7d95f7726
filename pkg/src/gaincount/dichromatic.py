"""The total dichromatic polynomial of a weighted gain graph.

Q = sum over S of v^(|S|-n+b(S)) z^(c(S)-b(S)) times the product of u[h/S(W)] over the balanced
blocks W of S. Two independent computations are provided: subset expansion and deletion-contraction
on links.
"""

from collections.abc import Callable, Mapping
from fractions import Fraction

import networkx as nx

from .bitset import all_subsets, popcount
from .gain_graph import components, frame_rank
from .models import EdgeKind, GainGraph, WeightedGainGraph
from .polynomial import ONE, V, Z, Polynomial, u
from .switching import contract, delete
from .utils import debug


def weight_monomial(wg: WeightedGainGraph) -> Polynomial:
    """Product of the u-variables of the vertex weights."""
    result = ONE
    for w in wg.weights:
        result = result * u(wg.semigroup.key(w))
    return result


def q_total_subset(wg: WeightedGainGraph) -> Polynomial:
    g = wg.graph
    total = Polynomial()
    for s in all_subsets(g.num_edges):
        part = components(g, s)
        mono = weight_monomial(contract(wg, s))
        total = total + V ** (popcount(s) - g.n + part.b) * Z ** (part.c - part.b) * mono
    return total


def _first_link(wg: WeightedGainGraph) -> int | None:
    links = wg.graph.links()
    return links[0] if links else None


def q_total_delcon(
    wg: WeightedGainGraph, choose_link: Callable[[WeightedGainGraph], int | None] | None = None
) -> Polynomial:
    """Deletion-contraction on links; link-free graphs are expanded by subsets."""
    choose = choose_link or _first_link
    k = choose(wg)
    if k is None:
        return q_total_subset(wg)
    if wg.graph.edges[k].kind is not EdgeKind.LINK:
        raise ValueError(f"Deletion-contraction applies to links only; {wg.graph.edges[k]!r} is not a link")
    e = 1 << k
    return q_total_delcon(delete(wg, e), choose) + q_total_delcon(contract(wg, e), choose)


def q_graph(wg: WeightedGainGraph) -> Polynomial:
    """Dichromatic polynomial of the underlying weighted graph, gains ignored."""
    g = wg.graph
    extra = g.edges_of_kind(EdgeKind.HALF, EdgeKind.LOOSE)
    if extra:
        raise ValueError(
            f"The gain-free polynomial is defined for graphs without half or loose edges, found {g.labels_of(extra)}"
        )
    total = Polynomial()
    for s in all_subsets(g.num_edges):
        graph = g.to_networkx(s)
        blocks = sorted((frozenset(c) for c in nx.connected_components(graph)), key=min)
        mono = ONE
        for block in blocks:
            mono = mono * u(wg.semigroup.key(wg.semigroup.total(wg.weights[v] for v in sorted(block))))
        total = total + V ** (popcount(s) - g.n + len(blocks)) * mono
    return total


def evaluate(
    p: Polynomial, u_assign: Mapping[tuple, int | Fraction], v_val: int | Fraction, z_val: int | Fraction
) -> Fraction:
    """Substitutes numbers for u[key], v and z."""

    def value(var: tuple):
        if var[0] == "u":
            key = var[1] if len(var) > 1 else None
            if key not in u_assign:
                raise ValueError(f"No value given for u-variable {key!r}")
            return u_assign[key]
        if var == ("v",):
            return v_val
        if var == ("z",):
            return z_val
        raise ValueError(f"Unexpected variable {var!r}")

    return p.evaluate(value)


def collapse_u(p: Polynomial) -> Polynomial:
    """Replaces every weight-indexed variable by a single variable u."""
    return p.map_variables(lambda var: ("u",) if var[0] == "u" else var)


def gain_graph_dichromatic(g: GainGraph, balanced_only: bool) -> Polynomial:
    """Sum of v^(|S|-rk S) u^b(S) over balanced sets, or over all sets, using frame rank."""
    single_u = Polynomial.variable(("u",))
    total = Polynomial()
    for s in all_subsets(g.num_edges):
        part = components(g, s)
        if balanced_only and part.b != part.c:
            continue
        total = total + V ** (popcount(s) - frame_rank(g, s)) * single_u**part.b
    debug(f"Unweighted dichromatic over {'balanced' if balanced_only else 'all'} sets computed")
    return total
