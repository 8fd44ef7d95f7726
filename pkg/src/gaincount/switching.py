"""Switching functions, top switching, and deletion/restriction/contraction of weighted gain graphs."""

from . import lattice
from .bitset import EdgeSubset, contains
from .gain_graph import UnbalancedSetError, components
from .lattice import LatticeVector
from .models import Edge, EdgeKind, GainGraph, WeightedGainGraph

SwitchingFunction = tuple[LatticeVector, ...]


def zero_switching(g: GainGraph) -> SwitchingFunction:
    return tuple(lattice.zero(g.d) for _ in range(g.n))


def _top_switching_of_blocks(g: GainGraph, s: EdgeSubset, require_balanced: bool) -> SwitchingFunction:
    part = components(g, s)
    if require_balanced and not all(part.balanced):
        raise UnbalancedSetError(f"Top switching needs a balanced set; {g.labels_of(s)} is unbalanced")
    eta = list(zero_switching(g))
    for block, ok in zip(part.blocks, part.balanced, strict=True):
        if not ok:
            continue
        top = lattice.join_all(part.potentials[v] for v in block)
        for v in block:
            eta[v] = lattice.sub(top, part.potentials[v])
    return tuple(eta)


def top_switching(g: GainGraph, s: EdgeSubset) -> SwitchingFunction:
    """The switching function zeroing s whose meet over every block is 0."""
    return _top_switching_of_blocks(g, s, require_balanced=True)


def switched_gain(e: Edge, eta: SwitchingFunction) -> LatticeVector:
    return lattice.add(lattice.sub(e.gain, eta[e.tail]), eta[e.head])  # type: ignore[arg-type,index]


def switch_graph(g: GainGraph, eta: SwitchingFunction) -> GainGraph:
    if len(eta) != g.n:
        raise ValueError(f"Switching function has {len(eta)} values for {g.n} vertices")
    edges = [Edge(e.kind, e.tail, e.head, switched_gain(e, eta), e.label) if e.has_gain else e for e in g.edges]
    return g.with_edges(edges)


def switch(wg: WeightedGainGraph, eta: SwitchingFunction) -> WeightedGainGraph:
    """Switches gains by eta and moves each weight by the action of eta at its vertex."""
    weights = [wg.semigroup.act(w, eta[v]) for v, w in enumerate(wg.weights)]
    return wg.with_graph(switch_graph(wg.graph, eta), weights)


def delete(wg: WeightedGainGraph, s: EdgeSubset) -> WeightedGainGraph:
    edges = [e for k, e in enumerate(wg.graph.edges) if not contains(s, k)]
    return wg.with_graph(wg.graph.with_edges(edges))


def restrict(wg: WeightedGainGraph, s: EdgeSubset) -> WeightedGainGraph:
    edges = [e for k, e in enumerate(wg.graph.edges) if contains(s, k)]
    return wg.with_graph(wg.graph.with_edges(edges))


def contract(wg: WeightedGainGraph, s: EdgeSubset) -> WeightedGainGraph:
    """Contracts s with top switching.

    Vertices of unbalanced components of s are deleted, so surviving edges that lose endpoints
    become half or loose edges. Each balanced block becomes one vertex, in order of its smallest
    original vertex, weighted by the semigroup sum of the switched weights. Edges keep their labels.
    """
    g = wg.graph
    part = components(g, s)
    eta = _top_switching_of_blocks(g, s, require_balanced=False)
    new_index: dict[int, int] = {}
    weights = []
    for block in part.balanced_blocks():
        for v in block:
            new_index[v] = len(weights)
        weights.append(wg.semigroup.total(wg.semigroup.act(wg.weights[v], eta[v]) for v in sorted(block)))

    edges = []
    for k, e in enumerate(g.edges):
        if contains(s, k):
            continue
        if e.kind is EdgeKind.LOOSE:
            edges.append(e)
        elif e.kind is EdgeKind.HALF:
            v = new_index.get(e.tail)  # type: ignore[arg-type]
            edges.append(Edge.loose(e.label) if v is None else Edge.half(v, e.label))
        else:
            tail = new_index.get(e.tail)  # type: ignore[arg-type]
            head = new_index.get(e.head)  # type: ignore[arg-type]
            if tail is None and head is None:
                edges.append(Edge.loose(e.label))
            elif tail is None or head is None:
                edges.append(Edge.half(head if tail is None else tail, e.label))  # type: ignore[arg-type]
            elif tail == head:
                edges.append(Edge.loop(tail, switched_gain(e, eta), e.label))
            else:
                edges.append(Edge.link(tail, head, switched_gain(e, eta), e.label))
    return WeightedGainGraph(GainGraph(g.d, len(weights), edges), wg.semigroup, weights)
