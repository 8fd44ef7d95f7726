"""Components, balance, balanced closure and the semilattice of closed balanced sets."""

from collections.abc import Iterator, Sequence
from typing import Any

import networkx as nx

from . import lattice
from .bitset import EdgeSubset, all_subsets, bitset_to_indices, is_subset, popcount, subsets_of
from .lattice import LatticeVector
from .models import EdgeKind, GainGraph
from .utils import debug


class UnbalancedSetError(ValueError):
    pass


class SpanningPartition:
    """Vertex blocks of the spanning subgraph (V, S), ordered by smallest vertex, with balance flags."""

    def __init__(
        self,
        blocks: Sequence[frozenset[int]],
        balanced: Sequence[bool],
        potentials: dict[int, LatticeVector],
    ):
        self.blocks: tuple[frozenset[int], ...] = tuple(blocks)
        self.balanced: tuple[bool, ...] = tuple(balanced)
        # Gain of the S-path from the block's smallest vertex; meaningful on balanced blocks only.
        self.potentials: dict[int, LatticeVector] = potentials

    @property
    def c(self) -> int:
        return len(self.blocks)

    @property
    def b(self) -> int:
        return sum(self.balanced)

    def balanced_blocks(self) -> list[frozenset[int]]:
        return [w for w, ok in zip(self.blocks, self.balanced, strict=True) if ok]

    def block_of(self, v: int) -> int:
        for k, w in enumerate(self.blocks):
            if v in w:
                return k
        raise ValueError(f"Vertex {v + 1} is in no block")

    def to_dict(self) -> dict[str, Any]:
        return {
            "blocks": [sorted(v + 1 for v in w) for w in self.blocks],
            "balanced": list(self.balanced),
        }

    def __repr__(self):
        return f"SpanningPartition(c={self.c}, b={self.b})"


def components(g: GainGraph, s: EdgeSubset) -> SpanningPartition:
    """Partition of V by the connected components of (V, S), with per-block balance."""
    graph = g.to_networkx(s)
    blocks = sorted((frozenset(c) for c in nx.connected_components(graph)), key=min)
    potentials: dict[int, LatticeVector] = {}
    balanced = []
    half_vertices = {g.edges[k].tail for k in bitset_to_indices(s) if g.edges[k].kind is EdgeKind.HALF}
    for block in blocks:
        root = min(block)
        potentials[root] = lattice.zero(g.d)
        for u, v in nx.bfs_edges(graph, root):
            key = next(iter(graph[u][v]))
            potentials[v] = lattice.add(potentials[u], g.edges[key].gain_from(u))
        ok = not (block & half_vertices)
        if ok:
            for u, v, key in graph.subgraph(block).edges(keys=True):
                e = g.edges[key]
                if lattice.sub(potentials[e.head], potentials[e.tail]) != e.gain:  # type: ignore[index]
                    ok = False
                    break
        balanced.append(ok)
    return SpanningPartition(blocks, balanced, potentials)


def walk_gain(g: GainGraph, walk: Sequence[tuple[int, int]]) -> LatticeVector:
    """Sum of oriented gains along a walk given as (edge position, start vertex) steps."""
    total = lattice.zero(g.d)
    current: int | None = None
    for step, (k, start) in enumerate(walk):
        e = g.edges[k]
        if not e.has_gain:
            raise ValueError(f"Step {step + 1}: {e.kind.value} edges cannot appear in a walk")
        if current is not None and start != current:
            raise ValueError(f"Step {step + 1}: edge {e.label} does not start at vertex {current + 1}")
        total = lattice.add(total, e.gain_from(start))
        current = e.other_end(start) if e.kind is EdgeKind.LINK else start
    return total


def is_balanced(g: GainGraph, s: EdgeSubset) -> bool:
    """True iff s has no half edge and every circle in s has zero gain."""
    return all(components(g, s).balanced)


def _closure_from_partition(g: GainGraph, part: SpanningPartition) -> EdgeSubset:
    block_index = {v: k for k, w in enumerate(part.blocks) for v in w}
    closed = 0
    for k, e in enumerate(g.edges):
        if e.kind is EdgeKind.LOOSE:
            closed |= 1 << k
        elif e.kind is EdgeKind.LOOP:
            if not any(e.gain):  # type: ignore[arg-type]
                closed |= 1 << k
        elif e.kind is EdgeKind.LINK and block_index[e.tail] == block_index[e.head]:  # type: ignore[index]
            shift = lattice.sub(part.potentials[e.head], part.potentials[e.tail])  # type: ignore[index]
            if shift == e.gain:
                closed |= 1 << k
    return closed


def balanced_closure(g: GainGraph, s: EdgeSubset) -> EdgeSubset:
    """Adds every edge closing a balanced circle with s, plus zero-gain loops and loose edges."""
    part = components(g, s)
    if not all(part.balanced):
        raise UnbalancedSetError(f"Closure is defined for balanced sets only; {g.labels_of(s)} is unbalanced")
    return _closure_from_partition(g, part) | s


def balanced_subsets(g: GainGraph) -> Iterator[EdgeSubset]:
    for s in all_subsets(g.num_edges):
        if is_balanced(g, s):
            yield s


class BalancedClosedLattice:
    """Closed balanced edge sets ordered by inclusion, with Möbius values mu(empty, B)."""

    def __init__(self, graph: GainGraph, elements: list[EdgeSubset], mobius: dict[EdgeSubset, int]):
        self.graph = graph
        self.elements: tuple[EdgeSubset, ...] = tuple(sorted(elements, key=lambda b: (popcount(b), b)))
        self.mobius: dict[EdgeSubset, int] = mobius

    @property
    def empty_is_closed(self) -> bool:
        return bool(self.elements) and self.elements[0] == 0

    def mu(self, b: EdgeSubset) -> int:
        if b not in self.mobius:
            raise ValueError(f"{self.graph.labels_of(b)} is not a closed balanced set")
        return self.mobius[b]

    def __iter__(self) -> Iterator[EdgeSubset]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def to_dict(self) -> dict[str, Any]:
        return {
            "elements": [{"edges": self.graph.labels_of(b), "mu": self.mobius[b]} for b in self.elements],
        }

    def __repr__(self):
        return f"BalancedClosedLattice(size={len(self.elements)})"


def lat_b(g: GainGraph) -> BalancedClosedLattice:
    """Enumerates the closed balanced sets and computes mu(empty, .) by recursion."""
    closed = set()
    for s in all_subsets(g.num_edges):
        part = components(g, s)
        if all(part.balanced):
            closed.add(_closure_from_partition(g, part) | s)
    elements = sorted(closed, key=lambda b: (popcount(b), b))
    mobius: dict[EdgeSubset, int] = {}
    if 0 not in closed:
        debug(f"Empty set is not closed in {g!r}; Möbius function vanishes")
        mobius = dict.fromkeys(elements, 0)
    else:
        for b in elements:
            if b == 0:
                mobius[b] = 1
                continue
            mobius[b] = -sum(mobius[a] for a in mobius if a != b and is_subset(a, b))
    debug(f"Lat_b has {len(elements)} elements")
    return BalancedClosedLattice(g, elements, mobius)


def mobius_alternating(g: GainGraph, b: EdgeSubset) -> int:
    """Sum of (-1)^|B'| over balanced B' whose closure is b."""
    if not is_balanced(g, b) or balanced_closure(g, b) != b:
        raise ValueError(f"{g.labels_of(b)} is not a closed balanced set")
    total = 0
    for sub in subsets_of(b):
        part = components(g, sub)
        if all(part.balanced) and (_closure_from_partition(g, part) | sub) == b:
            total += -1 if popcount(sub) % 2 else 1
    return total


def frame_rank(g: GainGraph, s: EdgeSubset) -> int:
    """Rank of s in the frame matroid: n minus the number of balanced components."""
    return g.n - components(g, s).b
