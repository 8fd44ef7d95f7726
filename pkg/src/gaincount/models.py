from enum import Enum
from typing import Any

import networkx as nx

from . import lattice
from .bitset import EdgeSubset, bitset_from_indices, bitset_to_indices, contains, full_mask
from .lattice import LatticeVector
from .semigroups import WeightSemigroup


class EdgeKind(str, Enum):
    LINK = "link"
    LOOP = "loop"
    HALF = "half"
    LOOSE = "loose"


class Edge:
    """An edge of a gain graph: a link, loop, half edge or loose edge."""

    def __init__(
        self,
        kind: EdgeKind,
        tail: int | None = None,
        head: int | None = None,
        gain: LatticeVector | None = None,
        label: str | None = None,
    ):
        self.kind: EdgeKind = EdgeKind(kind)
        self.tail: int | None = tail
        self.head: int | None = head
        self.gain: LatticeVector | None = tuple(gain) if gain is not None else None
        self.label: str | None = label
        if self.kind is EdgeKind.LINK and (tail is None or head is None or tail == head or gain is None):
            raise ValueError("A link needs two distinct endpoints and a gain.")
        if self.kind is EdgeKind.LOOP and (tail is None or tail != head or gain is None):
            raise ValueError("A loop needs one vertex and a gain.")
        if self.kind is EdgeKind.HALF and (tail is None or head is not None or gain is not None):
            raise ValueError("A half edge has one endpoint and no gain.")
        if self.kind is EdgeKind.LOOSE and (tail is not None or head is not None or gain is not None):
            raise ValueError("A loose edge has no endpoints and no gain.")

    @classmethod
    def link(cls, tail: int, head: int, gain: LatticeVector, label: str | None = None) -> "Edge":
        return cls(EdgeKind.LINK, tail, head, gain, label)

    @classmethod
    def loop(cls, vertex: int, gain: LatticeVector, label: str | None = None) -> "Edge":
        return cls(EdgeKind.LOOP, vertex, vertex, gain, label)

    @classmethod
    def half(cls, vertex: int, label: str | None = None) -> "Edge":
        return cls(EdgeKind.HALF, vertex, None, None, label)

    @classmethod
    def loose(cls, label: str | None = None) -> "Edge":
        return cls(EdgeKind.LOOSE, None, None, None, label)

    @property
    def has_gain(self) -> bool:
        return self.kind in (EdgeKind.LINK, EdgeKind.LOOP)

    def vertices(self) -> tuple[int, ...]:
        """Distinct endpoints of the edge."""
        if self.kind is EdgeKind.LINK:
            return (self.tail, self.head)  # type: ignore[return-value]
        if self.kind in (EdgeKind.LOOP, EdgeKind.HALF):
            return (self.tail,)  # type: ignore[return-value]
        return ()

    def gain_from(self, vertex: int) -> LatticeVector:
        """Gain of the edge traversed starting at ``vertex``."""
        if not self.has_gain or self.gain is None:
            raise ValueError(f"{self.kind.value} edges carry no gain")
        if vertex == self.tail:
            return self.gain
        if vertex == self.head:
            return lattice.neg(self.gain)
        raise ValueError(f"Vertex {vertex + 1} is not an endpoint of {self!r}")

    def other_end(self, vertex: int) -> int:
        if vertex == self.tail and self.head is not None:
            return self.head
        if vertex == self.head and self.tail is not None:
            return self.tail
        raise ValueError(f"Vertex {vertex + 1} is not an endpoint of {self!r}")

    def to_dict(self) -> dict[str, Any]:
        """Converts the edge to the file schema (1-based vertices)."""
        data: dict[str, Any] = {"type": self.kind.value}
        if self.kind is EdgeKind.LINK:
            data.update({"tail": self.tail + 1, "head": self.head + 1, "gain": list(self.gain)})  # type: ignore[operator,arg-type]
        elif self.kind is EdgeKind.LOOP:
            data.update({"vertex": self.tail + 1, "gain": list(self.gain)})  # type: ignore[operator,arg-type]
        elif self.kind is EdgeKind.HALF:
            data["vertex"] = self.tail + 1  # type: ignore[operator]
        if self.label is not None:
            data["label"] = self.label
        return data

    def _identity(self) -> tuple:
        return (self.kind, self.tail, self.head, self.gain, self.label)

    def __eq__(self, other):
        if not isinstance(other, Edge):
            return NotImplemented
        return self._identity() == other._identity()

    def __hash__(self):
        return hash(self._identity())

    def __repr__(self):
        name = self.label or "edge"
        if self.kind is EdgeKind.LINK:
            return f"Edge({name}: v{self.tail + 1}->v{self.head + 1}, gain={self.gain})"  # type: ignore[operator]
        if self.kind is EdgeKind.LOOP:
            return f"Edge({name}: loop at v{self.tail + 1}, gain={self.gain})"  # type: ignore[operator]
        if self.kind is EdgeKind.HALF:
            return f"Edge({name}: half at v{self.tail + 1})"  # type: ignore[operator]
        return f"Edge({name}: loose)"


class GainGraph:
    """A finite graph with Z^d gains on its links and loops. Vertices are positions 0..n-1."""

    def __init__(self, d: int, n: int, edges: list[Edge] | tuple[Edge, ...] = ()):
        if d < 1:
            raise ValueError(f"Gain dimension must be at least 1, got {d}")
        if n < 0:
            raise ValueError(f"Vertex count must be nonnegative, got {n}")
        self.d: int = d
        self.n: int = n
        labelled = []
        for k, e in enumerate(edges):
            for v in e.vertices():
                if not 0 <= v < n:
                    raise ValueError(f"Edge {k + 1} refers to vertex {v + 1}, but the graph has {n} vertices")
            if e.gain is not None and len(e.gain) != d:
                raise lattice.DimensionError(f"Edge {k + 1} has a gain of dimension {len(e.gain)}, expected {d}")
            if e.label is None:
                e = Edge(e.kind, e.tail, e.head, e.gain, f"e{k + 1}")
            labelled.append(e)
        labels = [e.label for e in labelled]
        if len(set(labels)) != len(labels):
            raise ValueError(f"Edge labels must be unique: {labels}")
        self.edges: tuple[Edge, ...] = tuple(labelled)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def all_edges(self) -> EdgeSubset:
        return full_mask(len(self.edges))

    def edges_of_kind(self, *kinds: EdgeKind) -> EdgeSubset:
        return bitset_from_indices(k for k, e in enumerate(self.edges) if e.kind in kinds)

    def links(self) -> list[int]:
        return [k for k, e in enumerate(self.edges) if e.kind is EdgeKind.LINK]

    def has_kind(self, kind: EdgeKind) -> bool:
        return self.edges_of_kind(kind) != 0

    def labels_of(self, s: EdgeSubset) -> list[str]:
        return [self.edges[k].label for k in bitset_to_indices(s)]  # type: ignore[misc]

    def mask_for_labels(self, labels: list[str] | set[str]) -> EdgeSubset:
        position = {e.label: k for k, e in enumerate(self.edges)}
        unknown = sorted(set(labels) - position.keys())
        if unknown:
            raise ValueError(f"Unknown edge labels: {unknown}")
        return bitset_from_indices((position[label] for label in labels), self.num_edges)

    def to_networkx(self, s: EdgeSubset | None = None) -> nx.MultiGraph:
        """Spanning multigraph of the links and loops in ``s``, keyed by edge position."""
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.n))
        for k, e in enumerate(self.edges):
            if s is not None and not contains(s, k):
                continue
            if e.has_gain:
                graph.add_edge(e.tail, e.head, key=k)
        return graph

    def with_edges(self, edges: list[Edge], n: int | None = None) -> "GainGraph":
        return GainGraph(self.d, self.n if n is None else n, edges)

    def disjoint_union(self, other: "GainGraph") -> "GainGraph":
        """Places ``other`` after this graph; labels of ``other`` get a ``'`` suffix on collision."""
        if other.d != self.d:
            raise lattice.DimensionError(f"Dimension mismatch: {self.d} != {other.d}")
        taken = {e.label for e in self.edges}
        shifted = []
        for e in other.edges:
            tail = None if e.tail is None else e.tail + self.n
            head = None if e.head is None else e.head + self.n
            label = e.label
            while label in taken:
                label = f"{label}'"
            taken.add(label)
            shifted.append(Edge(e.kind, tail, head, e.gain, label))
        return GainGraph(self.d, self.n + other.n, [*self.edges, *shifted])

    def to_dict(self) -> dict[str, Any]:
        return {"d": self.d, "n": self.n, "edges": [e.to_dict() for e in self.edges]}

    def __eq__(self, other):
        if not isinstance(other, GainGraph):
            return NotImplemented
        return (self.d, self.n, self.edges) == (other.d, other.n, other.edges)

    def __hash__(self):
        return hash((self.d, self.n, self.edges))

    def __repr__(self):
        return f"GainGraph(d={self.d}, n={self.n}, edges={len(self.edges)})"


class WeightedGainGraph:
    """A gain graph whose vertices carry weights from a semigroup."""

    def __init__(self, graph: GainGraph, semigroup: WeightSemigroup, weights: list[Any] | tuple[Any, ...]):
        if len(weights) != graph.n:
            raise ValueError(f"Expected {graph.n} weights, got {len(weights)}")
        self.graph: GainGraph = graph
        self.semigroup: WeightSemigroup = semigroup
        self.weights: tuple[Any, ...] = tuple(weights)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def d(self) -> int:
        return self.graph.d

    def with_graph(self, graph: GainGraph, weights: list[Any] | tuple[Any, ...] | None = None) -> "WeightedGainGraph":
        return WeightedGainGraph(graph, self.semigroup, self.weights if weights is None else weights)

    def disjoint_union(self, other: "WeightedGainGraph") -> "WeightedGainGraph":
        if other.semigroup != self.semigroup:
            raise ValueError("Cannot join graphs weighted by different semigroups")
        return WeightedGainGraph(self.graph.disjoint_union(other.graph), self.semigroup, self.weights + other.weights)

    def to_dict(self) -> dict[str, Any]:
        data = self.graph.to_dict()
        data.update(self.semigroup.to_dict())
        data["weights"] = [self.semigroup.dump(w) for w in self.weights]
        return data

    def __eq__(self, other):
        if not isinstance(other, WeightedGainGraph):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.semigroup == other.semigroup
            and [self.semigroup.key(w) for w in self.weights] == [other.semigroup.key(w) for w in other.weights]
        )

    def __hash__(self):
        return hash((self.graph, tuple(self.semigroup.key(w) for w in self.weights)))

    def __repr__(self):
        return f"WeightedGainGraph({self.graph!r}, semigroup='{self.semigroup.tag}')"
