import pytest

from gaincount.lattice import DimensionError
from gaincount.models import Edge, EdgeKind, GainGraph, WeightedGainGraph
from gaincount.semigroups import MaxZd, SumWeight, SumZd


# Tests for Edge class
def test_edge_constructors():
    assert Edge.link(0, 1, (2,)).kind is EdgeKind.LINK
    assert Edge.loop(1, (0,)).vertices() == (1,)
    assert Edge.half(0).vertices() == (0,)
    assert Edge.loose().vertices() == ()


@pytest.mark.parametrize(
    "kind, tail, head, gain",
    [
        (EdgeKind.LINK, 0, 0, (1,)),
        (EdgeKind.LINK, 0, 1, None),
        (EdgeKind.LOOP, 0, 1, (1,)),
        (EdgeKind.HALF, 0, None, (1,)),
        (EdgeKind.LOOSE, 0, None, None),
    ],
)
def test_edge_rejects_bad_shapes(kind, tail, head, gain):
    with pytest.raises(ValueError):
        Edge(kind, tail, head, gain)


def test_gain_from_reverses_against_orientation():
    e = Edge.link(0, 1, (2, -1))
    assert e.gain_from(0) == (2, -1)
    assert e.gain_from(1) == (-2, 1)
    with pytest.raises(ValueError, match="not an endpoint"):
        e.gain_from(2)
    with pytest.raises(ValueError, match="carry no gain"):
        Edge.half(0).gain_from(0)


def test_edge_to_dict_uses_one_based_vertices():
    assert Edge.link(0, 1, (3,), "a").to_dict() == {"type": "link", "tail": 1, "head": 2, "gain": [3], "label": "a"}
    assert Edge.loop(2, (1,)).to_dict() == {"type": "loop", "vertex": 3, "gain": [1]}
    assert Edge.half(0).to_dict() == {"type": "half", "vertex": 1}
    assert Edge.loose().to_dict() == {"type": "loose"}


# Tests for GainGraph class
def test_graph_assigns_default_labels():
    g = GainGraph(1, 2, [Edge.link(0, 1, (0,)), Edge.loop(1, (1,), "x")])
    assert [e.label for e in g.edges] == ["e1", "x"]
    assert g.mask_for_labels(["x"]) == 0b10
    assert g.labels_of(0b11) == ["e1", "x"]


def test_graph_validation():
    with pytest.raises(ValueError, match="refers to vertex 3"):
        GainGraph(1, 2, [Edge.link(0, 2, (0,))])
    with pytest.raises(DimensionError):
        GainGraph(2, 2, [Edge.link(0, 1, (0,))])
    with pytest.raises(ValueError, match="unique"):
        GainGraph(1, 2, [Edge.link(0, 1, (0,), "a"), Edge.loop(0, (1,), "a")])
    with pytest.raises(ValueError, match="at least 1"):
        GainGraph(0, 1)


def test_mask_for_unknown_label():
    g = GainGraph(1, 1, [Edge.loop(0, (1,))])
    with pytest.raises(ValueError, match="Unknown edge labels"):
        g.mask_for_labels(["zz"])


def test_edges_of_kind():
    g = GainGraph(1, 2, [Edge.link(0, 1, (0,)), Edge.half(0), Edge.loose(), Edge.loop(1, (2,))])
    assert g.edges_of_kind(EdgeKind.LINK, EdgeKind.LOOP) == 0b1001
    assert g.links() == [0]
    assert g.has_kind(EdgeKind.HALF)


def test_to_networkx_skips_half_and_loose_edges():
    g = GainGraph(1, 2, [Edge.link(0, 1, (0,)), Edge.half(0), Edge.loose(), Edge.loop(1, (2,))])
    graph = g.to_networkx()
    assert graph.number_of_nodes() == 2
    assert sorted(k for _, _, k in graph.edges(keys=True)) == [0, 3]


def test_disjoint_union_renames_colliding_labels():
    g = GainGraph(1, 1, [Edge.loop(0, (1,))])
    union = g.disjoint_union(g)
    assert union.n == 2
    assert [e.label for e in union.edges] == ["e1", "e1'"]
    assert union.edges[1].tail == 1


# Tests for WeightedGainGraph class
def test_weighted_graph_needs_one_weight_per_vertex():
    g = GainGraph(1, 2)
    with pytest.raises(ValueError, match="Expected 2 weights"):
        WeightedGainGraph(g, MaxZd(), [(0,)])


def test_weighted_graph_to_dict():
    wg = WeightedGainGraph(GainGraph(1, 1, [Edge.loop(0, (1,))]), MaxZd(), [(4,)])
    assert wg.to_dict() == {
        "d": 1,
        "n": 1,
        "edges": [{"type": "loop", "vertex": 1, "gain": [1], "label": "e1"}],
        "semigroup": "max-zd",
        "weights": [[4]],
    }


def test_disjoint_union_needs_same_semigroup():
    a = WeightedGainGraph(GainGraph(1, 1), MaxZd(), [(0,)])
    b = WeightedGainGraph(GainGraph(1, 1), SumZd(), [SumWeight((0,))])
    with pytest.raises(ValueError, match="different semigroups"):
        a.disjoint_union(b)
    assert a.disjoint_union(a).weights == ((0,), (0,))
