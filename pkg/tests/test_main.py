import json

import pytest
import yaml

from gaincount.coloring import ColorFilter
from gaincount.lattice import Ideal
from gaincount.main import (
    DuplicateKeyError,
    FormatError,
    load_arrangement,
    load_filter,
    load_graph,
    load_weighted_graph,
    parse_arrangement,
    parse_graph,
    parse_matrix_option,
    parse_ordering,
    parse_vector_option,
    parse_weighted_graph,
    read_source,
    write_graph,
)
from gaincount.models import EdgeKind
from gaincount.orthotope import Cofinite
from gaincount.semigroups import WHOLE, PairSemigroup, PuncturedCone


def graph_data(**overrides):
    data = {
        "d": 1,
        "n": 2,
        "edges": [{"type": "link", "tail": 1, "head": 2, "gain": [1]}],
        "semigroup": "max-zd",
        "weights": [[0], [2]],
    }
    data.update(overrides)
    return data


# Tests for reading sources
def test_read_fixture():
    assert json.loads(read_source("fixture:k2"))["n"] == 2


def test_unknown_fixture():
    with pytest.raises(FileNotFoundError, match="Unknown fixture 'nope'"):
        read_source("fixture:nope")


def test_load_yaml_file(tmp_path):
    path = tmp_path / "g.yaml"
    path.write_text(yaml.dump(graph_data()))
    wg = load_weighted_graph(str(path))
    assert wg.n == 2
    assert wg.weights == ((0,), (2,))


def test_duplicate_keys_are_rejected(tmp_path):
    path = tmp_path / "g.yaml"
    path.write_text("d: 1\nn: 1\nn: 2\n")
    with pytest.raises(DuplicateKeyError, match="Duplicate key: n"):
        load_graph(str(path))


def test_empty_file(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("")
    with pytest.raises(FormatError, match="is empty"):
        load_graph(str(path))


# Tests for graph parsing
def test_parse_all_edge_kinds():
    g = parse_graph(
        {
            "d": 1,
            "n": 2,
            "edges": [
                {"type": "link", "tail": 1, "head": 2, "gain": 3},
                {"type": "loop", "vertex": 2, "gain": [1], "label": "x"},
                {"type": "half", "vertex": 1},
                {"type": "loose"},
            ],
        }
    )
    assert [e.kind for e in g.edges] == [EdgeKind.LINK, EdgeKind.LOOP, EdgeKind.HALF, EdgeKind.LOOSE]
    assert g.edges[0].gain == (3,)
    assert g.edges[1].label == "x"


@pytest.mark.parametrize(
    "edge, message",
    [
        ({"type": "arc"}, "unknown edge type"),
        ({"type": "link", "tail": 1, "head": 1, "gain": [0]}, "use a loop"),
        ({"type": "link", "tail": 1, "head": 3, "gain": [0]}, "outside 1..2"),
        ({"type": "link", "tail": 1, "head": 2}, "missing field 'gain'"),
        ({"type": "link", "tail": 1, "head": 2, "gain": [0, 1]}, "expected a list of 1 integers"),
        ({"type": "loop", "vertex": 1, "gain": [True]}, "expected an integer"),
    ],
)
def test_parse_bad_edges(edge, message):
    with pytest.raises(FormatError, match=message):
        parse_graph({"d": 1, "n": 2, "edges": [edge]})


def test_parse_graph_needs_positive_dimension():
    with pytest.raises(FormatError, match="at least 1"):
        parse_graph({"d": 0, "n": 1})


def test_duplicate_labels_are_format_errors():
    edges = [{"type": "loose", "label": "a"}, {"type": "loose", "label": "a"}]
    with pytest.raises(FormatError, match="unique"):
        parse_graph({"d": 1, "n": 0, "edges": edges})


# Tests for weighted graphs
def test_semigroup_override():
    wg = parse_weighted_graph(graph_data(), semigroup="sum-zd")
    assert wg.semigroup.tag == "sum-zd"


def test_unknown_semigroup():
    with pytest.raises(FormatError, match="Unknown semigroup"):
        parse_weighted_graph(graph_data(semigroup="min-zd"))


def test_weight_count_must_match():
    with pytest.raises(FormatError, match="expected a list of 2 weights"):
        parse_weighted_graph(graph_data(weights=[[0]]))


def test_bad_weight_is_format_error():
    with pytest.raises(FormatError, match=r"weights\[1\]"):
        parse_weighted_graph(graph_data(weights=[[0], "x"]))


def test_pair_weights():
    data = graph_data(
        semigroup="pair",
        list_semigroup="cone-minus-finite",
        weights=[{"list": {"apex": [0]}, "filter": {"ideal": [3]}}, {"list": {"apex": [1]}, "filter": {"all": True}}],
    )
    wg = parse_weighted_graph(data)
    assert isinstance(wg.semigroup, PairSemigroup)
    assert wg.weights[0] == (PuncturedCone((0,)), Ideal((3,)))
    assert wg.weights[1][1] == WHOLE


def test_load_filter(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(graph_data(filter=[{"ideal": [1]}, {"set": [[0], [2]]}])))
    wg = load_weighted_graph(str(path))
    assert load_filter(str(path), wg) == ColorFilter([Ideal((1,)), frozenset({(0,), (2,)})])
    assert load_filter("fixture:phi-star", load_weighted_graph("fixture:phi-star")) is None


def test_write_graph_round_trips(tmp_path):
    wg = load_weighted_graph("fixture:order2")
    filt = ColorFilter.ideals([(5, 3), (2, 6)])
    for name in ("g.yaml", "g.json"):
        path = tmp_path / name
        write_graph(wg, str(path), filt)
        assert load_weighted_graph(str(path)) == wg
        assert load_filter(str(path), wg) == filt


def test_write_yaml_keeps_short_rows_inline(tmp_path):
    path = tmp_path / "g.yaml"
    write_graph(load_weighted_graph("fixture:phi-star"), str(path))
    assert "gain: [2, 0]" in path.read_text()


# Tests for arrangements
def test_load_arrangement():
    stored = load_arrangement("fixture:order2-arrangement")
    assert stored.arrangement.n == 2
    assert stored.h == ((2, 0), (-1, 3))
    assert stored.m == ((5, 3), (2, 6))
    with pytest.raises(FormatError, match="no 'lists'"):
        stored.lists()


def test_arrangement_lists(tmp_path):
    path = tmp_path / "a.yaml"
    path.write_text(
        yaml.dump({"n": 2, "hyperplanes": [{"i": 1, "j": 2, "a": [0]}], "lists": [[0, 1], {"cofinite": [2]}]})
    )
    stored = load_arrangement(str(path))
    assert stored.arrangement.d == 1
    assert stored.lists(bounded=True) == [frozenset({0, 1}), Cofinite([2])]
    with pytest.raises(FormatError, match="only bounded counts"):
        stored.lists()


def test_arrangement_rejects_trivial_hyperplane():
    with pytest.raises(FormatError, match="whole space"):
        parse_arrangement({"n": 1, "hyperplanes": [{"i": 1, "j": 1, "a": [0]}]})


# Tests for option parsing
def test_parse_ordering():
    assert parse_ordering("3,1,2", 3) == [2, 0, 1]
    with pytest.raises(FormatError, match="permutation"):
        parse_ordering("1,1,2", 3)
    with pytest.raises(FormatError, match="integers"):
        parse_ordering("a,b", 2)


def test_parse_matrix_option():
    assert parse_matrix_option("2,3", 2, 1) == ((2,), (3,))
    assert parse_matrix_option("1,2;3,4", 2, 2) == ((1, 2), (3, 4))
    with pytest.raises(FormatError, match="expected 2 rows of 2 integers"):
        parse_matrix_option("1,2", 2, 2)


def test_parse_vector_option():
    assert parse_vector_option("4,-1", 2, "--h") == (4, -1)
    with pytest.raises(FormatError, match="--h: expected 2 integers"):
        parse_vector_option("4", 2, "--h")
