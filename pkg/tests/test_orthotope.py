import pytest

from gaincount.lattice import DimensionError
from gaincount.main import load_arrangement, load_weighted_graph
from gaincount.models import Edge, EdgeKind, GainGraph, WeightedGainGraph
from gaincount.orthotope import (
    AffinographicArrangement,
    Cofinite,
    alpha,
    alpha_vertex,
    arrangement_to_gain_graph,
    chamber_base,
    chamber_polynomial,
    chi_common_bound,
    chi_graph_no_gains,
    chi_piecewise,
    common_bound_polynomial,
    common_threshold,
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
from gaincount.polynomial import m_var
from gaincount.semigroups import ConeMinusFinite, MaxZd, PuncturedCone


def k2_cones(gain):
    g = GainGraph(1, 2, [Edge.link(0, 1, (gain,))])
    return WeightedGainGraph(g, ConeMinusFinite(), [PuncturedCone((0,)), PuncturedCone((0,))])


EQUAL = AffinographicArrangement(2, 1, [(0, 1, (0,))])
SHIFTED = AffinographicArrangement(2, 1, [(0, 1, (1,))])


# Tests for AffinographicArrangement class
def test_arrangement_validation():
    with pytest.raises(ValueError, match="whole space"):
        AffinographicArrangement(1, 1, [(0, 0, (0,))])
    with pytest.raises(ValueError, match="outside"):
        AffinographicArrangement(1, 1, [(0, 1, (0,))])
    with pytest.raises(DimensionError):
        AffinographicArrangement(2, 2, [(0, 1, (0,))])


def test_self_shift_becomes_unbalanced_loop():
    arr = AffinographicArrangement(1, 1, [(0, 0, (2,))])
    (e,) = arrangement_to_gain_graph(arr).edges
    assert e.kind is EdgeKind.LOOP
    assert count_orthotope(arr, [3]) == 4


def test_violated_by():
    assert SHIFTED.violated_by([(0,), (1,)])
    assert not SHIFTED.violated_by([(1,), (1,)])


def test_arrangement_to_dict():
    assert SHIFTED.to_dict() == {"n": 2, "d": 1, "hyperplanes": [{"i": 1, "j": 2, "a": [1]}]}


# Tests for orthotope and list counts
def test_count_orthotope():
    assert count_orthotope(EQUAL, [2, 3]) == 9
    assert count_orthotope_bruteforce(EQUAL, [2, 3]) == 9
    assert count_orthotope(SHIFTED, [2, 3]) == 9
    assert count_orthotope(SHIFTED, [3, 3]) == 13


def test_count_orthotope_checks_bounds():
    with pytest.raises(ValueError, match="nonnegative"):
        count_orthotope(EQUAL, [-1, 2])
    with pytest.raises(ValueError, match="Expected 2 values"):
        count_orthotope(EQUAL, [2])
    with pytest.raises(ValueError, match="d = 1"):
        count_orthotope(AffinographicArrangement(1, 2), [1])


def test_count_orthotope_intervals():
    assert count_orthotope_intervals(EQUAL, [1, 1], [2, 3]) == 4
    assert count_orthotope_bruteforce(EQUAL, [2, 3], h=[1, 1]) == 4
    assert count_orthotope_intervals(EQUAL, [3, 0], [2, 3]) == 0


def test_count_lists():
    lists = [[0, 1], [1, 2]]
    assert count_lists(SHIFTED, lists) == 2
    assert count_lists_bruteforce(SHIFTED, lists) == 2


def test_count_lists_rejects_wrong_dimension():
    with pytest.raises(DimensionError):
        count_lists(SHIFTED, [[(0, 0)], [(1, 1)]])


def test_cofinite_cut():
    assert Cofinite([1]).cut(3) == frozenset({0, 2, 3})


def test_count_lists_bounded():
    lists = [Cofinite([1]), frozenset({0, 1, 2, 5})]
    assert count_lists_bounded(EQUAL, lists, [3, 3]) == 7
    assert count_lists_bounded_bruteforce(EQUAL, lists, [3, 3]) == 7


def test_bounded_lists_are_nonnegative():
    with pytest.raises(ValueError, match="negative values"):
        count_lists_bounded(EQUAL, [frozenset({-1}), frozenset({0})], [3, 3])


def test_count_matrix():
    stored = load_arrangement("fixture:order2-arrangement")
    assert count_matrix(stored.arrangement, stored.h, stored.m) == 249
    assert count_matrix_bruteforce(stored.arrangement, stored.h, stored.m) == 249


def test_count_matrix_needs_h_below_m():
    arr = AffinographicArrangement(1, 2)
    with pytest.raises(ValueError, match="H is not below M in row 1"):
        count_matrix(arr, [(2, 0)], [(1, 5)])


# Tests for path gains and thresholds
def test_alpha():
    g = k2_cones(1).graph
    assert alpha(g, 0, 1) == (1,)
    assert alpha(g, 1, 0) == (-1,)
    assert alpha(g, 0, 0) == (0,)
    assert alpha(GainGraph(1, 2), 0, 1) is None
    assert alpha_vertex(g, 0) == (1,)
    assert alpha_vertex(g, 1) == (0,)


def test_alpha_joins_parallel_paths():
    g = load_weighted_graph("fixture:order2").graph
    assert alpha(g, 0, 1) == (2, 2)
    assert alpha(g, 1, 0) == (1, 0)


def test_threshold():
    assert threshold(k2_cones(1)) == ((-1,), (0,))
    assert common_threshold(k2_cones(1)) == (0,)
    assert threshold(load_weighted_graph("fixture:order2")) == ((2, 4), (4, 4))


# Tests for the piecewise count
def test_chi_piecewise_k2():
    wg = k2_cones(1)
    result = chi_piecewise(wg, [(2,), (3,)])
    assert result.value == 9
    assert result.above_threshold
    assert result.value == list_count_under(wg, [(2,), (3,)])
    assert result.to_dict()["signature"] == [1]


@pytest.mark.parametrize("m1, m2", [(0, 0), (0, 5), (4, 1), (3, 3), (6, 2)])
def test_chi_piecewise_matches_closed_form(m1, m2):
    result = chi_piecewise(k2_cones(1), [(m1,), (m2,)])
    assert result.value == (m1 + 1) * (m2 + 1) - min(m1 + 1, m2)


def test_chi_piecewise_matches_exact_count_above_threshold():
    wg = load_weighted_graph("fixture:order2")
    m = [(3, 5), (5, 5)]
    result = chi_piecewise(wg, m)
    assert result.above_threshold
    assert result.value == list_count_under(wg, m) == 265


def test_chi_piecewise_needs_cones():
    wg = WeightedGainGraph(GainGraph(1, 1), MaxZd(), [(0,)])
    with pytest.raises(ValueError, match="cone-minus-finite"):
        chi_piecewise(wg, [(1,)])


def test_chi_piecewise_rejects_zero_loops():
    g = GainGraph(1, 1, [Edge.loop(0, (0,))])
    wg = WeightedGainGraph(g, ConeMinusFinite(), [PuncturedCone((0,))])
    with pytest.raises(ValueError, match="Balanced loop"):
        chi_piecewise(wg, [(1,)])


def test_chi_piecewise_checks_bound_shape():
    with pytest.raises(ValueError, match="Expected 2 bound vectors"):
        chi_piecewise(k2_cones(1), [(1,)])
    with pytest.raises(DimensionError):
        chi_piecewise(k2_cones(1), [(1, 1), (1, 1)])


def test_chamber_polynomial():
    wg = k2_cones(1)
    assert chamber_base(wg) == [[1], [6]]
    assert chamber_polynomial(wg) == (m_var(0, 0) + 1) * m_var(1, 0)


def test_chamber_polynomial_of_edgeless_graph():
    g = GainGraph(1, 1)
    wg = WeightedGainGraph(g, ConeMinusFinite(), [PuncturedCone((2,), [(3,)])])
    assert chamber_polynomial(wg) == m_var(0, 0) - 2


# Tests for the common bound
@pytest.mark.parametrize("gain, offset", [(0, 1), (1, 0)])
def test_common_bound_polynomial(gain, offset):
    m = m_var(0)
    assert common_bound_polynomial(k2_cones(gain)) == (m + 1) ** 2 - (m + offset)


def test_chi_common_bound():
    result = chi_common_bound(k2_cones(1), (3,))
    assert result.value == 13
    assert result.above_threshold
    assert result.threshold == (0,)
    with pytest.raises(DimensionError):
        chi_common_bound(k2_cones(1), (3, 3))


# Tests for graphs without gains
def test_chi_graph_no_gains():
    result = chi_graph_no_gains(k2_cones(0), [(2,), (3,)])
    assert result.value == 9
    assert result.threshold == ((-1,), (-1,))


def test_chi_graph_no_gains_rejects_gains_and_parallels():
    with pytest.raises(ValueError, match="nonzero gain"):
        chi_graph_no_gains(k2_cones(1), [(2,), (3,)])
    g = GainGraph(1, 2, [Edge.link(0, 1, (0,)), Edge.link(1, 0, (0,))])
    wg = WeightedGainGraph(g, ConeMinusFinite(), [PuncturedCone((0,)), PuncturedCone((0,))])
    with pytest.raises(ValueError, match="parallel"):
        chi_graph_no_gains(wg, [(2,), (3,)])


def test_orthozero_bound():
    assert orthozero_bound(k2_cones(1), 0b1) == ((0,), (1,))
