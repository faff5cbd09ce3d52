"""Tubing compatibility and enumeration, with counting oracles and the
fan bijection check."""

import math

import pytest

from graphassoc import (
    compatible,
    connected_graphs_up_to_iso,
    enumerate_tubings,
    parse_graph,
    proper_tubes,
    verify_fan_tubing_bijection,
)
from graphassoc.graphs import GraphError, from_edges
from graphassoc.tubings import tubing_to_json


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


def test_compatible_rules():
    g = parse_graph("P4")
    # nested
    assert compatible(g, 0b0011, 0b0111)
    # disjoint with disconnected union
    assert compatible(g, 0b0001, 0b0100)
    # disjoint but adjacent: union is a tube, incompatible
    assert not compatible(g, 0b0011, 0b0100)
    # properly overlapping
    assert not compatible(g, 0b0011, 0b0110)


def test_compatible_rejects_bad_input():
    g = parse_graph("P4")
    with pytest.raises(GraphError):
        compatible(g, 0b0101, 0b0011)  # non-tube
    with pytest.raises(GraphError):
        compatible(g, 0b1111, 0b0001)  # full set is not proper


def test_disjoint_cover_of_disconnected_union():
    # two tubes whose disjoint union is all of V(G) and disconnected: in a
    # 4-cycle opposite vertices leave a disconnected rest
    g = parse_graph("C4")
    assert compatible(g, 0b0001, 0b0100)
    # adjacent singletons in the cycle stay incompatible
    assert not compatible(g, 0b0001, 0b0010)


def test_proper_tubes():
    g = parse_graph("P3")
    assert proper_tubes(g) == [0b011, 0b110, 0b001, 0b010, 0b100]
    assert proper_tubes(parse_graph("K1")) == []


def test_enumerate_tubings_sizes():
    g = parse_graph("P3")
    assert enumerate_tubings(g, 0) == [()]
    assert len(enumerate_tubings(g, 1)) == 5
    # pentagon: 5 maximal tubings
    assert len(enumerate_tubings(g, 2)) == 5
    with pytest.raises(GraphError):
        enumerate_tubings(g, 3)


def test_maximal_tubings_of_paths_count_catalan():
    for m in range(2, 7):
        g = parse_graph(f"P{m}")
        assert len(enumerate_tubings(g, m - 1)) == catalan(m), m


def test_maximal_tubings_of_complete_graphs_count_factorial():
    for m in range(2, 6):
        g = parse_graph(f"K{m}")
        assert len(enumerate_tubings(g, m - 1)) == math.factorial(m), m


def test_tubings_are_pairwise_compatible():
    g = parse_graph("C5")
    for tubing in enumerate_tubings(g, 3):
        for i, t1 in enumerate(tubing):
            for t2 in tubing[i + 1:]:
                assert compatible(g, t1, t2)


def test_bijection_on_named_graphs():
    for spec in ["P3", "K3", "P4", "K4", "C5", "S5", "cone^2(D2)"]:
        rep = verify_fan_tubing_bijection(parse_graph(spec))
        assert rep.passed, (spec, rep.failure)


def test_bijection_counts_match_f_vector():
    from graphassoc import build_graph_fan, f_vector

    g = parse_graph("P4")
    rep = verify_fan_tubing_bijection(g)
    assert rep.counts == f_vector(build_graph_fan(g))


def test_bijection_small_sweep():
    for n in range(2, 6):
        for g in connected_graphs_up_to_iso(n):
            rep = verify_fan_tubing_bijection(g)
            assert rep.passed, (g.edges(), rep.failure)


def test_bijection_guards():
    with pytest.raises(GraphError):
        verify_fan_tubing_bijection(parse_graph("P9"))
    with pytest.raises(GraphError):
        verify_fan_tubing_bijection(from_edges(4, [(0, 1)]))


def test_tubing_to_json():
    assert tubing_to_json((0b011, 0b001)) == [[0], [0, 1]]
