"""Fans: projective space fan, stellar subdivision, graph associahedral
fans, f-vectors, smoothness, completeness, order-independence."""

import math
import random

import pytest

from graphassoc import (
    Fan,
    FanError,
    Ray,
    build_graph_fan,
    canonical_form,
    connected_graphs_up_to_iso,
    f_vector,
    is_complete,
    is_smooth,
    parse_graph,
    projective_simplex_fan,
    ray_for_tube,
    stellar_subdivide,
)
from graphassoc.fans import _det, cone_exists, fan_to_json


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


def test_ray_validation():
    with pytest.raises(FanError):
        Ray((0, 0), ("vertex", 0))
    with pytest.raises(FanError):
        Ray((2, 4), ("vertex", 0))
    Ray((1, -2), ("vertex", 0))


def test_projective_simplex_fan():
    f = projective_simplex_fan(2)
    assert len(f.rays) == 3
    assert f.rays[0].coords == (-1, -1)
    assert len(f.max_cones) == 3
    assert is_smooth(f) and is_complete(f)
    with pytest.raises(FanError):
        projective_simplex_fan(0)


def test_stellar_subdivide_square_example():
    # subdividing one cone of the P^2 fan yields the 4-cone fan of a
    # Hirzebruch-like blowup: one extra ray, one extra maximal cone
    f = projective_simplex_fan(2)
    g = stellar_subdivide(f, (1, 2))
    assert len(g.rays) == 4
    assert g.rays[3].coords == (1, 1)
    assert len(g.max_cones) == 4
    assert is_smooth(g) and is_complete(g)
    with pytest.raises(FanError):
        stellar_subdivide(g, (1, 2))  # that cone no longer exists
    with pytest.raises(FanError):
        stellar_subdivide(f, (1,))


def test_cone_exists():
    f = projective_simplex_fan(3)
    assert cone_exists(f, (0, 1))
    assert cone_exists(f, (0, 1, 2))
    assert not cone_exists(f, (0, 1, 2, 3))


@pytest.mark.parametrize(
    "spec,fvec",
    [
        ("P3", (5, 5)),
        ("K3", (6, 6)),
        ("K4", (14, 36, 24)),
        ("P4", (9, 21, 14)),
    ],
)
def test_known_f_vectors(spec, fvec):
    f = build_graph_fan(parse_graph(spec))
    assert f_vector(f) == fvec


def test_path_fans_count_catalan():
    for m in range(2, 8):
        f = build_graph_fan(parse_graph(f"P{m}"))
        assert len(f.max_cones) == catalan(m), m


def test_complete_fans_count_factorial():
    for m in range(2, 7):
        f = build_graph_fan(parse_graph(f"K{m}"))
        assert len(f.max_cones) == math.factorial(m), m


def test_ray_labels_and_lookup():
    g = parse_graph("P3")
    f = build_graph_fan(g)
    assert ray_for_tube(f, 0b001) == 0
    assert ray_for_tube(f, 0b010) == 1
    assert f.rays[ray_for_tube(f, 0b011)].label == ("tube", 0b011)
    assert ray_for_tube(f, 0b101) is None  # not a tube, never a ray


def test_tube_ray_coordinates():
    # the ray of a tube is the primitive sum of its vertex rays
    f = build_graph_fan(parse_graph("P3"))
    i = ray_for_tube(f, 0b110)  # vertices 1, 2 with basis rays e_1, e_2
    assert f.rays[i].coords == (1, 1)
    j = ray_for_tube(f, 0b011)  # vertices 0, 1: (-1,-1) + (1,0)
    assert f.rays[j].coords == (0, -1)


def test_build_graph_fan_rejects():
    with pytest.raises(FanError):
        build_graph_fan(parse_graph("K1"))
    from graphassoc import GraphError, from_edges

    with pytest.raises(GraphError):
        build_graph_fan(from_edges(4, [(0, 1)]))


def test_discrete_graph_fan_is_projective_space():
    f = build_graph_fan(parse_graph("D4"))
    assert canonical_form(f) == canonical_form(projective_simplex_fan(3))


def test_order_independence_with_seeds():
    for spec in ["K4", "P5", "C5", "S5", "cone^2(D2)"]:
        g = parse_graph(spec)
        base = canonical_form(build_graph_fan(g))
        for seed in range(5):
            shuffled = build_graph_fan(g, rng=random.Random(seed))
            assert canonical_form(shuffled) == base, (spec, seed)


def test_smooth_and_complete_small_sweep():
    for n in range(2, 6):
        for g in connected_graphs_up_to_iso(n):
            f = build_graph_fan(g)
            assert is_smooth(f), g.edges()
            assert is_complete(f), g.edges()


def test_is_smooth_detects_singular_cone():
    rays = (
        Ray((1, 0), ("vertex", 0)),
        Ray((1, 2), ("vertex", 1)),
        Ray((-1, -1), ("vertex", 2)),
    )
    f = Fan(2, rays, ((0, 1), (1, 2), (0, 2)))
    assert not is_smooth(f)


def test_is_complete_detects_missing_cone():
    f = projective_simplex_fan(2)
    g = Fan(2, f.rays, f.max_cones[:-1])
    assert not is_complete(g)


def test_det():
    assert _det([[1, 0], [0, 1]]) == 1
    assert _det([[0, 1], [1, 0]]) == -1
    assert _det([[2, 0], [0, 3]]) == 6
    assert _det([[1, 2], [2, 4]]) == 0
    assert _det([[0, 1, 2], [1, 0, 3], [4, 5, 0]]) == 22  # zero pivot path


def test_fan_to_json():
    js = fan_to_json(build_graph_fan(parse_graph("P3")))
    assert js["dim"] == 2
    labels = [r["label"] for r in js["rays"]]
    assert {"vertex": 0} in labels
    assert {"tube": [0, 1]} in labels
    assert all(len(c) == 2 for c in js["max_cones"])
