"""Tubings: pairwise compatible sets of proper tubes.

This is the combinatorial model of the face structure of the graph
associahedron, used as an independent oracle against the fan construction:
size-j tubings must biject onto j-dimensional cones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .fans import Fan, build_graph_fan, cones_of_dimension, ray_for_tube
from .graphs import (
    Graph,
    GraphError,
    bits_of,
    induced_connected,
    is_connected,
    is_tube,
    tubes,
)

BIJECTION_MAX_VERTICES = 8


def compatible(g: Graph, t1: int, t2: int) -> bool:
    """Tubes are compatible when nested, or disjoint with disconnected union.

    A disjoint union covering all of V(G) and connected still blocks
    compatibility; this is the rule under which size-j tubings match the
    j-dimensional cones of the fan.
    """
    for t in (t1, t2):
        if not is_tube(g, t):
            raise GraphError(f"{bits_of(t)} is not a tube")
        if t == g.vertex_mask:
            raise GraphError("tubings only contain proper tubes")
    if t1 & t2:
        return (t1 | t2) in (t1, t2)  # overlap must be containment
    return not induced_connected(g, t1 | t2)


def proper_tubes(g: Graph) -> list[int]:
    """All tubes of size 1..num_vertices-1 in canonical order."""
    return tubes(g, 1, g.num_vertices - 1) if g.num_vertices > 1 else []


def enumerate_tubings(g: Graph, size: int) -> list[tuple[int, ...]]:
    """All tubings with exactly `size` tubes, each a sorted tuple of tube
    masks, in lexicographic order of the chosen tube indices."""
    if not (0 <= size <= g.num_vertices - 1):
        raise GraphError(f"tubing size {size} out of range")
    all_tubes = sorted(proper_tubes(g))
    nt = len(all_tubes)
    compat = [[False] * nt for _ in range(nt)]
    for i in range(nt):
        for j in range(i + 1, nt):
            compat[i][j] = compat[j][i] = compatible(g, all_tubes[i], all_tubes[j])

    out: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def backtrack(start: int):
        if len(chosen) == size:
            out.append(tuple(all_tubes[i] for i in chosen))
            return
        for i in range(start, nt):
            if nt - i < size - len(chosen):
                break
            if all(compat[i][j] for j in chosen):
                chosen.append(i)
                backtrack(i + 1)
                chosen.pop()

    backtrack(0)
    return out


@dataclass(frozen=True)
class BijectionReport:
    passed: bool
    counts: tuple[int, ...]  # tubings per size 1..d (equals the f-vector on pass)
    failure: Optional[str] = None


def verify_fan_tubing_bijection(g: Graph, fan: Optional[Fan] = None) -> BijectionReport:
    """Check that mapping a tubing to its set of tube rays is a bijection
    from size-j tubings onto j-dimensional cones, for every j."""
    if g.num_vertices > BIJECTION_MAX_VERTICES:
        raise GraphError(f"bijection check capped at {BIJECTION_MAX_VERTICES} vertices")
    if not is_connected(g):
        raise GraphError("bijection check needs a connected graph")
    f = fan if fan is not None else build_graph_fan(g)
    d = f.dim
    counts = []
    for j in range(1, d + 1):
        fan_cones = cones_of_dimension(f, j)
        images = set()
        for tubing in enumerate_tubings(g, j):
            rays = frozenset(ray_for_tube(f, t) for t in tubing)
            if None in rays:
                return BijectionReport(
                    False, tuple(counts), f"tubing {sorted(map(bits_of, tubing))} uses a tube with no ray"
                )
            if rays in images:
                return BijectionReport(
                    False, tuple(counts), f"two size-{j} tubings share the ray set {sorted(rays)}"
                )
            if rays not in fan_cones:
                return BijectionReport(
                    False, tuple(counts),
                    f"tubing {sorted(map(bits_of, tubing))} maps to {sorted(rays)}, not a cone"
                )
            images.add(rays)
        if len(images) != len(fan_cones):
            missing = next(iter(fan_cones - images))
            return BijectionReport(
                False, tuple(counts), f"cone {sorted(missing)} has no tubing partner"
            )
        counts.append(len(images))
    return BijectionReport(True, tuple(counts))


def tubing_to_json(tubing: tuple[int, ...]) -> list[list[int]]:
    return sorted(sorted(bits_of(t)) for t in tubing)
