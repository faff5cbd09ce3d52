"""Simple graphs on bitmask adjacency rows, tube enumeration, and the
iterated-cone-over-a-discrete-set classifier.

Vertex subsets are plain ints used as bitmasks throughout the package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

MAX_VERTICES = 24  # bitmask-width guard for subset enumeration


class GraphError(ValueError):
    pass


class UnsupportedGraphError(GraphError):
    """Raised for disconnected non-discrete graphs, which have no toric
    graph associahedron in the formulation used here."""


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits_of(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Graph:
    """Labeled simple graph; adj[v] is the neighbour bitmask of vertex v."""

    num_vertices: int
    adj: tuple[int, ...]

    def __post_init__(self):
        n = self.num_vertices
        if n < 1:
            raise GraphError("graph needs at least one vertex")
        if n > MAX_VERTICES:
            raise GraphError(f"vertex count {n} exceeds the {MAX_VERTICES}-vertex cap")
        if len(self.adj) != n:
            raise GraphError("adjacency row count does not match num_vertices")
        full = (1 << n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"adjacency row of {v} mentions out-of-range vertices")
            if row & (1 << v):
                raise GraphError(f"self-loop at vertex {v}")
        for u in range(n):
            for v in range(u + 1, n):
                if bool(self.adj[u] & (1 << v)) != bool(self.adj[v] & (1 << u)):
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @property
    def vertex_mask(self) -> int:
        return (1 << self.num_vertices) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] & (1 << v))

    def edges(self) -> list[tuple[int, int]]:
        return [
            (u, v)
            for u in range(self.num_vertices)
            for v in range(u + 1, self.num_vertices)
            if self.has_edge(u, v)
        ]

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def is_discrete(self) -> bool:
        return all(row == 0 for row in self.adj)


def from_edges(num_vertices: int, edges: Iterable[tuple[int, int]]) -> Graph:
    adj = [0] * num_vertices
    for u, v in edges:
        if not (0 <= u < num_vertices and 0 <= v < num_vertices):
            raise GraphError(f"edge ({u},{v}) out of range for {num_vertices} vertices")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u  # duplicate edges are idempotent
    return Graph(num_vertices, tuple(adj))


# -- named families ---------------------------------------------------------


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(n: int) -> Graph:
    """Star on n vertices with center 0."""
    return from_edges(n, [(0, i) for i in range(1, n)])


def discrete(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_bipartite(m: int, n: int) -> Graph:
    return from_edges(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def complete_multipartite(parts: list[int]) -> Graph:
    """Complete multipartite graph; parts get consecutive label blocks."""
    n = sum(parts)
    edges = []
    start = 0
    blocks = []
    for p in parts:
        blocks.append(range(start, start + p))
        start += p
    for i, bi in enumerate(blocks):
        for bj in blocks[i + 1:]:
            edges.extend((u, v) for u in bi for v in bj)
    return from_edges(n, edges)


def cone(g: Graph) -> Graph:
    """New universal vertex with the highest label."""
    n = g.num_vertices
    new = 1 << n
    adj = [row | new for row in g.adj]
    adj.append((1 << n) - 1)
    return Graph(n + 1, tuple(adj))


def relabel(g: Graph, perm: list[int]) -> Graph:
    """perm maps old labels to new labels."""
    return from_edges(g.num_vertices, [(perm[u], perm[v]) for u, v in g.edges()])


# -- graph DSL --------------------------------------------------------------

_FAMILY_RE = re.compile(r"^(K|P|C|S|D)(\d+)$")
_BIPARTITE_RE = re.compile(r"^Kb(\d+),(\d+)$")
_CONE_RE = re.compile(r"^cone(?:\^(\d+))?\((.*)\)$")


def parse_graph(spec: str) -> Graph:
    """Parse the ASCII graph DSL: K/P/C/S/D families, Kb<m>,<n>, cone^l(...)."""
    s = spec.strip()
    m = _CONE_RE.match(s)
    if m:
        times = int(m.group(1)) if m.group(1) else 1
        g = parse_graph(m.group(2))
        for _ in range(times):
            g = cone(g)
        return g
    m = _BIPARTITE_RE.match(s)
    if m:
        return complete_bipartite(int(m.group(1)), int(m.group(2)))
    m = _FAMILY_RE.match(s)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if n < 1:
            raise GraphError(f"bad vertex count in {spec!r}")
        return {
            "K": complete,
            "P": path,
            "C": cycle,
            "S": star,
            "D": discrete,
        }[kind](n)
    raise GraphError(f"cannot parse graph spec {spec!r}")


def parse_edge_list(text: str) -> Graph:
    """Edge-list file format: first line vertex count, then 'u v' lines.

    '#' starts a comment; duplicate edges are tolerated.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty edge-list input")
    try:
        n = int(lines[0])
    except ValueError:
        raise GraphError(f"first line must be the vertex count, got {lines[0]!r}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return from_edges(n, edges)


# -- tubes ------------------------------------------------------------------


def induced_connected(g: Graph, s: int) -> bool:
    """Connectivity of the induced subgraph on the bitmask s (s nonempty)."""
    start = s & -s
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        m = frontier
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            nxt |= g.adj[v] & s & ~seen
        seen |= nxt
        frontier = nxt
    return seen == s


def is_tube(g: Graph, s: int) -> bool:
    """A tube induces a connected subgraph; singletons are (trivial) tubes."""
    if s == 0:
        raise GraphError("the empty set is neither a tube nor a non-tube")
    if s & ~g.vertex_mask:
        raise GraphError("subset mentions out-of-range vertices")
    return induced_connected(g, s)


def subsets_by_size(n: int, size: int) -> Iterator[int]:
    """All bitmasks over n bits with the given popcount, ascending."""
    if size == 0:
        yield 0
        return
    # Gosper's hack
    m = (1 << size) - 1
    limit = 1 << n
    while m < limit:
        yield m
        c = m & -m
        r = m + c
        m = (((r ^ m) >> 2) // c) | r


def tubes(g: Graph, min_size: int, max_size: int) -> list[int]:
    """Tubes with size in [min_size, max_size], in subdivision order:
    decreasing cardinality, then ascending bitmask."""
    if not (1 <= min_size <= max_size <= g.num_vertices):
        raise GraphError(f"bad tube size range [{min_size}, {max_size}]")
    out = []
    for size in range(max_size, min_size - 1, -1):
        for s in subsets_by_size(g.num_vertices, size):
            if induced_connected(g, s):
                out.append(s)
    return out


def non_tubes(g: Graph) -> list[int]:
    """Subsets of size >= 2 inducing a disconnected subgraph, canonical order."""
    out = []
    for size in range(g.num_vertices, 1, -1):
        for s in subsets_by_size(g.num_vertices, size):
            if not induced_connected(g, s):
                out.append(s)
    return out


def is_connected(g: Graph) -> bool:
    return induced_connected(g, g.vertex_mask)


# -- iterated-cone classifier -----------------------------------------------


def universal_vertices(g: Graph) -> int:
    """Bitmask of vertices adjacent to every other vertex."""
    m = 0
    for v in range(g.num_vertices):
        if g.degree(v) == g.num_vertices - 1:
            m |= 1 << v
    return m


@dataclass(frozen=True)
class ConeStructure:
    """Decomposition of an iterated cone: independent base set of size k
    plus universal cone vertices."""

    independent: int
    cone_vertices: int

    @property
    def k(self) -> int:
        return popcount(self.independent)

    @property
    def num_cone(self) -> int:
        return popcount(self.cone_vertices)


def classify_iterated_cone(g: Graph) -> Optional[ConeStructure]:
    """ConeStructure if g is an iterated cone over a discrete set, else None.

    Complete graphs use the lowest-label vertex as the size-1 base, so
    K_m = Cone^{m-1}(single vertex).  Discrete graphs classify with an
    empty cone set; any other disconnected graph is unsupported.
    """
    if not is_connected(g) and not g.is_discrete():
        raise UnsupportedGraphError(
            "unsupported: disconnected non-discrete graph"
        )
    univ = universal_vertices(g)
    rest = g.vertex_mask & ~univ
    if rest == 0:
        # complete graph; peel one vertex off as the discrete base
        lowest = g.vertex_mask & -g.vertex_mask
        return ConeStructure(independent=lowest, cone_vertices=g.vertex_mask & ~lowest)
    for v in bits_of(rest):
        if g.adj[v] & rest:
            return None
    return ConeStructure(independent=rest, cone_vertices=univ)


def rebuild_iterated_cone(cs: ConeStructure) -> Graph:
    """Canonical iterated cone with the given sizes: base labels first,
    cone labels last (matching the cone() labeling convention)."""
    g = discrete(cs.k)
    for _ in range(cs.num_cone):
        g = cone(g)
    return g


# -- small-graph catalog ----------------------------------------------------


def connected_graphs_up_to_iso(n: int) -> list[Graph]:
    """All connected graphs on n <= 7 vertices, one per isomorphism class."""
    if n > 7:
        raise GraphError("isomorphism catalog only covers up to 7 vertices")
    import networkx as nx
    from networkx.generators.atlas import graph_atlas_g

    out = []
    for ag in graph_atlas_g():
        if ag.number_of_nodes() != n:
            continue
        if n > 1 and not nx.is_connected(ag):
            continue
        nodes = sorted(ag.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        out.append(from_edges(n, [(index[u], index[v]) for u, v in ag.edges()]))
    return out
