"""Covering maps: voltage-assignment construction, validation, color lifting,
and truncated universal-cover balls with a canonical rooted-tree code.

A degree-d cover of a connected base is built from d copies of every base
vertex. Edges on a fixed spanning tree connect equal copy indices; each
remaining ("distinguished") edge carries a permutation of the copy indices.
Every isomorphism class of degree-d cover arises this way, so enumerating
permutation tuples enumerates covers.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from .graph_core import Graph, from_edge_list, is_connected
from .wl_refine import color_refine


@dataclass(frozen=True)
class VoltageAssignment:
    """One permutation of 0..degree-1 per distinguished base edge.

    ``distinguished_edges`` are oriented (u, w) with u < w; permutation p on
    edge (u, w) connects copy i of u to copy p[i] of w.
    """

    degree: int
    distinguished_edges: tuple[tuple[int, int], ...]
    permutations: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("cover degree must be at least 1")
        if len(self.permutations) != len(self.distinguished_edges):
            raise ValueError("one permutation per distinguished edge required")
        for u, w in self.distinguished_edges:
            if u >= w:
                raise ValueError(f"distinguished edge ({u}, {w}) must be oriented u < w")
        for p in self.permutations:
            if sorted(p) != list(range(self.degree)):
                raise ValueError(f"{p} is not a permutation of 0..{self.degree - 1}")


@dataclass(frozen=True)
class CoveringMap:
    """A candidate covering: total graph, base graph, and the vertex projection."""

    total_graph: Graph
    base_graph: Graph
    vertex_map: tuple[int, ...]

    def fiber(self, base_vertex: int) -> tuple[int, ...]:
        return tuple(
            v for v, image in enumerate(self.vertex_map) if image == base_vertex
        )


@dataclass(frozen=True)
class CoveringVerdict:
    ok: bool
    vertex: int | None = None
    reason: str | None = None

    def __str__(self):
        return "pass" if self.ok else f"fail at vertex {self.vertex}: {self.reason}"


@dataclass(frozen=True)
class LiftVerdict:
    ok: bool
    round: int | None = None
    vertex: int | None = None

    def __str__(self):
        if self.ok:
            return "pass"
        return f"fail: color mismatch at round {self.round}, vertex {self.vertex}"


def spanning_tree_edges(g: Graph) -> set[tuple[int, int]]:
    """Edges of the BFS spanning tree rooted at vertex 0 (sorted neighbor order)."""
    if g.vertex_count == 0 or not is_connected(g):
        raise ValueError("spanning tree requires a non-empty connected graph")
    seen = [False] * g.vertex_count
    seen[0] = True
    queue = deque([0])
    tree = set()
    while queue:
        v = queue.popleft()
        for u in g.adjacency[v]:
            if not seen[u]:
                seen[u] = True
                tree.add((min(v, u), max(v, u)))
                queue.append(u)
    return tree


def distinguished_edges(g: Graph) -> tuple[tuple[int, int], ...]:
    """Non-tree edges of the deterministic spanning tree, sorted.

    For a connected graph there are exactly 1 - (|V| - |E|) of them.
    """
    tree = spanning_tree_edges(g)
    return tuple(e for e in g.edges() if e not in tree)


def make_voltage(base: Graph, degree: int, permutations) -> VoltageAssignment:
    """Voltage assignment over the base's own distinguished edges."""
    return VoltageAssignment(
        degree, distinguished_edges(base), tuple(tuple(p) for p in permutations)
    )


def build_cover(base: Graph, va: VoltageAssignment) -> CoveringMap:
    """Materialize the degree-d cover described by a voltage assignment.

    Copy i of base vertex v has id ``i * |V(base)| + v``, so the identity
    voltage yields d stacked copies of the base. The result always satisfies
    validate_covering.
    """
    expected = distinguished_edges(base)
    if va.distinguished_edges != expected:
        raise ValueError(
            "voltage assignment does not match the base's distinguished edges "
            f"(expected {list(expected)}, got {list(va.distinguished_edges)})"
        )
    n, d = base.vertex_count, va.degree
    special = set(expected)
    edges = []
    for u, w in base.edges():
        if (u, w) in special:
            continue
        edges.extend((i * n + u, i * n + w) for i in range(d))
    for (u, w), perm in zip(va.distinguished_edges, va.permutations):
        edges.extend((i * n + u, perm[i] * n + w) for i in range(d))
    total = from_edge_list(n * d, edges)
    return CoveringMap(total, base, tuple(x % n for x in range(n * d)))


def validate_covering(cm: CoveringMap) -> CoveringVerdict:
    """Check surjectivity and the local-isomorphism condition at every vertex.

    The projection must hit every base vertex, and around every total-graph
    vertex the neighbor images must be exactly the neighbors of its own image,
    each hit once (unique edge lifting).
    """
    total, base, vmap = cm.total_graph, cm.base_graph, cm.vertex_map
    if len(vmap) != total.vertex_count:
        raise ValueError("vertex_map length does not match the total graph")
    hit = [False] * base.vertex_count
    for image in vmap:
        if not 0 <= image < base.vertex_count:
            raise ValueError(f"vertex_map image {image} is out of range")
        hit[image] = True
    for v, was_hit in enumerate(hit):
        if not was_hit:
            return CoveringVerdict(False, v, "base vertex has an empty fiber")
    for v in range(total.vertex_count):
        images = sorted(vmap[u] for u in total.adjacency[v])
        if tuple(images) != base.adjacency[vmap[v]]:
            return CoveringVerdict(
                False, v, "neighborhood does not map bijectively onto the base neighborhood"
            )
    return CoveringVerdict(True)


def covering_degree(cm: CoveringMap) -> int:
    """Common fiber size of a valid cover.

    Fibers of a connected cover all have one cardinality d, with
    |V(total)| = d * |V(base)|. Unequal fibers mean the input is not a valid
    connected cover and are reported as an error.
    """
    counts = Counter(cm.vertex_map)
    sizes = {counts.get(v, 0) for v in range(cm.base_graph.vertex_count)}
    if len(sizes) != 1 or 0 in sizes:
        raise ValueError(
            f"fiber sizes are not constant ({sorted(sizes)}): "
            "not a valid cover of a connected base, or the graphs are disconnected"
        )
    d = sizes.pop()
    assert cm.total_graph.vertex_count == d * cm.base_graph.vertex_count
    return d


def lift_check(cm: CoveringMap) -> LiftVerdict:
    """Verify that refinement colors are preserved along the projection.

    Both graphs are refined independently under the shared canonical
    convention; at every round each total-graph vertex must carry exactly the
    color of its image. The first counterexample is reported.
    """
    total_trace = color_refine(cm.total_graph)
    base_trace = color_refine(cm.base_graph)
    rounds = max(len(total_trace.rounds), len(base_trace.rounds))
    for i in range(rounds):
        ct = total_trace.rounds[min(i, len(total_trace.rounds) - 1)]
        cb = base_trace.rounds[min(i, len(base_trace.rounds) - 1)]
        for v in range(cm.total_graph.vertex_count):
            if ct[v] != cb[cm.vertex_map[v]]:
                return LiftVerdict(False, i, v)
    return LiftVerdict(True)


@dataclass(frozen=True)
class RootedTreeBall:
    """Truncated unrolling of a graph: a rooted tree with depth labels.

    ``base_vertices[x]`` records which graph vertex tree node x unrolls; the
    root is always node 0. Leaves strictly inside the radius can only occur
    at unrollings of degree-1 vertices.
    """

    graph: Graph
    root: int
    depths: tuple[int, ...]
    radius: int
    base_vertices: tuple[int, ...]


def universal_cover_ball(g: Graph, root: int, radius: int) -> RootedTreeBall:
    """Radius-limited ball of the universal cover at a lift of ``root``.

    Nodes are walk prefixes that never immediately reverse the edge they
    arrived on; the children of a node at vertex v are all edges at v except
    that reversal, and the root expands every edge. Requires g connected.
    """
    if not 0 <= root < g.vertex_count:
        raise ValueError(f"root {root} out of range")
    if radius < 0:
        raise ValueError("radius must be non-negative")
    if not is_connected(g):
        raise ValueError("universal cover balls are defined for connected graphs")
    base = [root]
    depth = [0]
    came_from = [-1]  # base vertex we arrived from; -1 at the root
    edges = []
    queue = deque([0])
    while queue:
        x = queue.popleft()
        if depth[x] == radius:
            continue
        for u in g.adjacency[base[x]]:
            if u == came_from[x]:  # simple graph: vertex test == edge-reversal test
                continue
            y = len(base)
            base.append(u)
            depth.append(depth[x] + 1)
            came_from.append(base[x])
            edges.append((x, y))
            queue.append(y)
    tree = from_edge_list(len(base), edges)
    return RootedTreeBall(tree, 0, tuple(depth), radius, tuple(base))


def rooted_tree_canonical(t: RootedTreeBall) -> str:
    """Canonical code of a rooted tree: "(" + sorted child codes + ")".

    Two rooted trees receive equal codes exactly when they are isomorphic as
    rooted trees. Inputs that are not trees are rejected.
    """
    g, root = t.graph, t.root
    n = g.vertex_count
    if n == 0:
        raise ValueError("empty input is not a tree")
    if g.edge_count != n - 1:
        raise ValueError("input is not a tree (wrong edge count)")
    parent = [-2] * n
    parent[root] = -1
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in g.adjacency[v]:
            if parent[u] == -2:
                parent[u] = v
                order.append(u)
                queue.append(u)
    if len(order) != n:
        raise ValueError("input is not a tree (not connected)")
    codes = [""] * n
    for v in reversed(order):  # children are coded before their parent
        children = sorted(codes[u] for u in g.adjacency[v] if u != parent[v])
        codes[v] = "(" + "".join(children) + ")"
    return codes[root]
