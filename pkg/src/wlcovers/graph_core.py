"""Immutable simple-graph model and structural primitives.

Vertices are dense integers 0..n-1 and adjacency is a tuple of sorted
neighbor tuples, so graph values are hashable, comparable, and safe to
share across workers. All operations here are pure functions.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

# A partition of the vertex set: disjoint sorted vertex lists covering 0..n-1.
VertexPartition = list[list[int]]


class SizeLimitExceeded(RuntimeError):
    """An exact isomorphism search was refused because the graphs are too large.

    Raised instead of guessing: callers can retry with a larger limit or fall
    back to structure-aware methods.
    """


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph.

    ``adjacency[v]`` holds the strictly sorted neighbors of ``v``. Symmetry,
    absence of self-loops and absence of duplicate neighbors are re-checked on
    construction, so a malformed ``Graph`` value cannot exist.
    """

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        if len(self.adjacency) != self.vertex_count:
            raise ValueError("adjacency length does not match vertex_count")
        directed = set()
        for v, row in enumerate(self.adjacency):
            prev = -1
            for u in row:
                if not 0 <= u < self.vertex_count:
                    raise ValueError(f"neighbor {u} of vertex {v} is out of range")
                if u == v:
                    raise ValueError(f"self-loop at vertex {v}")
                if u <= prev:
                    raise ValueError(f"adjacency of vertex {v} is not strictly sorted")
                prev = u
                directed.add((v, u))
        for v, u in directed:
            if (u, v) not in directed:
                raise ValueError(f"edge {v}-{u} is missing its reverse")

    @property
    def edge_count(self) -> int:
        return sum(len(row) for row in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, w: int) -> bool:
        return w in self.adjacency[u]

    def edges(self):
        """Yield every undirected edge once as (u, w) with u < w, in sorted order."""
        for v, row in enumerate(self.adjacency):
            for u in row:
                if v < u:
                    yield (v, u)


def from_edge_list(vertex_count: int, edges) -> Graph:
    """Build a Graph from unordered vertex pairs.

    Duplicate pairs collapse to a single edge. Endpoints outside
    ``0..vertex_count-1`` and self-loop pairs are rejected.
    """
    neighbor_sets = [set() for _ in range(vertex_count)]
    for u, w in edges:
        if not (0 <= u < vertex_count and 0 <= w < vertex_count):
            raise ValueError(
                f"edge ({u}, {w}) has an endpoint outside 0..{vertex_count - 1}"
            )
        if u == w:
            raise ValueError(f"self-loop ({u}, {w}) is not allowed in a simple graph")
        neighbor_sets[u].add(w)
        neighbor_sets[w].add(u)
    return Graph(vertex_count, tuple(tuple(sorted(s)) for s in neighbor_sets))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("a path needs at least 1 vertex")
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def relabel(g: Graph, perm) -> Graph:
    """Apply a vertex permutation: vertex v of g becomes perm[v]."""
    if sorted(perm) != list(range(g.vertex_count)):
        raise ValueError("perm is not a permutation of the vertex ids")
    adjacency = [()] * g.vertex_count
    for v, row in enumerate(g.adjacency):
        adjacency[perm[v]] = tuple(sorted(perm[u] for u in row))
    return Graph(g.vertex_count, tuple(adjacency))


def disjoint_union(g: Graph, h: Graph) -> tuple[Graph, int]:
    """Concatenate two graphs; returns the union and the id offset of h's vertices."""
    offset = g.vertex_count
    shifted = tuple(tuple(u + offset for u in row) for row in h.adjacency)
    return Graph(offset + h.vertex_count, g.adjacency + shifted), offset


def connected_components(g: Graph) -> VertexPartition:
    """Maximal connected vertex sets, ordered by smallest contained vertex id."""
    seen = [False] * g.vertex_count
    groups = []
    for start in range(g.vertex_count):
        if seen[start]:
            continue
        seen[start] = True
        stack = [start]
        component = []
        while stack:
            v = stack.pop()
            component.append(v)
            for u in g.adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        groups.append(sorted(component))
    return groups


def is_connected(g: Graph) -> bool:
    if g.vertex_count <= 1:
        return True
    seen = [False] * g.vertex_count
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        v = queue.popleft()
        for u in g.adjacency[v]:
            if not seen[u]:
                seen[u] = True
                count += 1
                queue.append(u)
    return count == g.vertex_count


def euler_characteristic(g: Graph) -> int:
    """|V| - |E| with every undirected edge counted once."""
    return g.vertex_count - g.edge_count


def _search_order(g: Graph, class_size) -> list[int]:
    # Most-constrained-first: prefer vertices with many already-ordered
    # neighbors, then small color classes, then smallest id.
    n = g.vertex_count
    placed = [False] * n
    ordered_neighbors = [0] * n
    order = []
    for _ in range(n):
        best_key = None
        best = -1
        for v in range(n):
            if placed[v]:
                continue
            key = (-ordered_neighbors[v], class_size[v], v)
            if best_key is None or key < best_key:
                best_key = key
                best = v
        placed[best] = True
        order.append(best)
        for u in g.adjacency[best]:
            ordered_neighbors[u] += 1
    return order


def graphs_isomorphic(g: Graph, h: Graph, max_vertices: int = 32):
    """Exact isomorphism test for small graphs.

    Returns a witness: a tuple mapping each vertex of g to a vertex of h such
    that edges are preserved in both directions, or None when the graphs are
    definitively not isomorphic. Inputs larger than ``max_vertices`` raise
    SizeLimitExceeded rather than risk an unfinished search.

    Pruning: vertex/edge counts, degree sequences, component sizes, then the
    stable refinement coloring of the disjoint union restricts candidate
    images before backtracking.
    """
    if g.vertex_count != h.vertex_count or g.edge_count != h.edge_count:
        return None
    n = g.vertex_count
    if n > max_vertices:
        raise SizeLimitExceeded(
            f"isomorphism search is limited to {max_vertices} vertices, got {n}"
        )
    if n == 0:
        return ()
    if sorted(map(len, g.adjacency)) != sorted(map(len, h.adjacency)):
        return None
    if sorted(len(c) for c in connected_components(g)) != sorted(
        len(c) for c in connected_components(h)
    ):
        return None

    from .wl_refine import color_refine  # local import: wl_refine builds on this module

    union, offset = disjoint_union(g, h)
    stable = color_refine(union).stable
    cg, ch = stable[:offset], stable[offset:]
    if Counter(cg) != Counter(ch):
        return None

    candidates_by_color = {}
    for w, c in enumerate(ch):
        candidates_by_color.setdefault(c, []).append(w)
    class_size = [len(candidates_by_color[cg[v]]) for v in range(n)]
    order = _search_order(g, class_size)

    g_adj = [set(row) for row in g.adjacency]
    h_adj = [set(row) for row in h.adjacency]
    image = [-1] * n
    used = [False] * n

    def assign(depth: int) -> bool:
        if depth == n:
            return True
        v = order[depth]
        for w in candidates_by_color[cg[v]]:
            if used[w]:
                continue
            ok = True
            for prev in order[:depth]:
                if (prev in g_adj[v]) != (image[prev] in h_adj[w]):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = w
            used[w] = True
            if assign(depth + 1):
                return True
            image[v] = -1
            used[w] = False
        return False

    if not assign(0):
        return None
    witness = tuple(image)
    # Final safety: a bijection preserving all of g's edges into a graph with
    # the same edge count is automatically an isomorphism; re-check anyway.
    assert all(h.has_edge(witness[u], witness[w]) for u, w in g.edges())
    return witness
