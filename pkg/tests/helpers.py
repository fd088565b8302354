"""Shared generators and oracles for the test-suite.

Everything takes an explicit random.Random so corpora are reproducible.
"""

from __future__ import annotations

import itertools

from wlcovers.covers import make_voltage, universal_cover_ball, rooted_tree_canonical
from wlcovers.graph_core import Graph, from_edge_list, is_connected
from wlcovers.wl_refine import is_discrete


def random_graph(rng, n, m):
    """Simple graph on n vertices with up to m random edges."""
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    return from_edge_list(n, pairs[:m])


def random_connected_graph(rng, n, extra_edges=0):
    """Random spanning tree plus extra random non-tree edges."""
    edges = []
    for v in range(1, n):
        edges.append((rng.randrange(v), v))
    candidates = [
        (u, w)
        for u, w in itertools.combinations(range(n), 2)
        if (u, w) not in edges and (w, u) not in edges
    ]
    rng.shuffle(candidates)
    edges.extend(candidates[:extra_edges])
    return from_edge_list(n, edges)


def random_tree(rng, n):
    """Uniform labelled tree from a random Pruefer sequence."""
    if n == 1:
        return from_edge_list(1, [])
    if n == 2:
        return from_edge_list(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    leaves = sorted(v for v in range(n) if degree[v] == 1)
    import heapq

    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return from_edge_list(n, edges)


def random_rigid_base(rng, max_tries=10_000):
    """Rejection-sample a connected graph whose stable coloring is discrete."""
    for _ in range(max_tries):
        n = rng.randrange(6, 11)
        g = random_connected_graph(rng, n, extra_edges=rng.randrange(0, 3))
        if is_discrete(g):
            return g
    raise AssertionError("failed to sample a rigid base")


def random_permutation(rng, d):
    p = list(range(d))
    rng.shuffle(p)
    return tuple(p)


def random_voltage(rng, base: Graph, degree: int):
    from wlcovers.covers import distinguished_edges

    r = len(distinguished_edges(base))
    return make_voltage(base, degree, [random_permutation(rng, degree) for _ in range(r)])


def unrooted_tree_canonical(tree: Graph) -> str:
    """Canonical form of an unrooted tree: lexicographic minimum of the rooted
    codes over all root choices (the full unrolling of a tree is itself)."""
    assert tree.edge_count == tree.vertex_count - 1 and is_connected(tree)
    radius = tree.vertex_count  # always at least the diameter
    return min(
        rooted_tree_canonical(universal_cover_ball(tree, root, radius))
        for root in range(tree.vertex_count)
    )


def exhaustive_isomorphic(g: Graph, h: Graph) -> bool:
    """All-permutations oracle, use only for tiny graphs."""
    if g.vertex_count != h.vertex_count or g.edge_count != h.edge_count:
        return False
    g_edges = set(g.edges())
    for perm in itertools.permutations(range(h.vertex_count)):
        if all(h.has_edge(perm[u], perm[w]) for u, w in g_edges):
            return True
    return False
