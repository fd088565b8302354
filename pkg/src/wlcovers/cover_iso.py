"""Cover-isomorphism testing by forced morphism extension.

A morphism between connected covers of one base is pinned down by its value
at a single vertex: every neighbor image is the unique lift of the
corresponding base edge. Extending from a seed therefore never backtracks,
and two degree-d covers are isomorphic iff one of the d possible seeds
extends to a bijection. Over a base whose stable coloring separates all
vertices, cover isomorphism and plain graph isomorphism coincide, which the
bridge check here verifies against the brute-force oracle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .covers import CoveringMap, covering_degree
from .graph_core import graphs_isomorphic, is_connected
from .wl_refine import is_discrete


class CoverIsoMismatch(RuntimeError):
    """Cover-isomorphism and graph-isomorphism disagreed where they must agree."""


@dataclass(frozen=True)
class CoverIsoResult:
    isomorphic: bool
    witness: tuple[int, ...] | None = None
    reason: str | None = None


@dataclass(frozen=True)
class JointIsoVerdict:
    cover_isomorphic: bool
    graph_isomorphic: bool

    @property
    def agree(self) -> bool:
        return self.cover_isomorphic == self.graph_isomorphic


def _require_same_base(src: CoveringMap, dst: CoveringMap):
    if src.base_graph != dst.base_graph:
        raise ValueError("covers must share the same base graph")


def extend_cover_morphism(src: CoveringMap, dst: CoveringMap, seed):
    """Grow the unique cover morphism sending seed[0] to seed[1], if it exists.

    Breadth-first forced extension: once a vertex is mapped, each of its
    neighbors must go to the single neighbor of the image lying in the right
    fiber. Returns the complete vertex map when the extension is conflict-free
    and bijective, else None. Cost is linear in the source's edge count.
    """
    _require_same_base(src, dst)
    sv, dv = seed
    if src.vertex_map[sv] != dst.vertex_map[dv]:
        raise ValueError(
            f"seed pair ({sv}, {dv}) does not respect fibers: "
            f"images {src.vertex_map[sv]} != {dst.vertex_map[dv]}"
        )
    if not is_connected(src.total_graph):
        raise ValueError("source total graph must be connected")
    n = src.total_graph.vertex_count
    phi = [-1] * n
    phi[sv] = dv
    queue = deque([sv])
    while queue:
        v = queue.popleft()
        fv = phi[v]
        for u in src.total_graph.adjacency[v]:
            target_base = src.vertex_map[u]
            lifts = [
                w for w in dst.total_graph.adjacency[fv] if dst.vertex_map[w] == target_base
            ]
            if len(lifts) != 1:
                raise ValueError(
                    "destination is not a valid covering map (edge lift not unique)"
                )
            w = lifts[0]
            if phi[u] == -1:
                phi[u] = w
                queue.append(u)
            elif phi[u] != w:
                return None  # two forced images conflict: no morphism from this seed
    if dst.total_graph.vertex_count != n or len(set(phi)) != n:
        return None  # a morphism exists but is not bijective
    return tuple(phi)


def covers_isomorphic(src: CoveringMap, dst: CoveringMap) -> CoverIsoResult:
    """Decide cover isomorphism by trying the d candidate seeds.

    Vertex 0 of the source is fixed; the candidate images are the destination
    fiber over its base vertex, tried in ascending id order (the outcome is
    seed-order independent). Degree mismatch short-circuits to a negative
    result with a diagnostic.
    """
    _require_same_base(src, dst)
    d_src = covering_degree(src)
    d_dst = covering_degree(dst)
    if d_src != d_dst:
        return CoverIsoResult(False, None, f"degree mismatch: {d_src} != {d_dst}")
    if not is_connected(src.total_graph) or not is_connected(dst.total_graph):
        raise ValueError("cover isomorphism testing requires connected total graphs")
    base_vertex = src.vertex_map[0]
    for candidate in dst.fiber(base_vertex):
        phi = extend_cover_morphism(src, dst, (0, candidate))
        if phi is not None:
            return CoverIsoResult(True, phi)
    return CoverIsoResult(False, None, "no seed extends to an isomorphism")


def graph_iso_equals_cover_iso_check(
    src: CoveringMap, dst: CoveringMap, max_vertices: int = 32
) -> JointIsoVerdict:
    """Run both isomorphism notions and insist they agree.

    Valid only when the base's stable coloring separates every vertex; for
    such bases the two notions provably coincide, so disagreement indicates a
    bug and raises CoverIsoMismatch. Other bases are refused because the
    notions may genuinely diverge there.
    """
    if not is_discrete(src.base_graph):
        raise ValueError(
            "base stable coloring does not separate all vertices; "
            "cover isomorphism and graph isomorphism may diverge"
        )
    cover_iso = covers_isomorphic(src, dst).isomorphic
    graph_iso = (
        graphs_isomorphic(src.total_graph, dst.total_graph, max_vertices=max_vertices)
        is not None
    )
    if cover_iso != graph_iso:
        raise CoverIsoMismatch(
            f"cover isomorphism ({cover_iso}) and graph isomorphism ({graph_iso}) "
            "disagree over a vertex-separating base"
        )
    return JointIsoVerdict(cover_iso, graph_iso)
