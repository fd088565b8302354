"""Color refinement, the two-graph refinement test, and disconnected-case checks.

The refinement recolors every vertex each round with a canonical intern of the
pair (own color, sorted multiset of neighbor colors). New ids are assigned by
lexicographic order of those signatures, which makes colors reproducible
across runs and directly comparable between two graphs refined separately:
whenever the two graphs realize the same signature sets round by round (e.g.
a graph and one of its covers) they receive identical ids.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .graph_core import Graph, VertexPartition, connected_components, disjoint_union

Coloring = tuple[int, ...]
ColorHistogram = dict[int, int]


@dataclass(frozen=True)
class RefinementTrace:
    """Round-by-round refinement history.

    ``rounds[0]`` is the initial coloring; ``stable_round`` is the index of
    the first round whose induced partition equals the previous round's (the
    canonical renumbering makes that literal tuple equality).
    """

    rounds: tuple[Coloring, ...]
    stable_round: int

    @property
    def stable(self) -> Coloring:
        return self.rounds[-1]

    @property
    def num_colors(self) -> int:
        return len(set(self.stable))


def color_classes(colors: Coloring) -> VertexPartition:
    """Group vertex ids by color, ordered by color id."""
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        groups.setdefault(c, []).append(v)
    return [groups[c] for c in sorted(groups)]


def color_histogram(colors, vertices=None) -> ColorHistogram:
    if vertices is None:
        return dict(Counter(colors))
    return dict(Counter(colors[v] for v in vertices))


def _dense(raw) -> Coloring:
    table = {c: i for i, c in enumerate(sorted(set(raw)))}
    return tuple(table[c] for c in raw)


def _refine_round(g: Graph, colors: Coloring) -> Coloring:
    signatures = [
        (colors[v], tuple(sorted(colors[u] for u in g.adjacency[v])))
        for v in range(g.vertex_count)
    ]
    table = {s: i for i, s in enumerate(sorted(set(signatures)))}
    return tuple(table[s] for s in signatures)


def color_refine(g: Graph, initial=None) -> RefinementTrace:
    """Iterate canonical recoloring until the induced partition stabilizes.

    ``initial`` defaults to the constant coloring; a supplied coloring is
    first interned to dense ids (by sorted order of its raw values).
    """
    if initial is None:
        colors: Coloring = (0,) * g.vertex_count
    else:
        if len(initial) != g.vertex_count:
            raise ValueError(
                f"initial coloring has {len(initial)} entries for {g.vertex_count} vertices"
            )
        colors = _dense(tuple(initial))
    rounds = [colors]
    while True:
        refined = _refine_round(g, colors)
        rounds.append(refined)
        if refined == colors:
            # Renumbering is the identity on a stable partition, so tuple
            # equality detects stabilization exactly.
            return RefinementTrace(tuple(rounds), len(rounds) - 1)
        colors = refined


def stable_coloring(g: Graph) -> Coloring:
    return color_refine(g).stable


def is_discrete(g: Graph) -> bool:
    """True iff the stable coloring assigns every vertex its own color."""
    return color_refine(g).num_colors == g.vertex_count


@dataclass(frozen=True)
class WLVerdict:
    equivalent: bool
    distinguished_at: int | None = None

    def __str__(self):
        if self.equivalent:
            return "equivalent"
        return f"distinguished at round {self.distinguished_at}"


def wl_test(g: Graph, h: Graph) -> WLVerdict:
    """Refine the disjoint union of g and h and compare per-side histograms.

    The graphs are equivalent when every round (hence the stable round) gives
    both sides the same number of vertices of each color; otherwise the first
    diverging round is reported. Disconnected inputs are fine.
    """
    union, offset = disjoint_union(g, h)
    trace = color_refine(union)
    for i, colors in enumerate(trace.rounds):
        if Counter(colors[:offset]) != Counter(colors[offset:]):
            return WLVerdict(False, i)
    return WLVerdict(True)


def component_color_groups(g: Graph) -> list[list[list[int]]]:
    """Group the connected components of g by their stable color sets.

    Two finite connected components either use exactly the same stable colors
    or completely disjoint ones, so grouping by color set is well defined.
    Groups and the components inside them are ordered by smallest vertex id.
    """
    stable = color_refine(g).stable
    groups: dict[frozenset, list[list[int]]] = {}
    for component in connected_components(g):
        key = frozenset(stable[v] for v in component)
        for other in groups:
            if other != key and other & key:
                raise RuntimeError(
                    "component color sets overlap without being equal; "
                    "this contradicts the refinement invariant"
                )
        groups.setdefault(key, []).append(component)
    # dict preserves insertion order: groups appear by smallest member vertex
    return list(groups.values())


@dataclass(frozen=True)
class DecompositionGroup:
    colors: tuple[int, ...]
    g_components: tuple[tuple[int, ...], ...]
    h_components: tuple[tuple[int, ...], ...]

    @property
    def g_order(self) -> int:
        return sum(len(c) for c in self.g_components)

    @property
    def h_order(self) -> int:
        return sum(len(c) for c in self.h_components)

    @property
    def ok(self) -> bool:
        return bool(self.g_components) and bool(self.h_components) and (
            self.g_order == self.h_order
        )


@dataclass(frozen=True)
class DecompositionVerdict:
    ok: bool
    groups: tuple[DecompositionGroup, ...]
    offending: int | None = None

    def __str__(self):
        if self.ok:
            return f"pass ({len(self.groups)} groups)"
        bad = self.groups[self.offending]
        return (
            f"fail at group {self.offending}: "
            f"orders {bad.g_order} vs {bad.h_order}, "
            f"{len(bad.g_components)} vs {len(bad.h_components)} components"
        )


def check_decomposition(g: Graph, h: Graph) -> DecompositionVerdict:
    """Match the components of g and h group-by-group under joint refinement.

    Components of the disjoint union are grouped by stable color set; the
    checkable conditions are that every group draws components from both
    sides and that the total order contributed by g equals the total order
    contributed by h in each group.
    """
    union, offset = disjoint_union(g, h)
    stable = color_refine(union).stable
    buckets: dict[frozenset, tuple[list, list]] = {}
    for component in connected_components(union):
        key = frozenset(stable[v] for v in component)
        sides = buckets.setdefault(key, ([], []))
        if component[0] < offset:
            sides[0].append(tuple(component))
        else:
            sides[1].append(tuple(v - offset for v in component))
    groups = []
    for key in sorted(buckets, key=sorted):
        g_side, h_side = buckets[key]
        groups.append(
            DecompositionGroup(tuple(sorted(key)), tuple(g_side), tuple(h_side))
        )
    offending = next((i for i, grp in enumerate(groups) if not grp.ok), None)
    return DecompositionVerdict(offending is None, tuple(groups), offending)
