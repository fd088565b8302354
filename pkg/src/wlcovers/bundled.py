"""Bundled experiment inputs.

The shipped base graph has 9 vertices, 10 edges, one connected component and
a stable refinement coloring that separates all vertices, which is exactly
what the generator and the embedding experiments require. It is two cycles
joined through shared vertices, decorated with pendant paths that kill every
symmetry: a 4-cycle 0-1-2-3, a second path 0-4-5-2 closing the second cycle,
a 2-path hanging off vertex 1 and a pendant off vertex 4.

Run ``python -m wlcovers.bundled out.el`` to write it as an edge list.
"""

from __future__ import annotations

from .covers import CoveringMap, VoltageAssignment, build_cover, make_voltage
from .graph_core import Graph, from_edge_list

EXPERIMENT_BASE_EDGES = (
    (0, 1),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 6),
    (2, 3),
    (2, 5),
    (4, 5),
    (4, 8),
    (6, 7),
)

EXPERIMENT_DEGREE = 5

# First three connected, pairwise non-isomorphic degree-5 voltages in
# enumeration order over the base's two distinguished edges.
EXPERIMENT_COVER_PERMS = (
    ((0, 1, 2, 3, 4), (1, 2, 3, 4, 0)),
    ((0, 1, 2, 4, 3), (1, 2, 3, 0, 4)),
    ((0, 1, 2, 4, 3), (1, 2, 3, 4, 0)),
)


def experiment_base() -> Graph:
    return from_edge_list(9, EXPERIMENT_BASE_EDGES)


def experiment_cover_voltages() -> tuple[VoltageAssignment, ...]:
    base = experiment_base()
    return tuple(
        make_voltage(base, EXPERIMENT_DEGREE, perms) for perms in EXPERIMENT_COVER_PERMS
    )


def experiment_covers() -> tuple[CoveringMap, ...]:
    base = experiment_base()
    return tuple(build_cover(base, va) for va in experiment_cover_voltages())


if __name__ == "__main__":
    import sys

    from .fileio import serialize_edge_list

    text = serialize_edge_list(experiment_base())
    if len(sys.argv) > 1:
        with open(sys.argv[1], "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
