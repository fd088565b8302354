"""Refinement-equivalence classes of graphs via covering spaces.

Library surface: build and validate covering maps, run color refinement and
the two-graph refinement test, enumerate connected degree-d covers of a rigid
base into isomorphism classes, cross-check the class counts against exact
subgroup counting, and show that structure-only message passing cannot tell
the generated graphs apart.
"""

__version__ = "0.1.0"

from .counting import (
    check_counting_consistency,
    conjugacy_class_count,
    hall_count,
    lower_bound,
    rank_from_graph,
    transitive_tuple_count,
)
from .cover_iso import (
    CoverIsoResult,
    covers_isomorphic,
    extend_cover_morphism,
    graph_iso_equals_cover_iso_check,
)
from .covers import (
    CoveringMap,
    RootedTreeBall,
    VoltageAssignment,
    build_cover,
    covering_degree,
    distinguished_edges,
    lift_check,
    make_voltage,
    rooted_tree_canonical,
    universal_cover_ball,
    validate_covering,
)
from .dataset_gen import (
    BudgetExceeded,
    CoverClass,
    CoverDataset,
    enumerate_voltages,
    export_dataset,
    generate_graphcovers,
    load_dataset,
    verify_dataset,
)
from .graph_core import (
    Graph,
    SizeLimitExceeded,
    connected_components,
    cycle_graph,
    disjoint_union,
    euler_characteristic,
    from_edge_list,
    graphs_isomorphic,
    is_connected,
    path_graph,
    relabel,
)
from .mp_harness import (
    FeatureSpec,
    MPModel,
    embed_graph,
    expected_indistinguishable,
    indistinguishability_report,
)
from .wl_refine import (
    RefinementTrace,
    WLVerdict,
    check_decomposition,
    color_refine,
    component_color_groups,
    is_discrete,
    stable_coloring,
    wl_test,
)
