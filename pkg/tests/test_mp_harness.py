import random

import numpy as np
import pytest

from helpers import random_graph
from wlcovers.bundled import experiment_base
from wlcovers.dataset_gen import generate_graphcovers
from wlcovers.graph_core import cycle_graph, disjoint_union, relabel
from wlcovers.mp_harness import (
    FeatureSpec,
    MPModel,
    embed_graph,
    expected_indistinguishable,
    indistinguishability_report,
)


def degree2_graphs():
    return [rep.graph for rep in generate_graphcovers(experiment_base(), 2).representatives]


def rel_linf(a, b):
    scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    return float(np.max(np.abs(a - b))) / scale


def test_feature_shapes():
    g = experiment_base()
    assert FeatureSpec("constant").features(g).shape == (9, 1)
    assert FeatureSpec("degree").features(g).shape == (9, 1)
    assert FeatureSpec("random", seed=1).features(g).shape == (9, 1)
    assert FeatureSpec("one_hot_id").features(g).shape == (9, 9)
    assert FeatureSpec("one_hot_id").dimension(g) == 9


def test_unknown_feature_kind_rejected():
    with pytest.raises(ValueError, match="kind"):
        FeatureSpec("laplacian")


def test_degree_features_match_degrees():
    g = experiment_base()
    feats = FeatureSpec("degree").features(g)
    assert [int(x) for x in feats[:, 0]] == [g.degree(v) for v in range(9)]


def test_random_features_reproducible_and_seed_sensitive():
    g = experiment_base()
    a = FeatureSpec("random", seed=5).features(g)
    b = FeatureSpec("random", seed=5).features(g)
    c = FeatureSpec("random", seed=6).features(g)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_embedding_shape_and_determinism():
    g = cycle_graph(6)
    model = MPModel()
    e1 = embed_graph(g, FeatureSpec("constant"), model)
    e2 = embed_graph(g, FeatureSpec("constant"), model)
    assert e1.shape == (200,)
    assert np.array_equal(e1, e2)


def test_seed_changes_weights():
    g = cycle_graph(6)
    a = embed_graph(g, FeatureSpec("constant"), MPModel(seed=1))
    b = embed_graph(g, FeatureSpec("constant"), MPModel(seed=2))
    assert not np.allclose(a, b)


def test_permutation_invariance():
    rng = random.Random(8)
    model = MPModel()
    for _ in range(10):
        n = rng.randrange(2, 12)
        g = random_graph(rng, n, rng.randrange(0, 18))
        perm = list(range(n))
        rng.shuffle(perm)
        a = embed_graph(g, FeatureSpec("constant"), model)
        b = embed_graph(relabel(g, perm), FeatureSpec("constant"), model)
        assert rel_linf(a, b) < 1e-9


def test_isomorphic_graphs_identical_embeddings():
    g = cycle_graph(5)
    h = relabel(g, [2, 0, 4, 1, 3])
    a = embed_graph(g, FeatureSpec("constant"))
    b = embed_graph(h, FeatureSpec("constant"))
    assert rel_linf(a, b) < 1e-9


def test_cover_invariance_structure_features():
    graphs = degree2_graphs()
    for kind in ("constant", "degree"):
        report = indistinguishability_report(graphs, FeatureSpec(kind))
        assert report.indistinguishable
        assert report.max_distance < 1e-6 * report.scale


def test_base_itself_matches_covers_per_vertex():
    # every cover vertex behaves exactly like its base image, so the
    # mean-pooled halves coincide even between base and cover
    base = experiment_base()
    cover = generate_graphcovers(base, 2).representatives[0].graph
    model = MPModel()
    eb = embed_graph(base, FeatureSpec("constant"), model)
    ec = embed_graph(cover, FeatureSpec("constant"), model)
    assert rel_linf(eb, ec) < 1e-9


def test_one_hot_distinguishes_covers():
    graphs = degree2_graphs()
    report = indistinguishability_report(graphs, FeatureSpec("one_hot_id"))
    assert not report.indistinguishable
    assert report.max_distance > 1e-3


def test_random_features_distinguish_covers():
    graphs = degree2_graphs()
    report = indistinguishability_report(graphs, FeatureSpec("random", seed=42))
    assert not report.indistinguishable


def test_wl_equivalent_pairs_agree_under_constant_features():
    two_c3, _ = disjoint_union(cycle_graph(3), cycle_graph(3))
    a = embed_graph(cycle_graph(6), FeatureSpec("constant"))
    b = embed_graph(two_c3, FeatureSpec("constant"))
    assert rel_linf(a, b) < 1e-9


def test_report_fields_and_accuracy():
    graphs = degree2_graphs()
    report = indistinguishability_report(graphs, FeatureSpec("constant"))
    assert report.verdict == "indistinguishable"
    assert report.predicted_accuracy == pytest.approx(1 / 3)
    assert report.distances.shape == (3, 3)
    assert np.allclose(report.distances, report.distances.T)
    separable = indistinguishability_report(graphs, FeatureSpec("one_hot_id"))
    assert separable.verdict == "distinguishable"
    assert separable.predicted_accuracy == 1.0


def test_tolerance_controls_verdict():
    graphs = degree2_graphs()
    report = indistinguishability_report(graphs, FeatureSpec("constant"), tolerance=0.0)
    assert not report.indistinguishable


def test_needs_two_graphs():
    with pytest.raises(ValueError, match="two graphs"):
        indistinguishability_report([cycle_graph(3)], FeatureSpec("constant"))


def test_explicit_feature_array_and_dimension_mismatch():
    g = cycle_graph(4)
    embed_graph(g, np.ones((4, 2)))  # fine
    with pytest.raises(ValueError, match="feature rows"):
        embed_graph(g, np.ones((3, 2)))


def test_mean_aggregation_variant():
    g = cycle_graph(6)
    sum_model = MPModel(aggregation="sum")
    mean_model = MPModel(aggregation="mean")
    a = embed_graph(g, FeatureSpec("degree"), sum_model)
    b = embed_graph(g, FeatureSpec("degree"), mean_model)
    assert a.shape == b.shape
    assert not np.allclose(a, b)
    report = indistinguishability_report(
        degree2_graphs(), FeatureSpec("constant"), mean_model
    )
    assert report.indistinguishable


def test_expected_verdict_table():
    assert expected_indistinguishable("constant")
    assert expected_indistinguishable("degree")
    assert not expected_indistinguishable("random")
    assert not expected_indistinguishable("one_hot_id")
    with pytest.raises(ValueError):
        expected_indistinguishable("mystery")
