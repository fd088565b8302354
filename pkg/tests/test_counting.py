from math import factorial

import pytest

from wlcovers.bundled import experiment_base
from wlcovers.counting import (
    check_counting_consistency,
    conjugacy_class_count,
    hall_count,
    lower_bound,
    orbit_is_transitive,
    rank_from_graph,
    transitive_tuple_count,
)
from wlcovers.graph_core import cycle_graph, disjoint_union, path_graph


def test_hall_base_case_all_ranks():
    for r in range(1, 8):
        assert hall_count(1, r) == 1


def test_hall_small_values():
    assert hall_count(2, 2) == 3
    assert hall_count(3, 2) == 13
    assert hall_count(2, 3) == 7


def test_hall_rank_one_is_always_one():
    # one subgroup per index in an infinite cyclic group
    for d in range(1, 10):
        assert hall_count(d, 1) == 1


def test_hall_rejects_bad_arguments():
    with pytest.raises(ValueError):
        hall_count(0, 2)
    with pytest.raises(ValueError):
        hall_count(2, 0)


def test_hall_matches_transitive_tuple_oracle():
    for r in range(1, 4):
        for d in range(1, 5):
            assert transitive_tuple_count(d, r) == factorial(d - 1) * hall_count(d, r)


def test_hall_monotone_in_rank():
    for d in range(2, 7):
        values = [hall_count(d, r) for r in range(1, 7)]
        assert all(a < b for a, b in zip(values, values[1:]))


def test_hall_dominates_factorial_power():
    for d in range(1, 9):
        for r in range(2, 5):
            assert hall_count(d, r) >= factorial(d) ** (r - 1)


def test_values_exceed_64_bits_exactly():
    assert hall_count(8, 3) > 2**32
    value = hall_count(13, 3)
    assert value > 2**63
    # the recursion reproduces itself when recomputed, no float contamination
    assert isinstance(value, int)
    assert hall_count(13, 3) == value


def test_lower_bound_values():
    assert lower_bound(3, 2) == 2
    assert lower_bound(5, 2) == 24
    assert lower_bound(2, 3) == 2


def test_lower_bound_refuses_small_rank():
    with pytest.raises(ValueError, match="rank"):
        lower_bound(3, 1)


def test_two_bound_forms_agree():
    # d * (d**(r-2) * ((d-1)!)**(r-1)) == (d!)**(r-1)
    for d in range(1, 9):
        for r in range(2, 5):
            assert d * lower_bound(d, r) == factorial(d) ** (r - 1)


def test_rank_examples():
    assert rank_from_graph(path_graph(5)) == 0
    assert rank_from_graph(cycle_graph(6)) == 1
    assert rank_from_graph(experiment_base()) == 2


def test_rank_rejects_disconnected():
    two_c3, _ = disjoint_union(cycle_graph(3), cycle_graph(3))
    with pytest.raises(ValueError, match="connected"):
        rank_from_graph(two_c3)


def test_transitivity_check():
    assert orbit_is_transitive([(1, 2, 0)], 3)
    assert not orbit_is_transitive([(0, 2, 1)], 3)
    assert orbit_is_transitive([(1, 0, 2), (0, 2, 1)], 3)


def test_conjugacy_class_counts():
    assert conjugacy_class_count(1, 2) == 1
    assert conjugacy_class_count(2, 2) == 3
    assert conjugacy_class_count(3, 2) == 7
    assert conjugacy_class_count(2, 3) == 7  # index-2 subgroups are normal


def test_consistency_report_degree2():
    report = check_counting_consistency(experiment_base(), 2)
    assert report.ok
    assert report.class_count == 3
    assert report.subgroup_count == 3
    assert report.connected_voltages == 3  # only the all-identity tuple disconnects
    assert report.predicted_connected == 3


def test_consistency_report_degree3():
    report = check_counting_consistency(experiment_base(), 3)
    assert report.ok
    assert report.class_count == 7
    assert report.subgroup_count == 13
    assert report.connected_voltages == 26
    assert 3 * report.class_count >= 13


def test_consistency_cycle_base_rank_one():
    # a cycle's covers of any degree collapse to a single class
    report = check_counting_consistency(cycle_graph(6), 3, require_discrete=False)
    assert report.ok
    assert report.rank == 1
    assert report.class_count == 1
    assert report.class_lower_bound is None
    assert report.connected_voltages == factorial(2) * 1
