import json
import random

import pytest

from helpers import random_graph
from wlcovers.bundled import experiment_base
from wlcovers.covers import make_voltage
from wlcovers.fileio import (
    EdgeListFormatError,
    RunManifest,
    file_digest,
    graph_to_dot,
    parse_edge_list,
    serialize_edge_list,
    voltage_from_dict,
    voltage_to_dict,
)
from wlcovers.graph_core import cycle_graph
from wlcovers.wl_refine import stable_coloring


def test_parse_triangle():
    assert parse_edge_list("3 3\n0 1\n1 2\n2 0") == cycle_graph(3)


def test_parse_trailing_newline_and_whitespace():
    g = parse_edge_list("2 1\n 0   1 \n")
    assert g.edge_count == 1


def test_parse_comments_and_blank_lines():
    text = "# a triangle\n\n3 3\n0 1  # first\n1 2\n\n2 0\n"
    assert parse_edge_list(text) == cycle_graph(3)


def test_parse_range_error_reports_line():
    with pytest.raises(EdgeListFormatError) as excinfo:
        parse_edge_list("3 1\n0 3")
    assert excinfo.value.line == 2
    assert "range" in str(excinfo.value)


def test_parse_header_errors():
    with pytest.raises(EdgeListFormatError, match="header"):
        parse_edge_list("")
    with pytest.raises(EdgeListFormatError, match="header"):
        parse_edge_list("3\n0 1\n")
    with pytest.raises(EdgeListFormatError, match="non-integer"):
        parse_edge_list("a b\n")


def test_parse_edge_count_mismatch():
    with pytest.raises(EdgeListFormatError, match="edge lines"):
        parse_edge_list("3 2\n0 1\n")
    with pytest.raises(EdgeListFormatError, match="edge lines"):
        parse_edge_list("3 1\n0 1\n1 2\n")


def test_parse_self_loop_line_number():
    with pytest.raises(EdgeListFormatError) as excinfo:
        parse_edge_list("3 2\n0 1\n2 2\n")
    assert excinfo.value.line == 3


def test_round_trip_random_graphs():
    rng = random.Random(6)
    for _ in range(25):
        g = random_graph(rng, rng.randrange(0, 10), rng.randrange(0, 16))
        assert parse_edge_list(serialize_edge_list(g)) == g


def test_serialize_format():
    text = serialize_edge_list(cycle_graph(3))
    assert text == "3 3\n0 1\n0 2\n1 2\n"


def test_dot_output():
    g = experiment_base()
    colors = stable_coloring(g)
    dot = graph_to_dot(g, colors)
    assert dot.startswith("graph G {")
    assert dot.rstrip().endswith("}")
    assert f'label="{colors[0]}"' in dot
    assert "0 -- 1;" in dot
    plain = graph_to_dot(g)
    assert 'label="0"' in plain and "fillcolor" not in plain


def test_voltage_round_trip():
    base = experiment_base()
    va = make_voltage(base, 3, [(1, 2, 0), (2, 0, 1)])
    data = json.loads(json.dumps(voltage_to_dict(va)))
    assert voltage_from_dict(data) == va


def test_voltage_dict_validation():
    with pytest.raises(ValueError, match="malformed"):
        voltage_from_dict({"degree": 2})
    with pytest.raises(ValueError, match="permutation"):
        voltage_from_dict({"degree": 2, "edges": [[0, 1]], "perms": [[0, 0]]})


def test_run_manifest_serialization(tmp_path):
    path = tmp_path / "input.el"
    path.write_text(serialize_edge_list(cycle_graph(3)))
    manifest = RunManifest(
        command="demo",
        arguments=["demo", str(path)],
        inputs={str(path): file_digest(path)},
        outputs={},
        tool_version="0.1.0",
        wall_time_s=0.25,
    )
    payload = json.loads(manifest.to_json())
    assert payload["command"] == "demo"
    assert payload["inputs"][str(path)].startswith("sha256:")
    assert payload["wall_time_s"] == 0.25
