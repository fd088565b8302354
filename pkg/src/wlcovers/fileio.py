"""Text formats: edge lists, voltage JSON, DOT export, and run manifests."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .covers import VoltageAssignment
from .graph_core import Graph, from_edge_list


class EdgeListFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def parse_edge_list(text: str) -> Graph:
    """Parse the "n m" header plus m "u v" lines; '#' starts a comment.

    Blank lines are skipped, whitespace is flexible, and every error carries
    the offending line number.
    """
    rows = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            rows.append((number, content))
    if not rows:
        raise EdgeListFormatError("missing 'n m' header")
    header_line, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise EdgeListFormatError(f"expected header 'n m', got {header!r}", header_line)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise EdgeListFormatError(f"non-integer header {header!r}", header_line) from None
    if n < 0 or m < 0:
        raise EdgeListFormatError("header counts must be non-negative", header_line)
    if len(rows) - 1 != m:
        raise EdgeListFormatError(
            f"header declares {m} edges but {len(rows) - 1} edge lines follow",
            rows[-1][0] if len(rows) > 1 else header_line,
        )
    edges = []
    for number, content in rows[1:]:
        parts = content.split()
        if len(parts) != 2:
            raise EdgeListFormatError(f"expected 'u v', got {content!r}", number)
        try:
            u, w = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListFormatError(f"non-integer endpoints {content!r}", number) from None
        if not (0 <= u < n and 0 <= w < n):
            raise EdgeListFormatError(f"vertex out of range in {content!r}", number)
        if u == w:
            raise EdgeListFormatError(f"self-loop {content!r}", number)
        edges.append((u, w))
    return from_edge_list(n, edges)


def serialize_edge_list(g: Graph) -> str:
    lines = [f"{g.vertex_count} {g.edge_count}"]
    lines.extend(f"{u} {w}" for u, w in g.edges())
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def graph_to_dot(g: Graph, colors=None, name: str = "G") -> str:
    """Undirected DOT text; with ``colors`` given, nodes are labelled and
    filled by their color id."""
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for v in range(g.vertex_count):
        if colors is None:
            lines.append(f'  {v} [label="{v}"];')
        else:
            fill = colors[v] % 12 + 1  # 12-step palette, cycled
            lines.append(
                f'  {v} [label="{colors[v]}", style=filled, '
                f'colorscheme=set312, fillcolor={fill}];'
            )
    lines.extend(f"  {u} -- {w};" for u, w in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


def voltage_to_dict(va: VoltageAssignment) -> dict:
    return {
        "degree": va.degree,
        "edges": [list(e) for e in va.distinguished_edges],
        "perms": [list(p) for p in va.permutations],
    }


def voltage_from_dict(data: dict) -> VoltageAssignment:
    try:
        degree = int(data["degree"])
        edges = tuple((int(u), int(w)) for u, w in data["edges"])
        perms = tuple(tuple(int(x) for x in p) for p in data["perms"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed voltage assignment: {exc}") from exc
    return VoltageAssignment(degree, edges, perms)


def read_voltage(path) -> VoltageAssignment:
    return voltage_from_dict(json.loads(Path(path).read_text()))


def write_voltage(va: VoltageAssignment, path):
    Path(path).write_text(json.dumps(voltage_to_dict(va), indent=2, sort_keys=True) + "\n")


def file_digest(path) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class RunManifest:
    """Reproducibility record written next to command outputs."""

    command: str
    arguments: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: dict[str, str] = field(default_factory=dict)
    tool_version: str = ""
    wall_time_s: float = 0.0

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "arguments": self.arguments,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "tool_version": self.tool_version,
            "wall_time_s": round(self.wall_time_s, 6),
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_run_manifest(manifest: RunManifest, path):
    Path(path).write_text(manifest.to_json())
