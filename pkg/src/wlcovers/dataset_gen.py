"""Exhaustive enumeration of connected degree-d covers up to isomorphism.

The generator walks every voltage assignment over the base's distinguished
edges in lexicographic order, keeps the connected ones (the distinguished
permutations must move the sheet indices transitively), and adds a cover to
the dataset exactly when it is not cover-isomorphic to any representative
found so far. The first-found voltage of each class is its representative,
so output is deterministic.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial
from pathlib import Path

from . import fileio
from .counting import hall_count, lower_bound, orbit_is_transitive, rank_from_graph
from .cover_iso import covers_isomorphic
from .covers import (
    CoveringMap,
    VoltageAssignment,
    build_cover,
    distinguished_edges,
    lift_check,
    validate_covering,
)
from .graph_core import (
    Graph,
    SizeLimitExceeded,
    from_edge_list,
    graphs_isomorphic,
    is_connected,
)
from .wl_refine import color_refine, is_discrete, wl_test

DEFAULT_BUDGET = 10_000_000

MANIFEST_FORMAT = "graphcovers-dataset"
MANIFEST_SCHEMA_VERSION = 1


class BudgetExceeded(RuntimeError):
    """Enumeration refused: (d!)**r voltage tuples exceed the configured budget."""

    def __init__(self, required, budget, degree, rank):
        self.required = required
        self.budget = budget
        self.degree = degree
        self.rank = rank
        self.subgroup_count = hall_count(degree, rank)
        self.predicted_connected = factorial(degree - 1) * self.subgroup_count
        self.predicted_class_bound = (
            lower_bound(degree, rank) if rank >= 2 else None
        )
        bound_text = (
            f", at least {self.predicted_class_bound} classes"
            if self.predicted_class_bound is not None
            else ""
        )
        super().__init__(
            f"enumeration needs {required} voltage tuples but the budget is {budget}; "
            f"predicted: {self.subgroup_count} index-{degree} subgroups, "
            f"{self.predicted_connected} connected voltages{bound_text}"
        )


@dataclass(frozen=True)
class CoverClass:
    label: int
    covering: CoveringMap
    voltage: VoltageAssignment

    @property
    def graph(self) -> Graph:
        return self.covering.total_graph


@dataclass(frozen=True)
class CoverDataset:
    base: Graph
    degree: int
    representatives: tuple[CoverClass, ...]
    scanned: int
    connected: int

    @property
    def class_count(self) -> int:
        return len(self.representatives)


@dataclass(frozen=True)
class DatasetReport:
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c[1]]


def enumerate_voltages(base: Graph, degree: int):
    """Yield all (d!)**r voltage assignments in lexicographic order.

    r is the number of distinguished edges; r = 0 yields the single empty
    assignment (the base is a tree and only has the trivial degree-d cover
    structure per sheet).
    """
    if degree < 1:
        raise ValueError("cover degree must be at least 1")
    edges = distinguished_edges(base)  # validates connectivity
    for tup in product(permutations(range(degree)), repeat=len(edges)):
        yield VoltageAssignment(degree, edges, tup)


def voltage_count(base: Graph, degree: int) -> int:
    return factorial(degree) ** len(distinguished_edges(base))


def voltage_connects(va: VoltageAssignment) -> bool:
    """Connectivity of the cover, decided at the voltage level.

    Tree edges glue each sheet internally, so the cover of a connected base is
    connected iff the distinguished permutations act transitively on sheets.
    """
    return orbit_is_transitive(va.permutations, va.degree)


def _voltage_at(degree, edges, perms, index) -> VoltageAssignment:
    # Direct unranking of the lexicographic enumeration order.
    m = len(perms)
    digits = []
    for _ in range(len(edges)):
        digits.append(perms[index % m])
        index //= m
    return VoltageAssignment(degree, edges, tuple(reversed(digits)))


def _cycle_type_key(va: VoltageAssignment):
    # Per-edge cycle types are invariant under cover isomorphism (simultaneous
    # conjugation of the voltage tuple), so differing keys can never collide.
    key = []
    for p in va.permutations:
        seen = [False] * va.degree
        lengths = []
        for start in range(va.degree):
            if seen[start]:
                continue
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = p[x]
                length += 1
            lengths.append(length)
        key.append(tuple(sorted(lengths)))
    return tuple(key)


class _Deduper:
    """Streaming class collector: a candidate joins only if no existing
    representative is cover-isomorphic to it. Buckets by cycle-type key to
    skip comparisons that provably come out false."""

    def __init__(self, base):
        self.base = base
        self.classes: list[tuple[VoltageAssignment, CoveringMap]] = []
        self._buckets: dict[tuple, list[int]] = {}

    def offer(self, va: VoltageAssignment, cm: CoveringMap | None = None) -> bool:
        if cm is None:
            cm = build_cover(self.base, va)
        key = _cycle_type_key(va)
        bucket = self._buckets.setdefault(key, [])
        for idx in bucket:
            if covers_isomorphic(cm, self.classes[idx][1]).isomorphic:
                return False
        bucket.append(len(self.classes))
        self.classes.append((va, cm))
        return True


def _scan_range(args):
    base, degree, start, stop = args
    edges = distinguished_edges(base)
    perms = list(permutations(range(degree)))
    connected = 0
    dedup = _Deduper(base)
    for index in range(start, stop):
        va = _voltage_at(degree, edges, perms, index)
        if not voltage_connects(va):
            continue
        connected += 1
        dedup.offer(va)
    return connected, [va for va, _ in dedup.classes]


def generate_graphcovers(
    base: Graph,
    degree: int,
    budget: int = DEFAULT_BUDGET,
    require_discrete: bool = True,
    workers: int = 1,
) -> CoverDataset:
    """Representatives of the isomorphism classes of connected degree-d covers.

    The base must be connected, and by default its stable coloring must
    separate every vertex so that cover isomorphism and graph isomorphism
    agree on the generated family; pass ``require_discrete=False`` to build
    cover-isomorphism classes over other bases (e.g. a cycle, rank 1).

    Enumeration cost is (d!)**r tuples and is refused beyond ``budget`` with
    the analytic predictions attached. With ``workers > 1`` the scan is
    partitioned into ranges deduplicated locally and then merged in order,
    which leaves the result identical to the sequential one.
    """
    if base.vertex_count == 0 or not is_connected(base):
        raise ValueError("base graph must be non-empty and connected")
    if degree < 1:
        raise ValueError("cover degree must be at least 1")
    if require_discrete and not is_discrete(base):
        raise ValueError(
            "base stable coloring does not separate all vertices; "
            "pass require_discrete=False to enumerate cover-isomorphism classes anyway"
        )
    rank = rank_from_graph(base)
    total = voltage_count(base, degree)
    if total > budget:
        raise BudgetExceeded(total, budget, degree, rank)

    dedup = _Deduper(base)
    connected = 0
    if workers > 1 and total >= 4 * workers:
        chunk = -(-total // workers)
        ranges = [
            (base, degree, lo, min(lo + chunk, total)) for lo in range(0, total, chunk)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part_connected, part_voltages in pool.map(_scan_range, ranges):
                connected += part_connected
                for va in part_voltages:
                    dedup.offer(va)
    else:
        for va in enumerate_voltages(base, degree):
            if not voltage_connects(va):
                continue
            connected += 1
            dedup.offer(va)

    representatives = tuple(
        CoverClass(label, cm, va) for label, (va, cm) in enumerate(dedup.classes)
    )
    return CoverDataset(base, degree, representatives, total, connected)


def verify_dataset(ds: CoverDataset, graph_iso_limit: int = 32) -> DatasetReport:
    """Re-check every dataset invariant from scratch.

    Per representative: the stored graph matches its voltage, the covering is
    valid, colors lift, the total graph is connected with d*|V| vertices and
    d*|E| edges. Pairwise: all representatives are refinement-equivalent yet
    pairwise non-isomorphic as covers (cross-checked against the brute-force
    graph-isomorphism oracle while sizes permit). Finally the class count is
    compared against the analytic lower bound when the rank allows it.
    """
    checks = []
    base, d = ds.base, ds.degree
    reps = ds.representatives
    for rep in reps:
        name = f"representative {rep.label}"
        rebuilt = build_cover(base, rep.voltage)
        checks.append(
            (
                f"{name}: graph matches voltage",
                rebuilt.total_graph == rep.graph
                and rebuilt.vertex_map == rep.covering.vertex_map,
                "rebuild comparison",
            )
        )
        verdict = validate_covering(rep.covering)
        checks.append((f"{name}: valid covering", verdict.ok, str(verdict)))
        lifted = lift_check(rep.covering)
        checks.append((f"{name}: colors lift", lifted.ok, str(lifted)))
        checks.append(
            (f"{name}: connected", is_connected(rep.graph), "component scan")
        )
        checks.append(
            (
                f"{name}: order and size",
                rep.graph.vertex_count == d * base.vertex_count
                and rep.graph.edge_count == d * base.edge_count,
                f"{rep.graph.vertex_count} vertices, {rep.graph.edge_count} edges",
            )
        )
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            pair = f"pair ({reps[i].label}, {reps[j].label})"
            verdict = wl_test(reps[i].graph, reps[j].graph)
            checks.append((f"{pair}: refinement-equivalent", verdict.equivalent, str(verdict)))
            iso = covers_isomorphic(reps[i].covering, reps[j].covering)
            checks.append((f"{pair}: covers not isomorphic", not iso.isomorphic, ""))
            try:
                witness = graphs_isomorphic(
                    reps[i].graph, reps[j].graph, max_vertices=graph_iso_limit
                )
                checks.append(
                    (f"{pair}: graphs not isomorphic", witness is None, "oracle")
                )
            except SizeLimitExceeded:
                pass  # cross-check only while the oracle's size guard permits
    rank = rank_from_graph(base)
    if rank >= 2:
        bound = lower_bound(d, rank)
        checks.append(
            (
                "class count reaches lower bound",
                ds.class_count >= bound,
                f"{ds.class_count} >= {bound}",
            )
        )
    return DatasetReport(tuple(checks))


def _manifest_dict(ds: CoverDataset) -> dict:
    return {
        "format": MANIFEST_FORMAT,
        "schema_version": MANIFEST_SCHEMA_VERSION,
        "degree": ds.degree,
        "rank": rank_from_graph(ds.base),
        "base": {
            "vertex_count": ds.base.vertex_count,
            "edges": [list(e) for e in ds.base.edges()],
            "file": "base.el",
        },
        "stats": {
            "scanned": ds.scanned,
            "connected": ds.connected,
            "classes": ds.class_count,
        },
        "representatives": [
            {
                "label": rep.label,
                "file": f"cover_{rep.label:03d}.el",
                "vertex_count": rep.graph.vertex_count,
                "edge_count": rep.graph.edge_count,
                "voltage": fileio.voltage_to_dict(rep.voltage),
            }
            for rep in ds.representatives
        ],
    }


def export_dataset(ds: CoverDataset, directory, dot: bool = False) -> dict:
    """Write one edge-list file per representative plus a JSON manifest.

    With ``dot=True`` a stable-colored DOT file accompanies each edge list.
    Output bytes depend only on the dataset, so re-exporting is idempotent.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    manifest = _manifest_dict(ds)
    (directory / "base.el").write_text(fileio.serialize_edge_list(ds.base))
    for rep, entry in zip(ds.representatives, manifest["representatives"]):
        (directory / entry["file"]).write_text(fileio.serialize_edge_list(rep.graph))
        if dot:
            colors = color_refine(rep.graph).stable
            dot_path = directory / f"cover_{rep.label:03d}.dot"
            dot_path.write_text(
                fileio.graph_to_dot(rep.graph, colors, name=f"cover{rep.label}")
            )
    (directory / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    )
    return manifest


def load_dataset(manifest_path) -> CoverDataset:
    """Rebuild a dataset from an exported manifest, checking file integrity.

    Each representative is reconstructed from its voltage and compared with
    the stored edge list; any mismatch is reported as corruption.
    """
    manifest_path = Path(manifest_path)
    manifest = json.loads(manifest_path.read_text())
    if manifest.get("format") != MANIFEST_FORMAT:
        raise ValueError(f"{manifest_path} is not a {MANIFEST_FORMAT} manifest")
    base = from_edge_list(
        manifest["base"]["vertex_count"],
        [tuple(e) for e in manifest["base"]["edges"]],
    )
    degree = manifest["degree"]
    reps = []
    for entry in manifest["representatives"]:
        va = fileio.voltage_from_dict(entry["voltage"])
        covering = build_cover(base, va)
        stored = fileio.parse_edge_list(
            (manifest_path.parent / entry["file"]).read_text()
        )
        if stored != covering.total_graph:
            raise ValueError(
                f"{entry['file']} does not match the cover built from its voltage"
            )
        reps.append(CoverClass(entry["label"], covering, va))
    stats = manifest["stats"]
    return CoverDataset(base, degree, tuple(reps), stats["scanned"], stats["connected"])
