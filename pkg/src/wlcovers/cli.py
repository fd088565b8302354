"""Command-line front end.

Exit codes follow one contract everywhere: 0 for success or an affirmative
verdict, 1 for a negative verdict, 2 for usage or input errors. Commands that
write files also drop a run manifest (inputs/outputs with content digests)
next to their outputs; wall time aside, outputs are byte-identical across
reruns on identical inputs.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import __version__
from .counting import check_counting_consistency, hall_count, lower_bound, rank_from_graph
from .cover_iso import covers_isomorphic
from .covers import build_cover, covering_degree, universal_cover_ball, validate_covering
from .dataset_gen import (
    DEFAULT_BUDGET,
    export_dataset,
    generate_graphcovers,
    load_dataset,
)
from .fileio import (
    RunManifest,
    file_digest,
    graph_to_dot,
    read_graph,
    read_voltage,
    serialize_edge_list,
    write_run_manifest,
)
from .graph_core import is_connected
from .mp_harness import (
    DEFAULT_TOLERANCE,
    FeatureSpec,
    MPModel,
    expected_indistinguishable,
    indistinguishability_report,
)
from .wl_refine import color_refine, wl_test

_FEATURE_FLAGS = {
    "constant": "constant",
    "degree": "degree",
    "random": "random",
    "onehot": "one_hot_id",
}


def _default_workers() -> int:
    raw = os.environ.get("WLCOVERS_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _finish_manifest(args, inputs, outputs, started, directory=None):
    """Record a run manifest next to the outputs (directory gets its own file)."""
    if not outputs:
        return
    manifest = RunManifest(
        command=args.command,
        arguments=list(args.raw_argv),
        inputs={str(p): file_digest(p) for p in inputs},
        outputs={str(p): file_digest(p) for p in outputs},
        tool_version=__version__,
        wall_time_s=time.perf_counter() - started,
    )
    if directory is not None:
        target = Path(directory) / "run_manifest.json"
    else:
        target = Path(str(outputs[0]) + ".manifest.json")
    write_run_manifest(manifest, target)


def _cmd_wl_test(args) -> int:
    verdict = wl_test(read_graph(args.graph_a), read_graph(args.graph_b))
    print(verdict)
    return 0 if verdict.equivalent else 1


def _cmd_refine(args) -> int:
    started = time.perf_counter()
    g = read_graph(args.graph)
    trace = color_refine(g)
    print(
        f"vertices={g.vertex_count} edges={g.edge_count} "
        f"stable_colors={trace.num_colors} stable_round={trace.stable_round} "
        f"discrete={'yes' if trace.num_colors == g.vertex_count else 'no'}"
    )
    outputs = []
    if args.dot:
        Path(args.dot).write_text(graph_to_dot(g, trace.stable))
        outputs.append(args.dot)
    _finish_manifest(args, [args.graph], outputs, started)
    return 0


def _cmd_build_cover(args) -> int:
    started = time.perf_counter()
    base = read_graph(args.base)
    va = read_voltage(args.voltage)
    cm = build_cover(base, va)
    verdict = validate_covering(cm)
    if not verdict.ok:  # unreachable for build_cover output; reported defensively
        print(f"error: built cover failed validation: {verdict}", file=sys.stderr)
        return 2
    Path(args.output).write_text(serialize_edge_list(cm.total_graph))
    outputs = [args.output]
    if args.dot:
        colors = color_refine(cm.total_graph).stable
        Path(args.dot).write_text(graph_to_dot(cm.total_graph, colors))
        outputs.append(args.dot)
    print(
        f"cover: {cm.total_graph.vertex_count} vertices, "
        f"{cm.total_graph.edge_count} edges, degree {covering_degree(cm)}, "
        f"connected={'yes' if is_connected(cm.total_graph) else 'no'}"
    )
    _finish_manifest(args, [args.base, args.voltage], outputs, started)
    return 0


def _cmd_ucball(args) -> int:
    started = time.perf_counter()
    g = read_graph(args.graph)
    ball = universal_cover_ball(g, args.root, args.radius)
    depth_counts = {}
    for depth in ball.depths:
        depth_counts[depth] = depth_counts.get(depth, 0) + 1
    profile = " ".join(f"{d}:{c}" for d, c in sorted(depth_counts.items()))
    print(
        f"ball: {ball.graph.vertex_count} nodes, radius {ball.radius}, "
        f"nodes per depth {profile}"
    )
    outputs = []
    if args.dot:
        # Nodes are labelled by the graph vertex they unroll.
        Path(args.dot).write_text(graph_to_dot(ball.graph, ball.base_vertices))
        outputs.append(args.dot)
    _finish_manifest(args, [args.graph], outputs, started)
    return 0


def _cmd_cover_iso(args) -> int:
    base = read_graph(args.base)
    src = build_cover(base, read_voltage(args.voltage_a))
    dst = build_cover(base, read_voltage(args.voltage_b))
    result = covers_isomorphic(src, dst)
    if result.isomorphic:
        print("isomorphic")
        if args.witness:
            for v, w in enumerate(result.witness):
                print(f"{v} -> {w}")
        return 0
    print(f"not isomorphic ({result.reason})")
    return 1


def _cmd_gen_covers(args) -> int:
    started = time.perf_counter()
    base = read_graph(args.base)
    dataset = generate_graphcovers(
        base,
        args.degree,
        budget=args.budget,
        require_discrete=not args.allow_non_discrete,
        workers=args.workers,
    )
    out_dir = Path(args.output)
    export_dataset(dataset, out_dir, dot=args.dot)
    outputs = sorted(p for p in out_dir.iterdir() if p.name != "run_manifest.json")
    if args.plot:
        from .plotting import save_graph_figure

        save_graph_figure(
            base, out_dir / "base.png", color_refine(base).stable, title="base"
        )
        outputs.append(out_dir / "base.png")
        for rep in dataset.representatives:
            png = out_dir / f"cover_{rep.label:03d}.png"
            save_graph_figure(
                rep.graph,
                png,
                color_refine(rep.graph).stable,
                title=f"class {rep.label}",
            )
            outputs.append(png)
    print(
        f"scanned {dataset.scanned} voltage tuples, {dataset.connected} connected, "
        f"{dataset.class_count} isomorphism classes"
    )
    print(f"wrote {out_dir / 'manifest.json'}")
    _finish_manifest(args, [args.base], outputs, started, directory=out_dir)
    return 0


def _cmd_verify(args) -> int:
    from .dataset_gen import verify_dataset

    dataset = load_dataset(args.manifest)
    report = verify_dataset(dataset)
    for name, ok, detail in report.checks:
        status = "PASS" if ok else "FAIL"
        suffix = f" ({detail})" if detail and not ok else ""
        print(f"{status} {name}{suffix}")
    passed = sum(1 for _, ok, _ in report.checks if ok)
    print(f"{passed}/{len(report.checks)} checks passed")
    return 0 if report.ok else 1


def _cmd_count(args) -> int:
    if args.base:
        base = read_graph(args.base)
        rank = rank_from_graph(base)
    elif args.rank is not None:
        base = None
        rank = args.rank
    else:
        print("error: provide --rank or --base", file=sys.stderr)
        return 2
    subgroups = hall_count(args.degree, rank)
    from math import factorial

    print(f"index-{args.degree} subgroups of the rank-{rank} free group: {subgroups}")
    print(f"predicted connected voltage tuples: {factorial(args.degree - 1) * subgroups}")
    if rank >= 2:
        print(f"class count lower bound: {lower_bound(args.degree, rank)}")
    else:
        print("class count lower bound: n/a (rank < 2)")
    if not args.verify:
        return 0
    if base is None:
        print("error: --verify needs --base", file=sys.stderr)
        return 2
    report = check_counting_consistency(
        base,
        args.degree,
        budget=args.budget,
        require_discrete=not args.allow_non_discrete,
    )
    print(f"generated classes: {report.class_count}")
    for name, ok, detail in report.checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return 0 if report.ok else 1


def _cmd_mp_check(args) -> int:
    started = time.perf_counter()
    dataset = load_dataset(args.manifest)
    if dataset.class_count < 2:
        print("error: dataset has fewer than two graphs", file=sys.stderr)
        return 2
    kind = _FEATURE_FLAGS[args.features]
    spec = FeatureSpec(kind, seed=args.seed)
    model = MPModel(
        layer_count=args.layers,
        hidden_dim=args.hidden,
        seed=args.seed,
        aggregation=args.aggregation,
    )
    graphs = [rep.graph for rep in dataset.representatives]
    report = indistinguishability_report(graphs, spec, model, tolerance=args.tolerance)

    labels = [rep.label for rep in dataset.representatives]
    csv_lines = ["label," + ",".join(str(l) for l in labels)]
    for i, label in enumerate(labels):
        row = ",".join(f"{report.distances[i, j]:.6e}" for j in range(len(labels)))
        csv_lines.append(f"{label},{row}")
    print("\n".join(csv_lines))

    expected = "indistinguishable" if expected_indistinguishable(kind) else "distinguishable"
    print(f"verdict: {report.verdict} (max distance {report.max_distance:.3e})")
    print(f"expected for {args.features} features: {expected}")
    print(f"predicted classification accuracy: {report.predicted_accuracy:.3f}")

    if args.out_dir:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "distances.csv").write_text("\n".join(csv_lines) + "\n")
        from .plotting import save_distance_heatmap

        save_distance_heatmap(
            report.distances,
            out_dir / "distances.png",
            labels=labels,
            title=f"{args.features} features: {report.verdict}",
        )
        _finish_manifest(
            args,
            [args.manifest],
            [out_dir / "distances.csv", out_dir / "distances.png"],
            started,
            directory=out_dir,
        )
    return 0 if report.verdict == expected else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wlcovers",
        description="Build, test, and count covers that defeat refinement-based graph distinction.",
    )
    parser.add_argument("--version", action="version", version=f"wlcovers {__version__}")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("wl-test", help="refinement-equivalence test for two graphs")
    p.add_argument("graph_a")
    p.add_argument("graph_b")
    p.set_defaults(handler=_cmd_wl_test)

    p = sub.add_parser("refine", help="run color refinement on one graph")
    p.add_argument("graph")
    p.add_argument("--dot", help="write a DOT file with stable colors")
    p.set_defaults(handler=_cmd_refine)

    p = sub.add_parser("build-cover", help="materialize a voltage cover")
    p.add_argument("base")
    p.add_argument("voltage", help="voltage assignment JSON")
    p.add_argument("-o", "--output", required=True, help="edge-list output path")
    p.add_argument("--dot", help="also write a stable-colored DOT file")
    p.set_defaults(handler=_cmd_build_cover)

    p = sub.add_parser("ucball", help="truncated universal-cover ball")
    p.add_argument("graph")
    p.add_argument("--root", type=int, required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--dot", help="write the ball as DOT, labelled by unrolled vertex")
    p.set_defaults(handler=_cmd_ucball)

    p = sub.add_parser("cover-iso", help="test two voltage covers for isomorphism")
    p.add_argument("base")
    p.add_argument("voltage_a")
    p.add_argument("voltage_b")
    p.add_argument("--witness", action="store_true", help="print the vertex bijection")
    p.set_defaults(handler=_cmd_cover_iso)

    p = sub.add_parser("gen-covers", help="enumerate connected covers into classes")
    p.add_argument("base")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--dot", action="store_true", help="write DOT files per class")
    p.add_argument("--plot", action="store_true", help="render PNG figures per class")
    p.add_argument(
        "--allow-non-discrete",
        action="store_true",
        help="accept bases whose stable coloring repeats (classes are cover-isomorphism classes)",
    )
    p.add_argument("--workers", type=int, default=_default_workers())
    p.set_defaults(handler=_cmd_gen_covers)

    p = sub.add_parser("verify", help="re-check all invariants of an exported dataset")
    p.add_argument("manifest")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("count", help="subgroup counts and enumeration predictions")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--rank", type=int)
    p.add_argument("--base", help="derive the rank from this graph")
    p.add_argument("--verify", action="store_true", help="generate and cross-check")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--allow-non-discrete", action="store_true")
    p.set_defaults(handler=_cmd_count)

    p = sub.add_parser("mp-check", help="embedding distances over a dataset")
    p.add_argument("manifest")
    p.add_argument("--features", choices=sorted(_FEATURE_FLAGS), required=True)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--layers", type=int, default=2)
    p.add_argument("--hidden", type=int, default=100)
    p.add_argument("--aggregation", choices=("sum", "mean"), default="sum")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--out-dir", help="write distances.csv and distances.png here")
    p.set_defaults(handler=_cmd_mp_check)

    return parser


def dispatch(argv) -> int:
    """Route argv to a subcommand handler; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if getattr(args, "handler", None) is None:
        parser.print_usage(sys.stderr)
        return 2
    args.raw_argv = list(argv)
    try:
        return args.handler(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
