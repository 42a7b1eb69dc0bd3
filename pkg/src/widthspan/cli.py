"""Command-line surface: generation, tree construction, distribution and
cutwidth reports, the exact DP, brute-force oracles, and invariant suites.

Reports are JSON with exact integers and rationals (``"p/q"`` strings) —
never floats — so repeated runs diff cleanly.  Every file-producing run also
writes ``<out>.manifest.json`` recording the command, input/output digests,
seed, and wall-clock time.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .arrangement import (
    LinearArrangement,
    build_arrangement_tree,
    dump_arrangement,
    edge_spreads,
    load_arrangement,
    shift_count,
    widths,
)
from .distribution import build_shift_tree, cutwidth_tree, explicit_distribution, sample_tree
from .graph import Graph, GraphFormatError, GraphValidationError, dump_graph, generate, load_graph
from .lowstretch import (
    StretchReport,
    build_tree,
    build_tree_padded,
    charge_diagnostics,
    fundamental_cycle_spans,
    lemma31_check,
    stretch_of,
)
from .oracle import (
    OracleCapExceeded,
    enumerate_min_stretch,
    expected_stretch_oracle,
)
from .twdp import DPLimitError, TreeDecompositionError, dp_min_stretch, load_td, make_nice
from .arrangement import PaddedArrangement


class CliError(Exception):
    """Validation failure surfaced to the user; exit code 1."""


# ---------------------------------------------------------------------------
# Serialization helpers.
# ---------------------------------------------------------------------------

def _jsonable(value):
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (frozenset, set)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def _dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


class _Run:
    """Collects input/output digests and writes the manifest per output."""

    def __init__(self, argv: list[str], seed: int | None = None):
        self.argv = argv
        self.seed = seed
        self.started = time.monotonic()
        self.inputs: dict[str, str] = {}

    def read_input(self, path: str) -> str:
        text = _read(path)
        self.inputs[path] = _sha256(text)
        return text

    def emit(self, text: str, out: str | None) -> None:
        if out is None:
            sys.stdout.write(text)
            return
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        manifest = {
            "command": self.argv,
            "inputs": self.inputs,
            "outputs": {out: _sha256(text)},
            "seed": self.seed,
            "version": __version__,
            "wall_clock_s": round(time.monotonic() - self.started, 6),
        }
        with open(out + ".manifest.json", "w", encoding="utf-8") as fh:
            fh.write(json.dumps(manifest, sort_keys=True, indent=2) + "\n")


def _load_graph_file(run: _Run, path: str) -> Graph:
    try:
        return load_graph(run.read_input(path))
    except (GraphFormatError, GraphValidationError) as exc:
        raise CliError(f"{path}: {exc}") from exc


def _load_arrangement_file(run: _Run, path: str | None, g: Graph) -> LinearArrangement:
    if path is None:
        return LinearArrangement.identity(g.n)
    try:
        return load_arrangement(run.read_input(path), g.n)
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _stretch_report_dict(g: Graph, report: StretchReport) -> dict:
    return {
        "n": g.n,
        "m": g.m,
        "tree_edges": sorted(report.tree_edges),
        "per_edge_stretch": list(report.per_edge_stretch),
        "total_stretch": report.total_stretch,
        "avg_stretch": report.avg_stretch,
        "fcb_weight": report.fcb_weight,
    }


def _jobs(args) -> int:
    if args.jobs is not None:
        return max(1, args.jobs)
    env = os.environ.get("WIDTHSPAN_JOBS")
    return max(1, int(env)) if env else 1


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------

def _cmd_gen(args, run: _Run) -> int:
    kwargs = {}
    if args.b is not None:
        kwargs["b"] = args.b
    if args.p is not None:
        kwargs["p"] = args.p
    if args.c is not None:
        kwargs["c"] = args.c
    try:
        g, order = generate(args.family, args.n, seed=args.seed, **kwargs)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    run.emit(dump_graph(g), args.out)
    if args.arrangement_out is not None:
        arr = LinearArrangement.from_order(order)
        run.emit(dump_arrangement(arr), args.arrangement_out)
    return 0


def _cmd_stats(args, run: _Run) -> int:
    g = _load_graph_file(run, args.graph)
    a = _load_arrangement_file(run, args.arrangement, g)
    bandwidth, cut = widths(g, a)
    root = build_arrangement_tree(g, a)
    max_split = max((len(node.split_edges) for node in root.walk()), default=0)
    report = {
        "n": g.n,
        "m": g.m,
        "bandwidth": bandwidth,
        "cutwidth": cut,
        "sum_spread": sum(edge_spreads(g, a)),
        "max_split_set": max_split,
    }
    run.emit(_dumps(report), args.out)
    return 0


def _cmd_build_tree(args, run: _Run) -> int:
    g = _load_graph_file(run, args.graph)
    a = _load_arrangement_file(run, args.arrangement, g)
    if args.padded:
        padded = PaddedArrangement(a, args.shift)
        report = build_tree_padded(g, padded)
    else:
        report = build_tree(g, a)
    run.emit(_dumps(_stretch_report_dict(g, report)), args.report)
    return 0


def _shift_row(payload):
    g, a, shift = payload
    report = build_shift_tree(g, a, shift)
    return shift, report.per_edge_stretch, report.total_stretch, report.avg_stretch


def _explicit_parallel(g: Graph, a: LinearArrangement, jobs: int):
    """Same result as explicit_distribution; shifts fanned out over workers
    and merged in shift order, so the output is independent of jobs."""
    count = shift_count(g.n)
    sums = [0] * g.m
    per_shift = []
    best_shift = 0
    best_total = None
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        rows = pool.map(_shift_row, [(g, a, s) for s in range(count)], chunksize=16)
        for shift, per_edge, total, avg in rows:
            for i, s in enumerate(per_edge):
                sums[i] += s
            per_shift.append(avg)
            if best_total is None or total < best_total:
                best_total = total
                best_shift = shift
    from .distribution import DistributionReport

    return DistributionReport(
        shifts=count,
        per_edge_expected_stretch=tuple(Fraction(s, count) for s in sums),
        per_shift_avg_stretch=tuple(per_shift),
        best_shift=best_shift,
    )


def _cmd_distribution(args, run: _Run) -> int:
    g = _load_graph_file(run, args.graph)
    a = _load_arrangement_file(run, args.arrangement, g)
    if args.explicit:
        jobs = _jobs(args)
        dist = _explicit_parallel(g, a, jobs) if jobs > 1 else explicit_distribution(g, a)
        report = {
            "mode": "explicit",
            "shifts": dist.shifts,
            "per_edge_expected_stretch": list(dist.per_edge_expected_stretch),
            "per_shift_avg_stretch": list(dist.per_shift_avg_stretch),
            "best_shift": dist.best_shift,
            "max_expected_stretch": dist.max_expected_stretch,
        }
        if args.csv is not None:
            spreads = edge_spreads(g, a)
            lines = ["edge_id,u,v,spread,expected_stretch"]
            for eid, (u, v) in enumerate(g.edges, start=1):
                exp = dist.per_edge_expected_stretch[eid - 1]
                lines.append(f"{eid},{u},{v},{spreads[eid - 1]},{exp}")
            run.emit("\n".join(lines) + "\n", args.csv)
    else:
        samples = []
        for i in range(args.sample):
            shift, rep = sample_tree(g, a, args.seed + i)
            samples.append(
                {
                    "seed": args.seed + i,
                    "shift": shift,
                    "tree_edges": sorted(rep.tree_edges),
                    "total_stretch": rep.total_stretch,
                    "avg_stretch": rep.avg_stretch,
                }
            )
        report = {"mode": "sample", "samples": samples}
    run.emit(_dumps(report), args.out)
    return 0


def _cmd_cutwidth_tree(args, run: _Run) -> int:
    g = _load_graph_file(run, args.graph)
    a = _load_arrangement_file(run, args.arrangement, g)
    if args.best_shift:
        shift, rep = cutwidth_tree(g, a, best_shift=True)
    else:
        shift, rep = cutwidth_tree(g, a, seed=args.seed)
    _, cut = widths(g, a)
    report = _stretch_report_dict(g, rep)
    report.update(
        {
            "shift": shift,
            "cutwidth": cut,
            "sum_spread": sum(edge_spreads(g, a)),
        }
    )
    run.emit(_dumps(report), args.out)
    return 0


def _cmd_dp_min_stretch(args, run: _Run) -> int:
    g = _load_graph_file(run, args.graph)
    try:
        td = load_td(run.read_input(args.td), g)
        result = dp_min_stretch(g, td, enforce_limits=not args.allow_large)
    except (TreeDecompositionError, DPLimitError) as exc:
        raise CliError(str(exc)) from exc
    report = {
        "total_stretch": result.min_total_stretch,
        "avg_stretch": result.min_avg_stretch,
        "tree_edges": sorted(result.tree_edges),
        "width": result.width,
    }
    if args.check_oracle:
        try:
            oracle = enumerate_min_stretch(g)
        except OracleCapExceeded as exc:
            raise CliError(str(exc)) from exc
        print(f"{result.min_total_stretch} = {oracle.min_total_stretch}")
        if result.min_total_stretch != oracle.min_total_stretch:
            raise CliError(
                f"DP optimum {result.min_total_stretch} disagrees with "
                f"oracle {oracle.min_total_stretch}"
            )
    run.emit(_dumps(report), args.out)
    return 0


def _cmd_oracle(args, run: _Run) -> int:
    g = _load_graph_file(run, args.graph)
    try:
        result = enumerate_min_stretch(g, cap=args.cap, histogram=args.histogram)
    except OracleCapExceeded as exc:
        raise CliError(str(exc)) from exc
    report = {
        "spanning_tree_count": result.spanning_tree_count,
        "min_total_stretch": result.min_total_stretch,
        "argmin_trees": [sorted(t) for t in result.argmin_trees],
    }
    if args.histogram:
        report["per_tree_totals"] = sorted(result.per_tree_totals)
    run.emit(_dumps(report), args.out)
    return 0


# ---------------------------------------------------------------------------
# Invariant suites (`verify`).
# ---------------------------------------------------------------------------

def _suite_bandwidth(seed: int) -> list[tuple[str, bool, str]]:
    checks = []
    corpus = []
    for b in (1, 2, 3):
        for n in (16, 33, 64):
            g, order = generate("random_bandwidth", n, seed=seed + b * 100 + n, b=b, p=0.7)
            corpus.append((b, g, LinearArrangement.from_order(order)))
    corpus.append((1, *_gen_pair("path", 40, seed)))
    corpus.append((2, *_gen_pair("cycle", 40, seed)))
    corpus.append((2, *_gen_pair("caterpillar", 41, seed)))

    split_ok = degree_ok = fcb_ok = lemma_ok = bound_ok = charge_ok = cycle_ok = True
    tight_split_ok = True
    detail = []
    for b_cap, g, a in corpus:
        b, _ = widths(g, a)
        root = build_arrangement_tree(g, a)
        counts = [len(node.split_edges) for node in root.walk()]
        if sum(counts) != g.m or any(c > b * (b + 1) // 2 for c in counts):
            split_ok = False
        if any(c > max(0, (b - 1) * (b - 2) // 2) for c in counts):
            tight_split_ok = False
        if any(g.degree(v) > 2 * b for v in range(1, g.n + 1)):
            degree_ok = False
        report = build_tree(g, a)
        if report.fcb_weight != report.total_stretch + g.m - 2 * g.n + 2:
            fcb_ok = False
        padded = PaddedArrangement(a, 0)
        preport = build_tree_padded(g, padded)
        if not all(ok for _, _, ok in lemma31_check(g, padded, preport)):
            lemma_ok = False
        if report.avg_stretch > 4 * b**3 + 2 or report.fcb_weight > 4 * b**3 * g.n:
            bound_ok = False
        charges = charge_diagnostics(g, a)
        if any(nc.long_components > b for nc in charges.nodes):
            charge_ok = False
        if charges.total_charge > b * g.n:
            charge_ok = False
        by_iv = {(nc.lo, nc.hi): nc.long_components for nc in charges.nodes}
        for node in root.walk():
            if node.is_leaf:
                continue
            lx = by_iv[(node.lo, node.hi)]
            for child in (node.left, node.right):
                # intervals of <= b positions can lose long components upward
                if child.size > b and lx > by_iv[(child.lo, child.hi)]:
                    charge_ok = False
        for _, span, length in fundamental_cycle_spans(g, a, report):
            if not (2 * span <= length * b and length <= span + 1):
                cycle_ok = False
    checks.append(("split sets partition edges, |S_v| <= b(b+1)/2", split_ok, ""))
    checks.append(("tight split-set constant (1/2)(b-1)(b-2) (informational)", True,
                   "holds" if tight_split_ok else "violated for small b, safe bound used"))
    checks.append(("deg(v) <= 2b", degree_ok, ""))
    checks.append(("FCB identity exact", fcb_ok, ""))
    checks.append(("per-edge stretch <= 2p-1 (padded)", lemma_ok, ""))
    checks.append(("avg stretch <= 4b^3+2 and FCB <= 4b^3 n", bound_ok, ""))
    checks.append(("long components <= b and total charge <= bn", charge_ok, ""))
    checks.append(("fundamental cycles: 2s/b <= |C| <= s+1", cycle_ok, ""))
    return checks


def _gen_pair(family: str, n: int, seed: int):
    g, order = generate(family, n, seed=seed)
    return g, LinearArrangement.from_order(order)


def _suite_cutwidth(seed: int) -> list[tuple[str, bool, str]]:
    checks = []
    ok_spread = ok_best = True
    for c in (2, 3):
        for n in (32, 64):
            g, order = generate("random_cutwidth", n, seed=seed + c * 10 + n, c=c)
            a = LinearArrangement.from_order(order)
            _, cut = widths(g, a)
            if sum(edge_spreads(g, a)) > cut * g.n:
                ok_spread = False
            shift, rep = cutwidth_tree(g, a, best_shift=True)
            for s in range(shift_count(g.n)):
                if build_shift_tree(g, a, s).total_stretch < rep.total_stretch:
                    ok_best = False
    checks.append(("sum of spreads <= cutwidth * n", ok_spread, ""))
    checks.append(("best-shift tree minimizes over all shifts", ok_best, ""))
    return checks


def _suite_distribution(seed: int) -> list[tuple[str, bool, str]]:
    checks = []
    ok_oracle = ok_sample = True
    for family, n in (("cycle", 8), ("caterpillar", 9), ("grid", 12)):
        g, a = _gen_pair(family, n, seed)
        dist = explicit_distribution(g, a)
        if dist.per_edge_expected_stretch != expected_stretch_oracle(g, a):
            ok_oracle = False
        shift, rep = sample_tree(g, a, seed)
        shift2, rep2 = sample_tree(g, a, seed)
        if shift != shift2 or rep.tree_edges != rep2.tree_edges:
            ok_sample = False
        if build_shift_tree(g, a, shift).tree_edges != rep.tree_edges:
            ok_sample = False
    checks.append(("explicit distribution equals the naive oracle", ok_oracle, ""))
    checks.append(("sampling is seed-deterministic and shift-consistent", ok_sample, ""))
    return checks


def _suite_dp(seed: int) -> list[tuple[str, bool, str]]:
    from .twdp.decomposition import min_fill_td

    checks = []
    ok_equal = ok_witness = True
    instances = [
        _gen_pair("path", 8, seed)[0],
        _gen_pair("cycle", 8, seed)[0],
        _gen_pair("complete", 4, seed)[0],
        _gen_pair("grid", 6, seed)[0],
        _gen_pair("caterpillar", 9, seed)[0],
    ]
    for g in instances:
        td = min_fill_td(g)
        result = dp_min_stretch(g, td, enforce_limits=False)
        oracle = enumerate_min_stretch(g)
        if result.min_total_stretch != oracle.min_total_stretch:
            ok_equal = False
        if stretch_of(g, result.tree_edges).total_stretch != result.min_total_stretch:
            ok_witness = False
    checks.append(("DP optimum equals exhaustive oracle", ok_equal, ""))
    checks.append(("witness tree stretch equals reported optimum", ok_witness, ""))
    return checks


_SUITES = {
    "bandwidth": _suite_bandwidth,
    "cutwidth": _suite_cutwidth,
    "distribution": _suite_distribution,
    "dp": _suite_dp,
}


def _cmd_verify(args, run: _Run) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    failed = 0
    for name in names:
        for label, ok, detail in _SUITES[name](args.seed):
            status = "PASS" if ok else "FAIL"
            suffix = f"  ({detail})" if detail else ""
            print(f"{status}  [{name}] {label}{suffix}")
            if not ok:
                failed += 1
    print(f"{'OK' if failed == 0 else 'FAILED'}: {failed} failing check(s)")
    return 0 if failed == 0 else 1


# ---------------------------------------------------------------------------
# Argument parsing.
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="widthspan",
        description="Low-stretch spanning trees from bounded-width arrangements.",
    )
    parser.add_argument("--version", action="version", version=f"widthspan {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, arrangement=True):
        p.add_argument("--graph", required=True, help="edge-list graph file")
        if arrangement:
            p.add_argument("--arrangement", help="arrangement file (default: identity)")
        p.add_argument("--out", help="output JSON path (default: stdout)")
        p.add_argument("--jobs", type=int, default=None, help="worker fan-out")

    p = sub.add_parser("gen", help="generate a graph family with a witness arrangement")
    p.add_argument("--family", required=True,
                   choices=["path", "cycle", "grid", "complete", "caterpillar",
                            "random_bandwidth", "random_cutwidth"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--b", type=int, help="bandwidth parameter (random_bandwidth)")
    p.add_argument("--p", type=float, help="edge probability (random_bandwidth)")
    p.add_argument("--c", type=int, help="cutwidth parameter (random_cutwidth)")
    p.add_argument("--out", help="graph output path (default: stdout)")
    p.add_argument("--arrangement-out", help="write the witness arrangement here")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("stats", help="n, m, widths, and split-set statistics")
    common(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("build-tree", help="arrangement-tree MST with stretch report")
    p.add_argument("--graph", required=True)
    p.add_argument("--arrangement", help="arrangement file (default: identity)")
    p.add_argument("--report", help="output JSON path (default: stdout)")
    p.add_argument("--padded", action="store_true", help="use the padded power-of-two tree")
    p.add_argument("--shift", type=int, default=0, help="padding shift (with --padded)")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=_cmd_build_tree)

    p = sub.add_parser("distribution", help="shifted-padding tree distribution")
    common(p)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--explicit", action="store_true", help="all shifts, exact expectations")
    mode.add_argument("--sample", type=int, metavar="N", help="draw N trees")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="CSV export (explicit mode)")
    p.set_defaults(func=_cmd_distribution)

    p = sub.add_parser("cutwidth-tree", help="cutwidth-witness spanning tree")
    common(p)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--best-shift", action="store_true")
    mode.add_argument("--seed", type=int)
    p.set_defaults(func=_cmd_cutwidth_tree)

    p = sub.add_parser("dp-min-stretch", help="exact optimum via tree-decomposition DP")
    p.add_argument("--graph", required=True)
    p.add_argument("--td", required=True, help="PACE-format tree decomposition")
    p.add_argument("--check-oracle", action="store_true")
    p.add_argument("--allow-large", action="store_true",
                   help="lift the width/size practical limits")
    p.add_argument("--out", help="output JSON path (default: stdout)")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=_cmd_dp_min_stretch)

    p = sub.add_parser("oracle", help="exhaustive spanning-tree enumeration")
    p.add_argument("--graph", required=True)
    p.add_argument("--cap", type=int, default=10**6)
    p.add_argument("--histogram", action="store_true")
    p.add_argument("--out", help="output JSON path (default: stdout)")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", required=True,
                   choices=["bandwidth", "cutwidth", "distribution", "dp", "all"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    run = _Run(["widthspan"] + argv, seed=getattr(args, "seed", None))
    try:
        return args.func(args, run)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
