"""Command line interface.

Subcommands
  parse      node / moral-edge counts of one netlist, as JSON on stdout
  analyze    ordering comparison plus the structural row, per circuit
  tradeoff   separator/cluster tradeoff series, per circuit
  histogram  clique/sepset/cutset size histograms of the primary tree
  tree       DOT rendering of the (optionally merged) clique-tree
  verify     invariant suite over the inputs; exit 2 on any violation

Inputs are netlist files or directories; a directory contributes every
*.bench and *.isc inside it, sorted by name. Every flag can also be set via
an SPA_-prefixed environment variable (SPA_ORDERING, SPA_TIE_BREAK,
SPA_SEED, SPA_SEP_BOUND, SPA_FORMAT, SPA_OUT, SPA_TIMEOUT, SPA_WORKERS,
SPA_ORACLE_LIMIT); an explicit flag wins over the environment.

Exit codes: 0 success, 1 input or parse error, 2 invariant violation,
3 per-circuit timeout. Identical configuration yields byte-identical
output files; writes are atomic (temp file + rename).
"""

from __future__ import annotations

import argparse
import json
import os
import signal
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import graph, jointree, netlist, ordering, report, tradeoff

ORDERING_CHOICES = (*ordering.HEURISTICS, "all")
SUFFIXES = (".bench", ".isc")


class InputError(Exception):
    """Bad paths, empty input sets, unusable flag combinations."""


class _Parser(argparse.ArgumentParser):
    # usage problems are input errors (exit 1), not invariant violations
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(1)


def _env(name: str, fallback=None):
    value = os.environ.get(f"SPA_{name}", "").strip()
    return value if value else fallback


def _env_int(name: str, fallback=None):
    raw = _env(name)
    return fallback if raw is None else int(raw)


def _env_float(name: str, fallback=None):
    raw = _env(name)
    return fallback if raw is None else float(raw)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spa", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_parse = sub.add_parser("parse", help="summarize one netlist")
    p_parse.add_argument("file")

    def add_common(p, with_ordering=True):
        p.add_argument("inputs", nargs="+",
                       help="netlist files or directories")
        if with_ordering:
            p.add_argument("--ordering", choices=ORDERING_CHOICES,
                           default=_env("ORDERING"))
            p.add_argument("--tie-break", choices=ordering.TIE_BREAKS,
                           default=_env("TIE_BREAK", "index"))
            p.add_argument("--seed", type=int, default=_env_int("SEED"))
        p.add_argument("--out", default=_env("OUT", "."))
        p.add_argument("--format", choices=("csv", "json"),
                       default=_env("FORMAT", "csv"))
        p.add_argument("--timeout", type=float, default=_env_float("TIMEOUT"),
                       help="per-circuit seconds; unset means no limit")
        p.add_argument("--workers", type=int, default=_env_int("WORKERS", 1))

    p_analyze = sub.add_parser("analyze", help="comparison + structural row")
    add_common(p_analyze)
    p_tradeoff = sub.add_parser("tradeoff", help="tradeoff series")
    add_common(p_tradeoff)
    p_hist = sub.add_parser("histogram", help="size histograms")
    add_common(p_hist)
    p_tree = sub.add_parser("tree", help="DOT clique-tree")
    add_common(p_tree)
    p_tree.add_argument("--sep-bound", type=int, default=_env_int("SEP_BOUND"),
                        help="merge separators above this bound first")
    p_tree.add_argument("--dot", action="store_true",
                        help="emit DOT (the default and only tree format)")
    p_verify = sub.add_parser("verify", help="invariant suite")
    add_common(p_verify)
    p_verify.add_argument("--oracle-limit", type=int,
                          default=_env_int("ORACLE_LIMIT", 10),
                          help="run exact oracles on graphs up to this size")
    return parser


def collect_inputs(paths) -> list[Path]:
    found: list[Path] = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            found.extend(sorted(q for q in p.iterdir()
                                if q.suffix in SUFFIXES))
        elif p.is_file():
            found.append(p)
        else:
            raise InputError(f"no such input: {raw}")
    if not found:
        raise InputError("no netlist inputs found")
    return found


def load_dag(path: Path) -> netlist.Dag:
    fmt = "isc" if path.suffix == ".isc" else "bench"
    circuit = netlist.parse_netlist(path.read_text(), fmt, name=path.stem)
    return netlist.build_dag(circuit)


def atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(f"{path.name}.tmp{os.getpid()}")
    tmp.write_text(text)
    os.replace(tmp, path)


def _with_timeout(seconds, fn, *args):
    """Run fn under a SIGALRM deadline; TimeoutError when it expires."""
    if not seconds or not hasattr(signal, "SIGALRM"):
        return fn(*args)

    def handler(signum, frame):
        raise TimeoutError

    old = signal.signal(signal.SIGALRM, handler)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        return fn(*args)
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def _timeout_structural(name: str, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"circuit": name, "n": None, "cond_cutset": None,
                           "clustering": None, "hybrid": None,
                           "hybrid_reason": "timeout", "orderings": {}},
                          separators=(",", ":"))
    header = ",".join(report.STRUCTURAL_CSV_HEADER)
    return f"{header}\n{name},,,,,,,,,timeout\n"


def _pipeline(kind: str, path_str: str, opts: dict) -> dict:
    """Everything computed for one circuit; pure, runs in a worker."""
    path = Path(path_str)
    dag = load_dag(path)
    name = dag.name
    fmt = opts["format"]
    tie, seed = opts["tie_break"], opts["seed"]
    chosen = opts.get("ordering")
    moral = graph.moralize(dag)
    files: dict[str, str] = {}

    if kind == "analyze":
        tag = chosen or "all"
        if tag == "all":
            comp = report.ordering_comparison(moral, dag, tie, seed)
        else:
            t = report.primary_tree(moral, dag, tag, tie, seed)
            comp = {tag: (t.max_cluster_size, jointree.separator_width(t))}
        row = report.structural_row(dag, moral, comp, tie, seed)
        if fmt == "json":
            files[f"{name}_{tag}_comparison.json"] = \
                report.comparison_to_json(name, comp) + "\n"
            files[f"{name}_min-degree_structural.json"] = \
                report.row_to_json(row) + "\n"
        else:
            files[f"{name}_{tag}_comparison.csv"] = \
                report.comparison_to_csv(name, comp)
            files[f"{name}_min-degree_structural.csv"] = report.row_to_csv(row)
        return {"circuit": name, "files": files}

    heuristic = chosen or "min-degree"
    if heuristic == "all":
        raise InputError(f"--ordering all is not meaningful for {kind}")

    if kind == "verify":
        return {"circuit": name,
                "checks": _verify_circuit(dag, moral, tie, seed,
                                          opts["oracle_limit"])}

    t0 = report.primary_tree(moral, dag, heuristic, tie, seed)
    if kind == "tradeoff":
        series = tradeoff.tradeoff_series(t0, moral, circuit=name)
        if fmt == "json":
            files[f"{name}_{heuristic}_tradeoff.json"] = \
                tradeoff.series_to_json(series) + "\n"
        else:
            files[f"{name}_{heuristic}_tradeoff.csv"] = \
                tradeoff.series_to_csv(series)
    elif kind == "histogram":
        hists = [
            report.histogram([len(c) for c in t0.clusters], "clique"),
            report.histogram([len(s) for _, _, s in t0.edges], "sepset"),
            report.histogram(tradeoff.cluster_cutsets(t0, moral), "cutset"),
        ]
        if fmt == "json":
            files[f"{name}_{heuristic}_histogram.json"] = \
                report.histograms_to_json(hists) + "\n"
        else:
            files[f"{name}_{heuristic}_histogram.csv"] = \
                report.histograms_to_csv(hists)
    elif kind == "tree":
        t = t0
        bound = opts.get("sep_bound")
        if bound is not None:
            t = tradeoff.merge_by_separator(t0, bound)
        files[f"{name}_{heuristic}_tree.dot"] = report.export_dot(t, name)
    else:
        raise ValueError(f"unknown pipeline kind {kind!r}")
    return {"circuit": name, "files": files}


def _verify_circuit(dag, moral, tie, seed, oracle_limit) -> list[tuple[str, bool, str]]:
    checks: list[tuple[str, bool, str]] = []

    def check(label: str, ok: bool, detail: str = ""):
        checks.append((label, bool(ok), detail))

    trees = {}
    for h in ordering.HEURISTICS:
        t = report.primary_tree(moral, dag, h, tie, seed)
        trees[h] = t
        if h == "causal":
            d = ordering.causal(dag, tie, seed)
        elif h == "min-degree":
            d = ordering.min_degree(moral, tie, seed)
        elif h == "min-width":
            d = ordering.min_width(moral, tie, seed)
        else:
            d = ordering.max_cardinality(moral, tie, seed)
        og = graph.OrderedGraph(moral, d.permutation)
        induced, _ = graph.triangulate(og)
        check(f"{h}:chordal", graph.is_chordal(induced))
        iw = graph.induced_width(og)
        check(f"{h}:cluster=iw+1", t.max_cluster_size == iw + 1,
              f"max cluster {t.max_cluster_size}, induced width {iw}")
        check(f"{h}:running-intersection",
              jointree.verify_running_intersection(t))
        comp = len(moral.components()) if moral.n else 0
        check(f"{h}:sepset-count",
              len(t.edges) == t.n_clusters - comp,
              f"{len(t.edges)} edges, {t.n_clusters} clusters, {comp} components")

    cut = graph.cutset_heuristic(moral)
    check("cutset:acyclic", graph.is_forest(moral, without=cut),
          f"size {len(cut)}")
    t0 = trees["min-degree"]
    ok = all(
        graph.is_forest(sub, without=graph.cutset_heuristic(sub))
        for sub in (moral.subgraph(c) for c in t0.clusters))
    check("cluster-cutsets:acyclic", ok, f"{t0.n_clusters} clusters")
    merged = tradeoff.merge_by_separator(t0, 0)
    check("merge0:one-cluster-per-component",
          merged.n_clusters == len(moral.components()))

    if moral.n <= oracle_limit:
        tw = graph.treewidth_exact(moral, limit=oracle_limit)
        iw_best = min(
            graph.induced_width(graph.OrderedGraph(moral, t.ordering.permutation))
            for t in trees.values())
        check("oracle:induced-width>=treewidth", iw_best >= tw,
              f"best {iw_best}, exact {tw}")
        fvs = graph.cutset_exact(moral, limit=oracle_limit)
        check("oracle:cutset>=fvs", len(cut) >= len(fvs),
              f"heuristic {len(cut)}, exact {len(fvs)}")
        check("oracle:treewidth<=fvs+1", tw <= len(fvs) + 1,
              f"treewidth {tw}, fvs {len(fvs)}")
    return checks


def _run_many(kind: str, paths: list[Path], opts: dict) -> tuple[list[dict], int]:
    """Run the per-circuit pipeline over all inputs, honoring workers and
    the per-circuit timeout. Returns results plus the worst status."""
    results = []
    timeout = opts.get("timeout")
    if opts.get("workers", 1) and opts["workers"] > 1:
        with ProcessPoolExecutor(max_workers=opts["workers"]) as pool:
            futures = [pool.submit(_guarded, kind, str(p), opts, timeout)
                       for p in paths]
            results = [f.result() for f in futures]
    else:
        results = [_guarded(kind, str(p), opts, timeout) for p in paths]
    status = 0
    for r in results:
        if r.get("error_kind") == "input":
            return results, 1
    if any(r.get("error_kind") == "invariant" for r in results):
        status = 2
    elif any(r.get("timeout") for r in results):
        status = 3
    return results, status


def _guarded(kind: str, path_str: str, opts: dict, timeout) -> dict:
    name = Path(path_str).stem
    try:
        return _with_timeout(timeout, _pipeline, kind, path_str, opts)
    except TimeoutError:
        return {"circuit": name, "timeout": True}
    except (netlist.NetlistError, InputError, OSError) as exc:
        return {"circuit": name, "error": str(exc), "error_kind": "input"}
    except (graph.GraphError, jointree.JointreeError, ValueError) as exc:
        return {"circuit": name, "error": str(exc), "error_kind": "invariant"}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "parse":
            path = Path(args.file)
            if not path.is_file():
                print(f"spa: no such file: {args.file}", file=sys.stderr)
                return 1
            dag = load_dag(path)
            print(json.dumps({"nodes": dag.n,
                              "moral_edges": graph.moral_edge_count(dag)},
                             separators=(",", ":")))
            return 0

        if args.tie_break == "random" and args.seed is None:
            raise InputError("--tie-break random requires --seed")
        if args.tie_break != "random" and args.seed is not None:
            raise InputError("--seed only applies to --tie-break random")
        paths = collect_inputs(args.inputs)
        opts = {
            "ordering": getattr(args, "ordering", None),
            "tie_break": args.tie_break,
            "seed": args.seed,
            "format": args.format,
            "timeout": args.timeout,
            "workers": args.workers,
            "sep_bound": getattr(args, "sep_bound", None),
            "oracle_limit": getattr(args, "oracle_limit", 10),
        }
        results, status = _run_many(args.command, paths, opts)

        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        for r in results:
            if r.get("error"):
                print(f"spa: {r['circuit']}: {r['error']}", file=sys.stderr)
                continue
            if r.get("timeout"):
                print(f"spa: {r['circuit']}: timed out", file=sys.stderr)
                if args.command == "analyze":
                    stub = out_dir / (f"{r['circuit']}_min-degree_structural"
                                      f".{args.format}")
                    atomic_write(stub, _timeout_structural(r["circuit"],
                                                           args.format))
                    print(stub)
                continue
            for fname, text in r.get("files", {}).items():
                target = out_dir / fname
                atomic_write(target, text)
                print(target)
            for label, ok, detail in r.get("checks", ()):
                mark = "ok" if ok else "FAIL"
                suffix = f" ({detail})" if detail and not ok else ""
                print(f"{r['circuit']} {label}: {mark}{suffix}")
                if not ok:
                    status = max(status, 2)
        return status
    except InputError as exc:
        print(f"spa: {exc}", file=sys.stderr)
        return 1
    except netlist.NetlistError as exc:
        print(f"spa: {exc}", file=sys.stderr)
        return 1
    except (graph.GraphError, jointree.JointreeError) as exc:
        print(f"spa: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
