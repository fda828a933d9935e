"""Tables, histograms, quantile summaries, and DOT rendering.

Everything here aggregates results computed by the other modules into
machine-readable artifacts: per-circuit ordering comparisons (max clique and
max separator for each heuristic), the structural-parameter table covering
brute force, pure conditioning, pure clustering and the hybrid point, and
size histograms with quantile ranges. CSV and JSON exports round-trip
byte-identically.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass

from .graph import UGraph, cutset_heuristic, moralize, triangulate, OrderedGraph
from .jointree import CliqueTree, build_primary_tree, maximal_cliques, \
    separator_width
from .netlist import Dag
from .ordering import HEURISTICS, Ordering, causal, max_cardinality, \
    min_degree, min_width
from .tradeoff import cluster_cutsets, merge_by_separator

# Separator bounds at which the hybrid row is reported for the benchmark
# suite; circuits not listed get a null hybrid row (reason recorded).
HYBRID_SEPARATORS = {
    "c17": 2, "c432": 6, "c499": 6, "c880": 5,
    "c1355": 3, "c1908": 4, "c2670": 5, "c6288": 16,
}

COMPARISON_CSV_HEADER = ("circuit", "ordering", "max_clique", "max_sepset")
STRUCTURAL_CSV_HEADER = ("circuit", "n", "cond_cutset", "clu_clique",
                         "clu_cutset", "clu_sep", "hyb_clique", "hyb_cutset",
                         "hyb_sep", "hyb_reason")
HISTOGRAM_CSV_HEADER = ("parameter", "size", "count")


@dataclass(frozen=True)
class Histogram:
    parameter: str
    bins: dict[int, int]
    total: int

    def __post_init__(self):
        if sum(self.bins.values()) != self.total:
            raise ValueError("bin frequencies must sum to the total")
        if any(size < 0 for size in self.bins):
            raise ValueError("sizes are non-negative")


@dataclass(frozen=True)
class ReportRow:
    circuit: str
    n: int
    orderings: dict[str, tuple[int, int]]
    cond_cutset: int
    clustering: tuple[int, int, int]
    hybrid: tuple[int, int, int] | None
    hybrid_reason: str | None = None

    def __post_init__(self):
        if (self.hybrid is None) == (self.hybrid_reason is None):
            raise ValueError("exactly one of hybrid and hybrid_reason is set")
        if self.hybrid is not None and self.hybrid[2] > self.clustering[2]:
            raise ValueError("hybrid separator exceeds the clustering one")


def histogram(sizes, parameter: str = "") -> Histogram:
    counts = Counter(int(s) for s in sizes)
    return Histogram(parameter=parameter,
                     bins=dict(sorted(counts.items())),
                     total=sum(counts.values()))


def quantile_range(sizes, q: float) -> tuple[int, int]:
    """Smallest prefix range of the sorted sizes covering ceil(q * total)
    of them: (min size, size at the q-th cumulative position)."""
    if not 0 < q <= 1:
        raise ValueError("q must be in (0, 1]")
    data = sorted(int(s) for s in sizes)
    if not data:
        raise ValueError("quantile of an empty list")
    need = math.ceil(q * len(data))
    return data[0], data[need - 1]


def _pick(value, heuristic: str):
    if isinstance(value, Mapping):
        return value.get(heuristic)
    return value


def primary_tree(moral: UGraph, dag: Dag | None, heuristic: str,
                 tie_break="index", seed=None) -> CliqueTree:
    """Ordering, triangulation and join-tree in one step, for one heuristic.

    `tie_break` and `seed` may be single values or per-heuristic mappings.
    The causal heuristic needs the DAG; the rest work off the moral graph.
    """
    tb = _pick(tie_break, heuristic) or "index"
    sd = _pick(seed, heuristic)
    if heuristic == "min-degree":
        d = min_degree(moral, tb, sd)
    elif heuristic == "min-width":
        d = min_width(moral, tb, sd)
    elif heuristic == "max-cardinality":
        d = max_cardinality(moral, tb, sd)
    elif heuristic == "causal":
        if dag is None:
            raise ValueError("causal ordering needs the DAG")
        d = causal(dag, tb, sd)
    else:
        raise ValueError(f"unknown heuristic {heuristic!r}")
    induced, _ = triangulate(OrderedGraph(moral, d.permutation))
    return build_primary_tree(maximal_cliques(induced, d), d, induced)


def ordering_comparison(moral: UGraph, dag: Dag, tie_break="index",
                        seed=None) -> dict[str, tuple[int, int]]:
    """(max clique, max sepset) per heuristic, all four run end to end."""
    out: dict[str, tuple[int, int]] = {}
    for h in HEURISTICS:
        t = primary_tree(moral, dag, h, tie_break, seed)
        out[h] = (t.max_cluster_size, separator_width(t))
    return out


def structural_row(dag: Dag, moral: UGraph,
                   comp: Mapping[str, tuple[int, int]], tie_break="index",
                   seed=None,
                   hybrid_seps: Mapping[str, int] | None = None) -> ReportRow:
    """The structural parameters of one circuit: brute-force exponent n,
    whole-graph cutset, the min-degree primary tree's (clique, cutset,
    separator), and the hybrid point obtained by merging that tree at the
    circuit's reference separator bound (null when no bound is known)."""
    if hybrid_seps is None:
        hybrid_seps = HYBRID_SEPARATORS
    t0 = primary_tree(moral, dag, "min-degree", tie_break, seed)
    cache: dict = {}
    clustering = (t0.max_cluster_size,
                  max(cluster_cutsets(t0, moral, cache), default=0),
                  separator_width(t0))
    hybrid = None
    reason = None
    ref = hybrid_seps.get(dag.name)
    if ref is None:
        reason = "no-reference-point"
    else:
        th = merge_by_separator(t0, ref)
        hybrid = (th.max_cluster_size,
                  max(cluster_cutsets(th, moral, cache), default=0),
                  separator_width(th))
    return ReportRow(
        circuit=dag.name, n=dag.n, orderings=dict(comp),
        cond_cutset=len(cutset_heuristic(moral)),
        clustering=clustering, hybrid=hybrid, hybrid_reason=reason)


def structural_table(dags, tie_break="index", seed=None,
                     hybrid_seps: Mapping[str, int] | None = None) -> list[ReportRow]:
    """structural_row over a corpus, all four orderings included per row."""
    rows = []
    for dag in dags:
        moral = moralize(dag)
        comp = ordering_comparison(moral, dag, tie_break, seed)
        rows.append(structural_row(dag, moral, comp, tie_break, seed,
                                   hybrid_seps))
    return rows


def export_dot(t: CliqueTree, name: str = "cliquetree") -> str:
    """DOT rendering of a clique-tree; nodes are labeled by cluster size,
    edges by separator size."""
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for i, c in enumerate(t.clusters):
        lines.append(f'  c{i} [label="{len(c)}"];')
    for i, j, sep in t.edges:
        lines.append(f'  c{i} -- c{j} [label="{len(sep)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _write_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _read_csv(text: str, header) -> list[list[str]]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != tuple(header):
        raise ValueError("unrecognized CSV header")
    return rows[1:]


def comparison_to_csv(circuit: str, comp: Mapping[str, tuple[int, int]]) -> str:
    return _write_csv(COMPARISON_CSV_HEADER,
                      ([circuit, h, c, s] for h, (c, s) in comp.items()))


def comparison_from_csv(text: str) -> tuple[str, dict[str, tuple[int, int]]]:
    body = _read_csv(text, COMPARISON_CSV_HEADER)
    if not body:
        raise ValueError("comparison CSV has no data rows")
    circuits = {r[0] for r in body}
    if len(circuits) != 1:
        raise ValueError("comparison CSV mixes circuits")
    return body[0][0], {r[1]: (int(r[2]), int(r[3])) for r in body}


def comparison_to_json(circuit: str, comp: Mapping[str, tuple[int, int]]) -> str:
    payload = {"circuit": circuit,
               "orderings": {h: [c, s] for h, (c, s) in comp.items()}}
    return json.dumps(payload, separators=(",", ":"))


def comparison_from_json(text: str) -> tuple[str, dict[str, tuple[int, int]]]:
    payload = json.loads(text)
    return payload["circuit"], {h: (c, s) for h, (c, s)
                                in payload["orderings"].items()}


def row_to_csv(row: ReportRow) -> str:
    hyb = ["", "", ""] if row.hybrid is None else list(row.hybrid)
    return _write_csv(STRUCTURAL_CSV_HEADER, [
        [row.circuit, row.n, row.cond_cutset, *row.clustering, *hyb,
         row.hybrid_reason or ""]])


def row_from_csv(text: str) -> ReportRow:
    """Rebuild a ReportRow from its CSV form; the per-ordering pairs live in
    the comparison file, so they come back empty here."""
    body = _read_csv(text, STRUCTURAL_CSV_HEADER)
    if len(body) != 1:
        raise ValueError("expected exactly one structural row")
    r = body[0]
    hybrid = None if r[6] == "" else (int(r[6]), int(r[7]), int(r[8]))
    return ReportRow(circuit=r[0], n=int(r[1]), orderings={},
                     cond_cutset=int(r[2]),
                     clustering=(int(r[3]), int(r[4]), int(r[5])),
                     hybrid=hybrid, hybrid_reason=r[9] or None)


def row_to_json(row: ReportRow) -> str:
    payload = {
        "circuit": row.circuit,
        "n": row.n,
        "cond_cutset": row.cond_cutset,
        "clustering": list(row.clustering),
        "hybrid": None if row.hybrid is None else list(row.hybrid),
        "hybrid_reason": row.hybrid_reason,
        "orderings": {h: [c, s] for h, (c, s) in row.orderings.items()},
    }
    return json.dumps(payload, separators=(",", ":"))


def row_from_json(text: str) -> ReportRow:
    payload = json.loads(text)
    hybrid = payload["hybrid"]
    return ReportRow(
        circuit=payload["circuit"], n=payload["n"],
        orderings={h: (c, s) for h, (c, s) in payload["orderings"].items()},
        cond_cutset=payload["cond_cutset"],
        clustering=tuple(payload["clustering"]),
        hybrid=None if hybrid is None else tuple(hybrid),
        hybrid_reason=payload["hybrid_reason"])


def histograms_to_csv(hists) -> str:
    rows = []
    for h in hists:
        for size, count in h.bins.items():
            rows.append([h.parameter, size, count])
    return _write_csv(HISTOGRAM_CSV_HEADER, rows)


def histograms_from_csv(text: str) -> list[Histogram]:
    body = _read_csv(text, HISTOGRAM_CSV_HEADER)
    grouped: dict[str, dict[int, int]] = {}
    for param, size, count in body:
        grouped.setdefault(param, {})[int(size)] = int(count)
    return [Histogram(parameter=p, bins=b, total=sum(b.values()))
            for p, b in grouped.items()]


def histograms_to_json(hists) -> str:
    payload = [{"parameter": h.parameter,
                "bins": {str(size): count for size, count in h.bins.items()},
                "total": h.total} for h in hists]
    return json.dumps(payload, separators=(",", ":"))


def histograms_from_json(text: str) -> list[Histogram]:
    payload = json.loads(text)
    return [Histogram(parameter=q["parameter"],
                      bins={int(s): c for s, c in q["bins"].items()},
                      total=q["total"]) for q in payload]
