"""Secondary join-trees and the space-time tradeoff series.

Merging every tree edge whose separator exceeds a bound turns the primary
clique-tree into a secondary tree with smaller separators and bigger
clusters. Walking the bound down through the distinct separator sizes of
the primary tree (then 0) produces the whole series, one decomposition per
point, each annotated with its worst cluster, worst per-cluster cutset, and
the exponents that bound inference cost: time n * 2^time_exp within
space n * 2^space_exp.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .graph import UGraph, _DSU, cutset_heuristic
from .jointree import CliqueTree, JointreeError, separator_width, \
    verify_running_intersection

SERIES_CSV_HEADER = ("circuit", "ordering", "sep_bound", "max_cluster",
                     "max_cutset", "clusters", "time_exp", "space_exp")


@dataclass(frozen=True)
class DecompositionPoint:
    sep_bound: int
    max_cluster: int
    max_cutset: int
    cluster_count: int
    time_exponent: int
    space_exponent: int

    def __post_init__(self):
        if self.space_exponent != self.sep_bound:
            raise ValueError("space exponent must equal the separator bound")
        if self.sep_bound > self.max_cluster:
            raise ValueError("separator cannot exceed the largest cluster")
        if self.max_cluster > 0 and self.max_cutset >= self.max_cluster:
            raise ValueError("a cutset never includes a whole cluster")


@dataclass(frozen=True)
class TradeoffSeries:
    circuit: str
    ordering: str
    points: tuple[DecompositionPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        seps = [p.sep_bound for p in self.points]
        if any(b >= a for a, b in zip(seps, seps[1:])):
            raise ValueError("separator bounds must strictly decrease")
        if self.points and self.points[-1].sep_bound != 0:
            raise ValueError("a series ends at separator bound 0")
        sizes = [p.max_cluster for p in self.points]
        if any(b < a for a, b in zip(sizes, sizes[1:])):
            raise ValueError("max cluster size must not decrease")


def merge_by_separator(t: CliqueTree, bound: int) -> CliqueTree:
    """Contract every tree edge whose separator is larger than `bound`.

    Merged clusters are unions of the contracted cliques. The surviving
    separators are provably unchanged by the contraction (running
    intersection pins every shared variable onto the surviving edge), which
    is recomputed and asserted here rather than trusted.
    """
    sets = t.cluster_sets()
    k = len(sets)
    dsu = _DSU(k)
    for i, j, sep in t.edges:
        if len(sep) > bound:
            dsu.union(i, j)
    slot: dict[int, int] = {}
    new_index = []
    for i in range(k):
        r = dsu.find(i)
        if r not in slot:
            slot[r] = len(slot)
        new_index.append(slot[r])
    merged: list[set[str]] = [set() for _ in range(len(slot))]
    for i, s in enumerate(sets):
        merged[new_index[i]] |= s

    edges = []
    for i, j, sep in t.edges:
        if len(sep) > bound:
            continue
        a, b = new_index[i], new_index[j]
        lo, hi = (a, b) if a < b else (b, a)
        fresh = merged[lo] & merged[hi]
        if fresh != set(sep):
            raise JointreeError("separator changed under merging")
        edges.append((lo, hi, tuple(sorted(fresh))))

    out = CliqueTree(clusters=tuple(tuple(sorted(c)) for c in merged),
                     edges=tuple(edges), ordering=t.ordering,
                     generation="secondary", sep_bound=bound)
    if not verify_running_intersection(out):
        raise JointreeError("merging broke the running intersection")
    return out


def cluster_cutsets(t: CliqueTree, moral: UGraph,
                    cache: dict | None = None) -> list[int]:
    """Cycle-cutset size of the moral graph restricted to each cluster,
    aligned with t.clusters. `cache` (keyed by frozen cluster) lets a series
    reuse results for clusters that survive merging unchanged."""
    sizes = []
    for cluster in t.clusters:
        key = frozenset(cluster)
        if cache is not None and key in cache:
            sizes.append(cache[key])
            continue
        size = len(cutset_heuristic(moral.subgraph(cluster)))
        if cache is not None:
            cache[key] = size
        sizes.append(size)
    return sizes


def tradeoff_series(t0: CliqueTree, moral: UGraph,
                    circuit: str = "") -> TradeoffSeries:
    """Evaluate the decomposition at every distinct separator size of the
    primary tree, descending, with a final fully merged point at bound 0."""
    ordering = t0.ordering.heuristic if t0.ordering is not None else "given"
    bounds = sorted({len(sep) for _, _, sep in t0.edges}, reverse=True)
    bounds.append(0)
    cache: dict = {}
    points = []
    for bound in bounds:
        t = merge_by_separator(t0, bound)
        realized = separator_width(t)
        if realized != bound:
            raise JointreeError(
                f"expected separator width {bound}, got {realized}")
        cuts = cluster_cutsets(t, moral, cache)
        worst_cut = max(cuts, default=0)
        points.append(DecompositionPoint(
            sep_bound=bound,
            max_cluster=t.max_cluster_size,
            max_cutset=worst_cut,
            cluster_count=t.n_clusters,
            time_exponent=max(bound, worst_cut),
            space_exponent=bound,
        ))
    return TradeoffSeries(circuit=circuit, ordering=ordering,
                          points=tuple(points))


def complexity_bounds(p: DecompositionPoint, n: int,
                      mode: str) -> tuple[int, int]:
    """Exponent pair (time, space) bounding inference as n * 2^exponent.

    clustering:   time r + 1, space s
    conditioning: time c + 2, space 0 (linear)
    hybrid:       time max(s, c), space s
    `n` only scales the linear factor and is accepted for the record.
    """
    del n
    if mode == "clustering":
        return p.max_cluster + 1, p.space_exponent
    if mode == "conditioning":
        return p.max_cutset + 2, 0
    if mode == "hybrid":
        return max(p.space_exponent, p.max_cutset), p.space_exponent
    raise ValueError(f"unknown mode {mode!r}")


def series_to_csv(series: TradeoffSeries) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SERIES_CSV_HEADER)
    for p in series.points:
        writer.writerow([series.circuit, series.ordering, p.sep_bound,
                         p.max_cluster, p.max_cutset, p.cluster_count,
                         p.time_exponent, p.space_exponent])
    return buf.getvalue()


def series_from_csv(text: str) -> TradeoffSeries:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != SERIES_CSV_HEADER:
        raise ValueError("unrecognized series CSV header")
    body = rows[1:]
    if not body:
        raise ValueError("series CSV has no data rows")
    tags = {(r[0], r[1]) for r in body}
    if len(tags) != 1:
        raise ValueError("series CSV mixes circuits or orderings")
    circuit, ordering = body[0][0], body[0][1]
    points = tuple(
        DecompositionPoint(sep_bound=int(r[2]), max_cluster=int(r[3]),
                           max_cutset=int(r[4]), cluster_count=int(r[5]),
                           time_exponent=int(r[6]), space_exponent=int(r[7]))
        for r in body)
    return TradeoffSeries(circuit=circuit, ordering=ordering, points=points)


def series_to_json(series: TradeoffSeries) -> str:
    payload = {
        "circuit": series.circuit,
        "ordering": series.ordering,
        "points": [{
            "sep_bound": p.sep_bound,
            "max_cluster": p.max_cluster,
            "max_cutset": p.max_cutset,
            "clusters": p.cluster_count,
            "time_exp": p.time_exponent,
            "space_exp": p.space_exponent,
        } for p in series.points],
    }
    return json.dumps(payload, separators=(",", ":"))


def series_from_json(text: str) -> TradeoffSeries:
    payload = json.loads(text)
    points = tuple(
        DecompositionPoint(sep_bound=q["sep_bound"],
                           max_cluster=q["max_cluster"],
                           max_cutset=q["max_cutset"],
                           cluster_count=q["clusters"],
                           time_exponent=q["time_exp"],
                           space_exponent=q["space_exp"])
        for q in payload["points"])
    return TradeoffSeries(circuit=payload["circuit"],
                          ordering=payload["ordering"], points=points)
