"""Primary clique-tree construction over a triangulated graph.

The maximal cliques of the induced graph are collected per node as
{v} plus v's earlier neighbors, filtered for containment, and ranked by the
position of their latest node. Each clique then connects to the preceding
clique sharing the most variables, which yields the join-tree (a forest when
the graph is disconnected). Separators are the edge intersections.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import _backend
from .graph import UGraph, _DSU
from .ordering import Ordering


class JointreeError(RuntimeError):
    """An internal construction invariant failed."""


@dataclass(frozen=True)
class CliqueTree:
    """Clusters, tree edges with separators, and how the tree was made.

    `edges` holds (i, j, separator) with i < j indexing `clusters`;
    `generation` is "primary" or "secondary" (the latter carries the
    separator bound used for merging in `sep_bound`).
    """

    clusters: tuple[tuple[str, ...], ...]
    edges: tuple[tuple[int, int, tuple[str, ...]], ...]
    ordering: Ordering | None = None
    generation: str = "primary"
    sep_bound: int | None = None

    @property
    def n_clusters(self) -> int:
        return len(self.clusters)

    @property
    def max_cluster_size(self) -> int:
        return max((len(c) for c in self.clusters), default=0)

    @property
    def component_count(self) -> int:
        return len(self.clusters) - len(self.edges)

    def cluster_sets(self) -> list[set[str]]:
        return [set(c) for c in self.clusters]

    def to_json(self) -> str:
        payload = {
            "generation": self.generation,
            "sep_bound": self.sep_bound,
            "ordering": None if self.ordering is None
            else json.loads(self.ordering.to_json()),
            "clusters": [list(c) for c in self.clusters],
            "edges": [[i, j, list(sep)] for i, j, sep in self.edges],
        }
        return json.dumps(payload, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "CliqueTree":
        payload = json.loads(text)
        ordering = payload.get("ordering")
        return cls(
            clusters=tuple(tuple(c) for c in payload["clusters"]),
            edges=tuple((i, j, tuple(sep)) for i, j, sep in payload["edges"]),
            ordering=None if ordering is None
            else Ordering.from_json(json.dumps(ordering)),
            generation=payload["generation"],
            sep_bound=payload["sep_bound"],
        )


def maximal_cliques(induced: UGraph, d: Ordering) -> list[tuple[str, ...]]:
    """Maximal cliques of the induced graph, ranked by latest-node position.

    Raises JointreeError if the graph is not chordal with respect to d,
    which would mean the triangulation step was skipped or buggy.
    """
    g = induced
    if set(d.permutation) != set(g.nodes):
        raise JointreeError("ordering does not cover the graph's nodes")
    n = g.n
    if n == 0:
        return []
    order = np.fromiter((g.index[v] for v in d.permutation),
                        dtype=np.int64, count=n)
    filled, _ = _backend.kernels().triangulate(g.adj, order)
    if (filled != g.adj).any():
        raise JointreeError(
            "graph is not chordal with respect to the ordering (fill needed)")

    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n, dtype=np.int64)
    # member[v] = {v} | earlier neighbors of v; candidate cliques, one per node
    member = (g.adj != 0) & (pos[np.newaxis, :] < pos[:, np.newaxis])
    np.fill_diagonal(member, True)

    # pack candidate sets into uint64 bitsets for the containment filter
    words = (n + 63) // 64
    packed = np.zeros((n, words * 8), dtype=np.uint8)
    packed[:, :(n + 7) // 8] = np.packbits(member, axis=1, bitorder="little")
    bits = packed.view(np.uint64)

    cliques: list[tuple[str, ...]] = []
    for i in range(n):
        v = int(order[i])
        # a candidate can only be swallowed by the candidate of a later
        # neighbor u (v is in u's earlier neighborhood, i.e. member[u, v])
        later = np.flatnonzero(member[:, v])
        later = later[later != v]
        if later.size:
            swallowed = np.any(
                np.all((bits[v] & ~bits[later]) == 0, axis=1))
            if swallowed:
                continue
        names = sorted(g.nodes[int(u)] for u in np.flatnonzero(member[v]))
        cliques.append(tuple(names))
    return cliques


def build_primary_tree(clusters, d: Ordering,
                       induced: UGraph | None = None) -> CliqueTree:
    """Connect each clique to the preceding clique with maximal intersection.

    Cliques sharing nothing with their predecessors start new components.
    When several predecessors tie, the earliest-ranked one is chosen. The
    running intersection property is verified before returning.

    Attachment order matters. Scanning cliques by their latest node under d
    can strand a separator across several predecessors (c1355 under
    max-cardinality does exactly that), so the walk follows a fresh
    max-cardinality sweep of the triangulated graph instead; under that rank
    the best predecessor always holds the whole separator. Pass the induced
    graph to skip rebuilding adjacency from cluster overlaps.
    """
    pos = d.position()
    sets = [set(c) for c in clusters]
    latest = [max((pos[v] for v in c), default=-1) for c in sets]
    if any(b <= a for a, b in zip(latest, latest[1:])):
        raise JointreeError("clusters are not ranked by latest-node position")
    if not clusters:
        return CliqueTree(clusters=(), edges=(), ordering=d,
                          generation="primary")

    names: list[str] = sorted(set().union(*sets), key=pos.__getitem__)
    idx = {v: k for k, v in enumerate(names)}
    if induced is not None:
        names = list(induced.nodes)
        idx = induced.index
        adj = induced.adj
    else:
        member = np.zeros((len(sets), len(names)), dtype=np.int32)
        for r, c in enumerate(sets):
            for v in c:
                member[r, idx[v]] = 1
        adj = ((member.T @ member) > 0).astype(np.uint8)
        np.fill_diagonal(adj, 0)
    prio = np.fromiter((pos[v] for v in names), dtype=np.int64,
                       count=len(names))
    visit = _backend.kernels().order_max_cardinality(adj, prio)
    sweep = np.empty(len(names), dtype=np.int64)
    sweep[visit] = np.arange(len(names), dtype=np.int64)
    pos2 = {v: int(sweep[idx[v]]) for v in names}

    keys = [max(pos2[v] for v in c) for c in sets]
    if len(set(keys)) != len(keys):
        raise JointreeError(
            "clusters are not the maximal cliques of a chordal graph")
    ranked = sorted(range(len(sets)), key=keys.__getitem__)

    containing: dict[str, list[int]] = {}
    union: set[str] = set()
    edges: list[tuple[int, int, tuple[str, ...]]] = []
    for i in ranked:
        ci = sets[i]
        sep = ci & union
        if sep:
            # any predecessor holding all of sep maximizes the intersection;
            # scanning the anchor variable's cliques in sweep order gives the
            # earliest such predecessor
            anchor = max(sep, key=pos2.__getitem__)
            parent = -1
            for j in containing[anchor]:
                if sep <= sets[j]:
                    parent = j
                    break
            if parent < 0:
                raise JointreeError(
                    "no predecessor contains the separator; running "
                    "intersection would fail")
            lo, hi = (parent, i) if parent < i else (i, parent)
            edges.append((lo, hi, tuple(sorted(sep))))
        union |= ci
        for v in ci:
            containing.setdefault(v, []).append(i)
    edges.sort()

    tree = CliqueTree(clusters=tuple(tuple(c) for c in clusters),
                      edges=tuple(edges), ordering=d, generation="primary")
    if not verify_running_intersection(tree):
        raise JointreeError("running intersection check failed")
    return tree


def separator_width(t: CliqueTree) -> int:
    """Largest separator cardinality; 0 when there are no tree edges."""
    return max((len(sep) for _, _, sep in t.edges), default=0)


def verify_running_intersection(t: CliqueTree) -> bool:
    """Check that t is a forest whose separators are the endpoint
    intersections and that every variable induces a connected subtree."""
    sets = t.cluster_sets()
    dsu = _DSU(len(sets))
    for i, j, sep in t.edges:
        if set(sep) != sets[i] & sets[j]:
            return False
        if not dsu.union(i, j):
            return False
    appearances: dict[str, int] = {}
    for c in sets:
        for v in c:
            appearances[v] = appearances.get(v, 0) + 1
    for _, _, sep in t.edges:
        for v in sep:
            appearances[v] -= 1
    # v's clusters form a connected subtree iff clusters(v) - edges(v) == 1
    return all(count == 1 for count in appearances.values())
