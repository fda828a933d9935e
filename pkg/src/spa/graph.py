"""Undirected-graph core.

Moralization, ordered-graph widths, triangulation, chordality, cycle
cutsets, plus exact brute-force versions of the hard quantities for use as
oracles on small graphs. Vertices are referred to by name; internally each
graph keeps a dense uint8 adjacency matrix indexed by file order, which is
what the `_backend` kernels operate on.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _backend
from .netlist import Dag


class GraphError(ValueError):
    pass


class UGraph:
    """Simple undirected graph. Self-loops and parallel edges are rejected
    at construction; nothing in this domain produces them."""

    __slots__ = ("nodes", "index", "adj", "_edges")

    def __init__(self, nodes, edges):
        self.nodes: tuple[str, ...] = tuple(nodes)
        if len(set(self.nodes)) != len(self.nodes):
            raise GraphError("duplicate node names")
        self.index: dict[str, int] = {v: i for i, v in enumerate(self.nodes)}
        n = len(self.nodes)
        self.adj = np.zeros((n, n), dtype=np.uint8)
        kept: list[tuple[str, str]] = []
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            try:
                i, j = self.index[u], self.index[v]
            except KeyError as exc:
                raise GraphError(f"edge endpoint {exc.args[0]!r} is not a node") from None
            if self.adj[i, j]:
                raise GraphError(f"parallel edge {u!r}-{v!r}")
            self.adj[i, j] = 1
            self.adj[j, i] = 1
            kept.append((u, v))
        self._edges = tuple(kept)

    @classmethod
    def _from_adj(cls, nodes, adj) -> "UGraph":
        g = cls.__new__(cls)
        g.nodes = tuple(nodes)
        g.index = {v: i for i, v in enumerate(g.nodes)}
        g.adj = np.ascontiguousarray(adj, dtype=np.uint8)
        ii, jj = np.nonzero(np.triu(g.adj, 1))
        g._edges = tuple((g.nodes[i], g.nodes[j]) for i, j in zip(ii, jj))
        return g

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self._edges)

    def edges(self) -> tuple[tuple[str, str], ...]:
        return self._edges

    def has_edge(self, u: str, v: str) -> bool:
        return bool(self.adj[self.index[u], self.index[v]])

    def neighbors(self, v: str) -> tuple[str, ...]:
        row = self.adj[self.index[v]]
        return tuple(self.nodes[i] for i in np.flatnonzero(row))

    def degree(self, v: str) -> int:
        return int(self.adj[self.index[v]].sum())

    def subgraph(self, names) -> "UGraph":
        """Induced subgraph; node order follows this graph's node order."""
        wanted = set(names)
        unknown = wanted - set(self.nodes)
        if unknown:
            raise GraphError(f"unknown nodes {sorted(unknown)!r}")
        idx = [i for i, v in enumerate(self.nodes) if v in wanted]
        sub = self.adj[np.ix_(idx, idx)]
        return UGraph._from_adj([self.nodes[i] for i in idx], sub)

    def components(self) -> list[tuple[str, ...]]:
        """Connected components, each in node order, ordered by first node."""
        dsu = _DSU(self.n)
        for u, v in self._edges:
            dsu.union(self.index[u], self.index[v])
        groups: dict[int, list[str]] = {}
        for i, v in enumerate(self.nodes):
            groups.setdefault(dsu.find(i), []).append(v)
        return [tuple(g) for g in groups.values()]

    def to_json(self) -> str:
        payload = {
            "nodes": sorted(self.nodes),
            "edges": sorted(sorted((u, v)) for u, v in self._edges),
        }
        return json.dumps(payload, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "UGraph":
        payload = json.loads(text)
        return cls(payload["nodes"], [tuple(e) for e in payload["edges"]])

    def __repr__(self) -> str:
        return f"UGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class OrderedGraph:
    """A graph together with an ordering of its nodes, first to last."""

    graph: UGraph
    order: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        if sorted(self.order) != sorted(self.graph.nodes):
            raise GraphError("ordering is not a permutation of the nodes")

    def order_indices(self) -> np.ndarray:
        idx = self.graph.index
        return np.fromiter((idx[v] for v in self.order), dtype=np.int64,
                           count=len(self.order))


class _DSU:
    """Union-find with path halving, used for forest checks."""

    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Join the two sets; False if they were already one (cycle)."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def moralize(dag: Dag) -> UGraph:
    """Drop edge directions and marry the parents of every node.

    Duplicate edges are coalesced; the result is a simple graph. For the
    per-family edge total reported by the benchmark tables, see
    `moral_edge_count`.
    """
    seen: set[frozenset[str]] = set()
    edges: list[tuple[str, str]] = []

    def add(u: str, v: str) -> None:
        key = frozenset((u, v))
        if key not in seen:
            seen.add(key)
            edges.append((u, v))

    for p, c in dag.edges:
        add(p, c)
    families = dag.families or tuple(
        (child, parents) for child, parents in dag.parents().items() if parents)
    for _child, parents in families:
        distinct = list(dict.fromkeys(parents))
        for a, b in combinations(distinct, 2):
            add(a, b)
    return UGraph(dag.nodes, edges)


def moral_edge_count(dag: Dag) -> int:
    """Moral-graph edge total as the benchmark tables count it: one edge per
    distinct (fan-in, output) pair plus C(k,2) marriages for every gate with
    k distinct fan-ins, summed per gate without coalescing across gates."""
    total = len(dag.edges)
    for _child, parents in dag.families:
        total += math.comb(len(set(parents)), 2)
    return total


def width_of_ordering(og: OrderedGraph) -> int:
    """Max over nodes of the number of neighbors that precede it."""
    if og.graph.n == 0:
        return 0
    k = _backend.kernels()
    widths = k.width_sequence(og.graph.adj, og.order_indices())
    return int(widths.max())


def triangulate(og: OrderedGraph) -> tuple[UGraph, tuple[tuple[str, str], ...]]:
    """Process nodes last to first, connecting each node's earlier neighbors
    pairwise. Returns (induced graph, fill edges added)."""
    g = og.graph
    if g.n == 0:
        return UGraph((), ()), ()
    k = _backend.kernels()
    filled, _ = k.triangulate(g.adj, og.order_indices())
    induced = UGraph._from_adj(g.nodes, filled)
    new = np.triu(filled & ~g.adj, 1)
    ii, jj = np.nonzero(new)
    fill = tuple((g.nodes[i], g.nodes[j]) for i, j in zip(ii, jj))
    return induced, fill


def induced_width(og: OrderedGraph) -> int:
    """Width of the induced (triangulated) ordered graph, w*(d)."""
    if og.graph.n == 0:
        return 0
    k = _backend.kernels()
    _, widths = k.triangulate(og.graph.adj, og.order_indices())
    return int(widths.max())


def is_chordal(g: UGraph) -> bool:
    """Max-cardinality search followed by a zero-fill check."""
    if g.n == 0:
        return True
    k = _backend.kernels()
    prio = np.arange(g.n, dtype=np.int64)
    order = k.order_max_cardinality(g.adj, prio)
    filled, _ = k.triangulate(g.adj, order)
    return bool((filled == g.adj).all())


def is_forest(g: UGraph, without=()) -> bool:
    """True iff g minus the given node set contains no cycle."""
    dropped = {g.index[v] for v in without}
    dsu = _DSU(g.n)
    for u, v in g.edges():
        i, j = g.index[u], g.index[v]
        if i in dropped or j in dropped:
            continue
        if not dsu.union(i, j):
            return False
    return True


def cutset_heuristic(g: UGraph) -> tuple[str, ...]:
    """Greedy inclusion-minimal cycle cutset.

    Degree <= 1 nodes are pruned repeatedly; while cycles remain the highest
    degree node (ties to lowest id) joins the cutset. A final sweep in
    ascending id order returns every node whose return keeps the remainder
    acyclic, which makes the result inclusion-minimal. Sorted by node id.
    """
    if g.n == 0:
        return ()
    k = _backend.kernels()
    prio = np.arange(g.n, dtype=np.int64)
    picked = k.cutset_greedy(g.adj, prio)
    in_cut = set(int(v) for v in picked)

    # Sweep: v may return iff its non-cutset neighbors lie in distinct trees
    # of the current forest. Union-find over the forest makes that O(deg).
    dsu = _DSU(g.n)
    for u, v in g.edges():
        i, j = g.index[u], g.index[v]
        if i not in in_cut and j not in in_cut:
            if not dsu.union(i, j):
                raise GraphError("greedy cutset left a cycle behind")
    for v in sorted(in_cut):
        roots = set()
        ok = True
        for u in np.flatnonzero(g.adj[v]):
            u = int(u)
            if u in in_cut:
                continue
            r = dsu.find(u)
            if r in roots:
                ok = False
                break
            roots.add(r)
        if ok:
            in_cut.discard(v)
            for r in roots:
                dsu.union(v, r)
    return tuple(g.nodes[i] for i in sorted(in_cut))


def cutset_exact(g: UGraph, limit: int = 20) -> tuple[str, ...]:
    """Minimum feedback vertex set by subset enumeration, smallest first.

    Only nodes with degree >= 2 can help, which keeps the search honest on
    sparse instances. Refuses graphs larger than `limit` nodes.
    """
    if g.n > limit:
        raise GraphError(f"cutset_exact limited to {limit} nodes, got {g.n}")
    if is_forest(g):
        return ()
    pool = [v for v in g.nodes if g.degree(v) >= 2]
    for size in range(1, len(pool) + 1):
        for combo in combinations(pool, size):
            if is_forest(g, without=combo):
                return tuple(sorted(combo, key=g.index.__getitem__))
    raise GraphError("unreachable: removing all candidates leaves a forest")


def treewidth_exact(g: UGraph, limit: int = 10) -> int:
    """Minimum induced width over all orderings, by subset dynamic
    programming over elimination prefixes. Refuses graphs larger than
    `limit` nodes."""
    if g.n > limit:
        raise GraphError(f"treewidth_exact limited to {limit} nodes, got {g.n}")
    n = g.n
    if n == 0:
        return 0
    adjbit = [0] * n
    for u, v in g.edges():
        i, j = g.index[u], g.index[v]
        adjbit[i] |= 1 << j
        adjbit[j] |= 1 << i

    def eliminated_degree(prefix: int, v: int) -> int:
        # neighbors of v outside prefix, reachable through prefix vertices
        seen = 1 << v
        stack = [v]
        out = 0
        while stack:
            u = stack.pop()
            fresh = adjbit[u] & ~seen
            seen |= fresh
            while fresh:
                w = fresh & -fresh
                fresh ^= w
                wi = w.bit_length() - 1
                if (prefix >> wi) & 1:
                    stack.append(wi)
                else:
                    out |= w
        return out.bit_count()

    best = [0] * (1 << n)
    best[0] = -1
    for mask in range(1, 1 << n):
        acc = 1 << 62
        rest = mask
        while rest:
            bit = rest & -rest
            rest ^= bit
            v = bit.bit_length() - 1
            sub = mask ^ bit
            cand = max(best[sub], eliminated_degree(sub, v))
            if cand < acc:
                acc = cand
        best[mask] = acc
    return best[(1 << n) - 1]
