"""Vectorized numpy implementations of the hot loops.

Every function here has a numba twin in `_kernels_numba` with the same
signature and bit-identical results. Graphs arrive as dense symmetric uint8
adjacency matrices with a zero diagonal; `prio` is a permutation of
range(n) used to break ties (lower value wins).
"""

from __future__ import annotations

import numpy as np

_BIG = np.int64(1) << 62


def triangulate(adj: np.ndarray, order: np.ndarray):
    """Fill in the ordered graph, processing vertices from last to first.

    Each vertex's earlier neighbors are connected pairwise. Returns the
    filled adjacency and `widths`, where widths[i] is the number of earlier
    neighbors of order[i] in the filled graph.
    """
    n = order.shape[0]
    filled = adj.copy()
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n, dtype=np.int64)
    widths = np.zeros(n, dtype=np.int64)
    for i in range(n - 1, -1, -1):
        v = order[i]
        nbrs = np.flatnonzero((filled[v] != 0) & (pos < i))
        widths[i] = nbrs.size
        if nbrs.size > 1:
            filled[np.ix_(nbrs, nbrs)] = 1
    if n:
        np.fill_diagonal(filled, 0)
    return filled, widths


def width_sequence(adj: np.ndarray, order: np.ndarray) -> np.ndarray:
    """widths[i] = earlier neighbors of order[i] in the graph as given."""
    n = order.shape[0]
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n, dtype=np.int64)
    earlier = pos[np.newaxis, :] < pos[:, np.newaxis]
    counts = ((adj != 0) & earlier).sum(axis=1).astype(np.int64)
    return counts[order]


def order_min_degree(adj: np.ndarray, prio: np.ndarray) -> np.ndarray:
    """Repeatedly eliminate the minimum-degree vertex (ties by prio),
    connecting its remaining neighbors pairwise."""
    n = adj.shape[0]
    work = adj != 0
    alive = np.ones(n, dtype=bool)
    deg = work.sum(axis=1).astype(np.int64)
    key_tie = np.asarray(prio, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    for step in range(n):
        key = np.where(alive, deg * n + key_tie, _BIG)
        v = int(np.argmin(key))
        order[step] = v
        nbrs = np.flatnonzero(work[v] & alive)
        if nbrs.size:
            sub = work[np.ix_(nbrs, nbrs)]
            gained = (~sub).sum(axis=1).astype(np.int64) - 1  # diag is False
            deg[nbrs] += gained - 1  # new partners, minus the edge to v
            work[np.ix_(nbrs, nbrs)] = True
            work[nbrs, nbrs] = False
        alive[v] = False
        work[v, :] = False
        work[:, v] = False
        deg[v] = 0
    return order


def order_min_width(adj: np.ndarray, prio: np.ndarray) -> np.ndarray:
    """Like min-degree but without adding fill on removal."""
    n = adj.shape[0]
    work = adj != 0
    alive = np.ones(n, dtype=bool)
    deg = work.sum(axis=1).astype(np.int64)
    key_tie = np.asarray(prio, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    for step in range(n):
        key = np.where(alive, deg * n + key_tie, _BIG)
        v = int(np.argmin(key))
        order[step] = v
        nbrs = np.flatnonzero(work[v] & alive)
        deg[nbrs] -= 1
        alive[v] = False
        work[v, :] = False
        work[:, v] = False
        deg[v] = 0
    return order


def order_max_cardinality(adj: np.ndarray, prio: np.ndarray) -> np.ndarray:
    """Number vertices first to last, always picking the unnumbered vertex
    with the most numbered neighbors (ties by prio)."""
    n = adj.shape[0]
    card = np.zeros(n, dtype=np.int64)
    unnumbered = np.ones(n, dtype=bool)
    key_tie = np.asarray(prio, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    for step in range(n):
        key = np.where(unnumbered, -card * n + key_tie, _BIG)
        v = int(np.argmin(key))
        order[step] = v
        unnumbered[v] = False
        card[adj[v] != 0] += 1
    return order


def cutset_greedy(adj: np.ndarray, prio: np.ndarray) -> np.ndarray:
    """Greedy cycle cutset before minimization.

    Strip degree <= 1 vertices until only cycles remain, pull the highest
    degree vertex (ties by prio) into the cutset, repeat. Returns the chosen
    vertex ids in pick order.
    """
    n = adj.shape[0]
    work = adj != 0
    alive = np.ones(n, dtype=bool)
    deg = work.sum(axis=1).astype(np.int64)
    key_tie = np.asarray(prio, dtype=np.int64)
    chosen: list[int] = []
    while True:
        stack = list(np.flatnonzero(alive & (deg <= 1)))
        while stack:
            u = int(stack.pop())
            if not alive[u]:
                continue
            alive[u] = False
            for w in np.flatnonzero(work[u] & alive):
                deg[w] -= 1
                if deg[w] <= 1:
                    stack.append(int(w))
            work[u, :] = False
            work[:, u] = False
            deg[u] = 0
        if not alive.any():
            break
        key = np.where(alive, -deg * n + key_tie, _BIG)
        v = int(np.argmin(key))
        chosen.append(v)
        nbrs = np.flatnonzero(work[v] & alive)
        deg[nbrs] -= 1
        alive[v] = False
        work[v, :] = False
        work[:, v] = False
        deg[v] = 0
    return np.asarray(chosen, dtype=np.int64)
