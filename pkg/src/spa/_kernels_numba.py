"""JIT-compiled twins of the `_kernels_numpy` functions.

Importing this module requires numba; `_backend.select` falls back to the
numpy implementations when it is missing. The loops are written scalar
style on purpose, that is what nopython mode compiles well.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_BIG = np.int64(1) << 62


@njit(cache=True)
def triangulate(adj, order):
    n = order.shape[0]
    filled = adj.copy()
    pos = np.empty(n, dtype=np.int64)
    for i in range(n):
        pos[order[i]] = i
    widths = np.zeros(n, dtype=np.int64)
    nbrs = np.empty(n, dtype=np.int64)
    for i in range(n - 1, -1, -1):
        v = order[i]
        cnt = 0
        for u in range(n):
            if filled[v, u] != 0 and pos[u] < i:
                nbrs[cnt] = u
                cnt += 1
        widths[i] = cnt
        for a in range(cnt):
            ua = nbrs[a]
            for b in range(a + 1, cnt):
                ub = nbrs[b]
                filled[ua, ub] = 1
                filled[ub, ua] = 1
    return filled, widths


@njit(cache=True)
def width_sequence(adj, order):
    n = order.shape[0]
    pos = np.empty(n, dtype=np.int64)
    for i in range(n):
        pos[order[i]] = i
    widths = np.zeros(n, dtype=np.int64)
    for i in range(n):
        v = order[i]
        cnt = 0
        for u in range(n):
            if adj[v, u] != 0 and pos[u] < i:
                cnt += 1
        widths[i] = cnt
    return widths


@njit(cache=True)
def order_min_degree(adj, prio):
    n = adj.shape[0]
    work = adj.copy()
    alive = np.ones(n, dtype=np.uint8)
    deg = np.zeros(n, dtype=np.int64)
    for v in range(n):
        d = 0
        for u in range(n):
            if work[v, u] != 0:
                d += 1
        deg[v] = d
    order = np.empty(n, dtype=np.int64)
    nbrs = np.empty(n, dtype=np.int64)
    for step in range(n):
        best = -1
        best_d = _BIG
        best_p = _BIG
        for v in range(n):
            if alive[v] != 0 and (deg[v] < best_d or
                                  (deg[v] == best_d and prio[v] < best_p)):
                best = v
                best_d = deg[v]
                best_p = prio[v]
        v = best
        order[step] = v
        cnt = 0
        for u in range(n):
            if work[v, u] != 0 and alive[u] != 0:
                nbrs[cnt] = u
                cnt += 1
        for a in range(cnt):
            ua = nbrs[a]
            for b in range(a + 1, cnt):
                ub = nbrs[b]
                if work[ua, ub] == 0:
                    work[ua, ub] = 1
                    work[ub, ua] = 1
                    deg[ua] += 1
                    deg[ub] += 1
        alive[v] = 0
        for a in range(cnt):
            deg[nbrs[a]] -= 1
        for u in range(n):
            work[v, u] = 0
            work[u, v] = 0
        deg[v] = 0
    return order


@njit(cache=True)
def order_min_width(adj, prio):
    n = adj.shape[0]
    work = adj.copy()
    alive = np.ones(n, dtype=np.uint8)
    deg = np.zeros(n, dtype=np.int64)
    for v in range(n):
        d = 0
        for u in range(n):
            if work[v, u] != 0:
                d += 1
        deg[v] = d
    order = np.empty(n, dtype=np.int64)
    for step in range(n):
        best = -1
        best_d = _BIG
        best_p = _BIG
        for v in range(n):
            if alive[v] != 0 and (deg[v] < best_d or
                                  (deg[v] == best_d and prio[v] < best_p)):
                best = v
                best_d = deg[v]
                best_p = prio[v]
        v = best
        order[step] = v
        alive[v] = 0
        for u in range(n):
            if work[v, u] != 0:
                if alive[u] != 0:
                    deg[u] -= 1
                work[v, u] = 0
                work[u, v] = 0
        deg[v] = 0
    return order


@njit(cache=True)
def order_max_cardinality(adj, prio):
    n = adj.shape[0]
    card = np.zeros(n, dtype=np.int64)
    unnumbered = np.ones(n, dtype=np.uint8)
    order = np.empty(n, dtype=np.int64)
    for step in range(n):
        best = -1
        best_c = np.int64(-1)
        best_p = _BIG
        for v in range(n):
            if unnumbered[v] != 0 and (card[v] > best_c or
                                       (card[v] == best_c and prio[v] < best_p)):
                best = v
                best_c = card[v]
                best_p = prio[v]
        v = best
        order[step] = v
        unnumbered[v] = 0
        for u in range(n):
            if adj[v, u] != 0 and unnumbered[u] != 0:
                card[u] += 1
    return order


@njit(cache=True)
def cutset_greedy(adj, prio):
    n = adj.shape[0]
    work = adj.copy()
    alive = np.ones(n, dtype=np.uint8)
    deg = np.zeros(n, dtype=np.int64)
    total = 0
    for v in range(n):
        d = 0
        for u in range(n):
            if work[v, u] != 0:
                d += 1
        deg[v] = d
        total += d
    chosen = np.empty(n, dtype=np.int64)
    nchosen = 0
    # worst case pushes in one prune phase: initial scan + one per decrement
    stack = np.empty(total + n + 1, dtype=np.int64)
    while True:
        top = 0
        for v in range(n):
            if alive[v] != 0 and deg[v] <= 1:
                stack[top] = v
                top += 1
        while top > 0:
            top -= 1
            u = stack[top]
            if alive[u] == 0:
                continue
            alive[u] = 0
            for w in range(n):
                if work[u, w] != 0:
                    work[u, w] = 0
                    work[w, u] = 0
                    if alive[w] != 0:
                        deg[w] -= 1
                        if deg[w] <= 1:
                            stack[top] = w
                            top += 1
            deg[u] = 0
        best = -1
        best_d = np.int64(1)
        best_p = _BIG
        for v in range(n):
            if alive[v] != 0 and (deg[v] > best_d or
                                  (deg[v] == best_d and prio[v] < best_p)):
                best = v
                best_d = deg[v]
                best_p = prio[v]
        if best == -1:
            break
        v = best
        chosen[nchosen] = v
        nchosen += 1
        alive[v] = 0
        for u in range(n):
            if work[v, u] != 0:
                if alive[u] != 0:
                    deg[u] -= 1
                work[v, u] = 0
                work[u, v] = 0
        deg[v] = 0
    return chosen[:nchosen].copy()
