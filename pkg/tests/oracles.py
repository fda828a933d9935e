"""Independent brute-force references the test suite checks the package against.

Everything here works on a plain dict-of-sets adjacency and favors obvious
code over speed; keep it that way. If these disagree with the package, trust
these.
"""

import itertools

# ---------- tiny graph helpers ----------


def mk(edges, nodes=()):
    g = {}
    for n in nodes:
        g.setdefault(n, set())
    for a, b in edges:
        if a == b:
            raise ValueError("self loop")
        g.setdefault(a, set()).add(b)
        g.setdefault(b, set()).add(a)
    return g


def copy_g(g):
    return {v: set(nb) for v, nb in g.items()}


def cycle_graph(n):
    return mk([(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    if n == 1:
        return {0: set()}
    return mk([(i, j) for i in range(n) for j in range(i + 1, n)])


def is_forest(g):
    g = copy_g(g)
    changed = True
    while changed:
        changed = False
        for v in list(g):
            if len(g[v]) <= 1:
                for u in g[v]:
                    g[u].discard(v)
                del g[v]
                changed = True
    return all(len(nb) == 0 for nb in g.values())


def random_graph(rng, n, p):
    edges = [(a, b) for a in range(n) for b in range(a + 1, n)
             if rng.random() < p]
    return mk(edges, nodes=range(n))


# ---------- triangulation and widths, rule-literal ----------


def triangulate(g, order):
    """Process last to first, connecting all earlier neighbors pairwise."""
    pos = {v: i for i, v in enumerate(order)}
    ig = copy_g(g)
    fill = set()
    for i in range(len(order) - 1, -1, -1):
        x = order[i]
        earlier = [u for u in ig[x] if pos[u] < i]
        for a, b in itertools.combinations(earlier, 2):
            if b not in ig[a]:
                ig[a].add(b)
                ig[b].add(a)
                fill.add(frozenset((a, b)))
    return ig, fill


def width_of(g, order):
    pos = {v: i for i, v in enumerate(order)}
    return max(sum(1 for u in g[x] if pos[u] < pos[x]) for x in order)


def induced_width(g, order):
    ig, _ = triangulate(g, order)
    return width_of(ig, order)


def treewidth_by_permutations(g):
    nodes = sorted(g)
    return min(induced_width(g, list(p))
               for p in itertools.permutations(nodes))


def fvs_exact(g):
    """Smallest vertex set whose removal leaves a forest."""
    nodes = sorted(g)
    if is_forest(g):
        return set()
    for k in range(1, len(nodes) + 1):
        for comb in itertools.combinations(nodes, k):
            h = {v: {u for u in nb if u not in comb}
                 for v, nb in g.items() if v not in comb}
            if is_forest(h):
                return set(comb)
    raise AssertionError("unreachable")


def maximal_cliques_brute(g):
    """All maximal cliques by subset enumeration; fine up to ~15 nodes."""
    nodes = sorted(g)
    cliques = []
    for r in range(1, len(nodes) + 1):
        for comb in itertools.combinations(nodes, r):
            if all(b in g[a] for a, b in itertools.combinations(comb, 2)):
                cliques.append(frozenset(comb))
    return [c for c in cliques if not any(c < d for d in cliques)]


# ---------- every ordering a heuristic could produce ----------
# Used to check that a kernel's deterministic pick is one of the legal
# tie choices. All three build the same way the package documents:
# min-degree and min-width place the removed node in the latest free slot.


def all_min_degree_orderings(g, limit=200000):
    out = []

    def rec(h, suffix):
        if not h:
            out.append(list(suffix))
            return
        mind = min(len(nb) for nb in h.values())
        for v in sorted(v for v in h if len(h[v]) == mind):
            h2 = copy_g(h)
            for a, b in itertools.combinations(sorted(h2[v]), 2):
                h2[a].add(b)
                h2[b].add(a)
            for u in h2[v]:
                h2[u].discard(v)
            del h2[v]
            rec(h2, [v] + suffix)
            if len(out) >= limit:
                return

    rec(copy_g(g), [])
    return out


def all_min_width_orderings(g, limit=200000):
    out = []

    def rec(h, suffix):
        if not h:
            out.append(list(suffix))
            return
        mind = min(len(nb) for nb in h.values())
        for v in sorted(v for v in h if len(h[v]) == mind):
            h2 = {w: {u for u in nb if u != v}
                  for w, nb in h.items() if w != v}
            rec(h2, [v] + suffix)
            if len(out) >= limit:
                return

    rec(copy_g(g), [])
    return out


def all_max_cardinality_orderings(g, limit=500000):
    out = []
    nodes = sorted(g)

    def rec(prefix, card):
        if len(prefix) == len(nodes):
            out.append(list(prefix))
            return
        rem = [v for v in nodes if v not in prefix]
        best = max(card[v] for v in rem)
        for v in (v for v in rem if card[v] == best):
            card2 = dict(card)
            for u in g[v]:
                if u not in prefix:
                    card2[u] += 1
            rec(prefix + [v], card2)
            if len(out) >= limit:
                return

    rec([], {v: 0 for v in nodes})
    return out


def all_topological_orderings(parents, limit=500000):
    out = []
    nodes = sorted(parents)

    def rec(prefix, placed):
        if len(prefix) == len(nodes):
            out.append(list(prefix))
            return
        for v in nodes:
            if v not in placed and parents[v] <= placed:
                rec(prefix + [v], placed | {v})
                if len(out) >= limit:
                    return

    rec([], set())
    return out
