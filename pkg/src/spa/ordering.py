"""Elimination-ordering heuristics: min-degree, min-width, max-cardinality,
and the causal (topological) ordering for DAG inputs.

Ties are broken by a priority vector derived from the configured policy:

  index        position in the netlist/graph node order (the default)
  label        lexicographic comparison of the node names
  random       a seeded permutation; `seed` is required

Lower priority wins every tie, so a fixed policy makes each heuristic fully
deterministic. Triangulation downstream always processes last to first.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass

import numpy as np

from . import _backend
from .graph import UGraph
from .netlist import Dag, StructureError

TIE_BREAKS = ("index", "label", "random")
HEURISTICS = ("min-degree", "min-width", "max-cardinality", "causal")


@dataclass(frozen=True)
class Ordering:
    permutation: tuple[str, ...]
    heuristic: str
    tie_break: str = "index"

    def __post_init__(self):
        object.__setattr__(self, "permutation", tuple(self.permutation))
        if len(set(self.permutation)) != len(self.permutation):
            raise ValueError("ordering contains repeated nodes")

    def __len__(self) -> int:
        return len(self.permutation)

    def position(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.permutation)}

    def to_json(self) -> str:
        payload = {"heuristic": self.heuristic, "tie_break": self.tie_break,
                   "permutation": list(self.permutation)}
        return json.dumps(payload, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Ordering":
        payload = json.loads(text)
        return cls(tuple(payload["permutation"]), payload["heuristic"],
                   payload["tie_break"])


def priorities(nodes, tie_break: str = "index", seed: int | None = None) -> np.ndarray:
    """Priority vector for the tie-break policy: a permutation of range(n),
    lower value preferred."""
    n = len(nodes)
    if tie_break == "index":
        if seed is not None:
            raise ValueError("seed only applies to tie_break='random'")
        return np.arange(n, dtype=np.int64)
    if tie_break == "label":
        if seed is not None:
            raise ValueError("seed only applies to tie_break='random'")
        prio = np.empty(n, dtype=np.int64)
        for rank, i in enumerate(sorted(range(n), key=lambda i: nodes[i])):
            prio[i] = rank
        return prio
    if tie_break == "random":
        if seed is None:
            raise ValueError("tie_break='random' requires a seed")
        rng = np.random.default_rng(seed)
        return rng.permutation(n).astype(np.int64)
    raise ValueError(f"unknown tie-break policy {tie_break!r}")


def _tag(tie_break: str, seed: int | None) -> str:
    return f"random:{seed}" if tie_break == "random" else tie_break


def _greedy(g: UGraph, kernel_name: str, heuristic: str,
            tie_break: str, seed: int | None, flip: bool) -> Ordering:
    if g.n == 0:
        raise ValueError(f"{heuristic} ordering needs a non-empty graph")
    prio = priorities(g.nodes, tie_break, seed)
    kern = getattr(_backend.kernels(), kernel_name)
    picks = kern(g.adj, prio)
    if flip:
        picks = picks[::-1]
    perm = tuple(g.nodes[i] for i in picks)
    return Ordering(perm, heuristic, _tag(tie_break, seed))


def min_degree(g: UGraph, tie_break: str = "index", seed: int | None = None) -> Ordering:
    """Repeatedly take the minimum-degree node, connect its neighbors, and
    remove it. Built last to first: the first node removed lands in the
    latest slot, so downstream triangulation eliminates it first."""
    return _greedy(g, "order_min_degree", "min-degree", tie_break, seed,
                   flip=True)


def min_width(g: UGraph, tie_break: str = "index", seed: int | None = None) -> Ordering:
    """As min-degree, but neighbors are not connected on removal. Also
    built last to first."""
    return _greedy(g, "order_min_width", "min-width", tie_break, seed,
                   flip=True)


def max_cardinality(g: UGraph, tie_break: str = "index", seed: int | None = None) -> Ordering:
    """Number nodes first to last, each time taking the node adjacent to the
    most already-numbered nodes."""
    return _greedy(g, "order_max_cardinality", "max-cardinality", tie_break,
                   seed, flip=False)


def causal(dag: Dag, tie_break: str = "index", seed: int | None = None) -> Ordering:
    """A topological order of the DAG (parents before children), choosing
    among ready nodes by the tie-break policy."""
    if dag.n == 0:
        raise ValueError("causal ordering needs a non-empty DAG")
    prio = priorities(dag.nodes, tie_break, seed)
    index = {v: i for i, v in enumerate(dag.nodes)}
    pending = [0] * dag.n
    children: list[list[int]] = [[] for _ in range(dag.n)]
    for p, c in dag.edges:
        pending[index[c]] += 1
        children[index[p]].append(index[c])
    ready = [(int(prio[i]), i) for i in range(dag.n) if pending[i] == 0]
    heapq.heapify(ready)
    out: list[str] = []
    while ready:
        _, i = heapq.heappop(ready)
        out.append(dag.nodes[i])
        for c in children[i]:
            pending[c] -= 1
            if pending[c] == 0:
                heapq.heappush(ready, (int(prio[c]), c))
    if len(out) != dag.n:
        raise StructureError(
            f"{dag.name}: not a DAG, topological sort impossible")
    return Ordering(tuple(out), "causal", _tag(tie_break, seed))
