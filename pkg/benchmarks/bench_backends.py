"""Time the numba kernels against the numpy fallback on real circuits.

Run:  python benchmarks/bench_backends.py [circuit ...]

Each kernel is timed on the moral graph of the listed circuits (default
c880 and c1355). The first numba call compiles, so every kernel is warmed
once before timing; the table reports best-of-three wall times.
"""

from __future__ import annotations

import sys
import time

import numpy as np

from spa import _backend, build_dag, moralize, parse_netlist
from spa.data import circuit_path

KERNELS = ("order_min_degree", "order_min_width", "order_max_cardinality",
           "cutset_greedy", "triangulate")


def load_moral(name: str):
    path = circuit_path(name)
    circuit = parse_netlist(path.read_text(), "bench", name)
    return moralize(build_dag(circuit))


def time_kernel(mod, kernel: str, adj, order) -> float:
    fn = getattr(mod, kernel)
    args = (adj, order) if kernel == "triangulate" else \
        (adj, np.arange(adj.shape[0], dtype=np.int64))
    fn(*args)  # warm-up (JIT compile and caches)
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv: list[str]) -> int:
    circuits = argv or ["c880", "c1355"]
    mods = {name: _backend.load(name) for name in ("numba", "numpy")}
    print(f"{'circuit':<8} {'kernel':<22} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for name in circuits:
        moral = load_moral(name)
        order = np.asarray(
            mods["numba"].order_min_degree(
                moral.adj, np.arange(moral.n, dtype=np.int64)))
        for kernel in KERNELS:
            times = {b: time_kernel(m, kernel, moral.adj, order)
                     for b, m in mods.items()}
            ratio = times["numpy"] / times["numba"] if times["numba"] else 0.0
            print(f"{name:<8} {kernel:<22} {times['numba']*1e3:>8.2f}ms "
                  f"{times['numpy']*1e3:>8.2f}ms {ratio:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
