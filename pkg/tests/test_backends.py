"""The two kernel backends must agree bit for bit."""

import numpy as np
import pytest

from spa import _backend

np_k = _backend.load("numpy")
try:
    nb_k = _backend.load("numba")
except ImportError:  # pragma: no cover - numba is an install-time choice
    nb_k = None

needs_numba = pytest.mark.skipif(nb_k is None, reason="numba not installed")

KERNELS = ("triangulate", "width_sequence", "order_min_degree",
           "order_min_width", "order_max_cardinality", "cutset_greedy")


@pytest.fixture(autouse=True)
def restore_backend():
    before = _backend.active()
    yield
    _backend.select(before)


def random_case(rng, n, p):
    adj = np.zeros((n, n), dtype=np.uint8)
    upper = np.triu(rng.random((n, n)) < p, k=1)
    adj[upper] = 1
    adj |= adj.T
    perm = rng.permutation(n).astype(np.int64)
    return adj, perm


def outputs(mod, name, adj, perm):
    result = getattr(mod, name)(adj, perm)
    return result if isinstance(result, tuple) else (result,)


@needs_numba
@pytest.mark.parametrize("name", KERNELS)
def test_backends_agree_on_random_graphs(name):
    rng = np.random.default_rng(20260814)
    cases = [(0, 0.0), (1, 0.0), (2, 1.0)]
    cases += [(n, p) for n in (5, 9, 17, 30) for p in (0.1, 0.3, 0.7)]
    for n, p in cases:
        adj, perm = random_case(rng, n, p)
        got_np = outputs(np_k, name, adj, perm)
        got_nb = outputs(nb_k, name, adj, perm)
        assert len(got_np) == len(got_nb)
        for a, b in zip(got_np, got_nb):
            assert a.dtype == b.dtype
            assert np.array_equal(a, b), f"{name} diverged at n={n}, p={p}"


@needs_numba
def test_backends_agree_on_a_circuit(c432):
    _, _, moral = c432
    adj = moral.adj
    prio = np.arange(moral.n, dtype=np.int64)
    order = np_k.order_min_degree(adj, prio)
    assert np.array_equal(order, nb_k.order_min_degree(adj, prio))
    fill_np, w_np = np_k.triangulate(adj, order)
    fill_nb, w_nb = nb_k.triangulate(adj, order)
    assert np.array_equal(fill_np, fill_nb)
    assert np.array_equal(w_np, w_nb)
    assert np.array_equal(np_k.cutset_greedy(adj, prio),
                          nb_k.cutset_greedy(adj, prio))


class TestSelection:
    def test_select_numpy(self):
        assert _backend.select("numpy") == "numpy"
        assert _backend.active() == "numpy"
        assert _backend.kernels() is np_k

    @needs_numba
    def test_select_numba(self):
        assert _backend.select("numba") == "numba"
        assert _backend.kernels() is nb_k

    def test_select_rejects_unknown(self):
        with pytest.raises(ValueError, match="SPA_BACKEND"):
            _backend.select("fortran")
        with pytest.raises(ValueError, match="backend"):
            _backend.load("fortran")

    def test_env_is_honored(self, monkeypatch):
        monkeypatch.setenv("SPA_BACKEND", "numpy")
        assert _backend.select() == "numpy"
        monkeypatch.setenv("SPA_BACKEND", "cuda")
        with pytest.raises(ValueError):
            _backend.select()

    def test_load_does_not_switch(self):
        _backend.select("numpy")
        _backend.load("numpy")
        if nb_k is not None:
            _backend.load("numba")
        assert _backend.active() == "numpy"

    def test_results_identical_through_the_api(self, c17, monkeypatch):
        """End to end: the public graph functions give the same answer on
        either backend."""
        from spa.graph import OrderedGraph, induced_width
        from spa.ordering import min_degree
        _, _, moral = c17
        answers = []
        for name in ("numpy", "numba") if nb_k is not None else ("numpy",):
            _backend.select(name)
            d = min_degree(moral)
            answers.append((d.permutation,
                            induced_width(OrderedGraph(moral, d.permutation))))
        assert len(set(answers)) == 1
