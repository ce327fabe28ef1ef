import numpy as np
import pytest

import cksim._ext as ext
from cksim._ext import _pure, available_backends, triangle_corners
from cksim.degrees import sample_degrees
from cksim.graphs import erase
from cksim.matching import pair_half_edges
from cksim.params import ModelParams
from cksim.rng import replica_stream

from oracles import random_simple_graph

HAVE_COMPILED = "compiled" in available_backends()


def _ecm_graph(n, tau, seed):
    p = ModelParams(tau=tau, n=n, seed=seed)
    rng = replica_stream(seed, 0)
    degs = sample_degrees(p, rng, table_size=10**5)
    return erase(pair_half_edges(degs, rng))


def test_corner_canonical_order(k4):
    a, b, c = triangle_corners(k4.indptr, k4.indices)
    assert (a < b).all() and (b < c).all()
    tri = list(zip(a.tolist(), b.tolist(), c.tolist()))
    assert tri == sorted(tri)
    assert len(tri) == 4


@pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernel not built")
def test_backends_agree_on_random_graphs():
    rng = np.random.default_rng(2024)
    for _ in range(25):
        g = random_simple_graph(rng)
        res_np = triangle_corners(g.indptr, g.indices, backend="numpy")
        res_cy = triangle_corners(g.indptr, g.indices, backend="compiled")
        for x, y in zip(res_np, res_cy):
            assert np.array_equal(x, y)


@pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernel not built")
def test_backends_agree_on_ecm():
    g = _ecm_graph(5000, 2.5, 77)
    res_np = triangle_corners(g.indptr, g.indices, backend="numpy")
    res_cy = triangle_corners(g.indptr, g.indices, backend="compiled")
    for x, y in zip(res_np, res_cy):
        assert np.array_equal(x, y)


def test_numpy_chunking_path():
    # tiny batch cap exercises the chunked wedge enumeration
    g = _ecm_graph(2000, 2.3, 5)
    old = _pure._WEDGE_BATCH
    try:
        _pure._WEDGE_BATCH = 64
        small = triangle_corners(g.indptr, g.indices, backend="numpy")
    finally:
        _pure._WEDGE_BATCH = old
    full = triangle_corners(g.indptr, g.indices, backend="numpy")
    for x, y in zip(small, full):
        assert np.array_equal(x, y)


def test_triangle_free_graph(path3):
    a, b, c = triangle_corners(path3.indptr, path3.indices)
    assert len(a) == 0


def test_unknown_backend_rejected(k4):
    with pytest.raises(ValueError):
        triangle_corners(k4.indptr, k4.indices, backend="gpu")


def test_env_var_override(k4, monkeypatch):
    monkeypatch.setenv("CKSIM_KERNEL", "numpy")
    a, _, _ = triangle_corners(k4.indptr, k4.indices)
    assert len(a) == 4
