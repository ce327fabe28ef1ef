import numpy as np

from cksim.degrees import DegreeSequence, sample_degrees
from cksim.graphs import SimpleGraph, erase
from cksim.matching import MultiGraph, pair_half_edges
from cksim.params import ModelParams
from cksim.rng import replica_stream


def _mg(n, pairs, loops, degrees):
    keys = sorted(pairs)
    return MultiGraph(
        n=n,
        pair_i=np.array([k[0] for k in keys], dtype=np.int64),
        pair_j=np.array([k[1] for k in keys], dtype=np.int64),
        pair_mult=np.array([pairs[k] for k in keys], dtype=np.int64),
        loop_vertex=np.array(sorted(loops), dtype=np.int64),
        loop_mult=np.array([loops[v] for v in sorted(loops)], dtype=np.int64),
        degrees=DegreeSequence.from_raw(np.array(degrees, dtype=np.int64)),
    )


def test_erase_merges_and_drops():
    # self-loop at 0 and a doubled edge {0,1} collapse to one edge
    mg = _mg(2, {(0, 1): 2}, {0: 1}, [6, 2])
    g = erase(mg)
    assert g.edge_count == 1
    assert g.has_edge(0, 1) and g.has_edge(1, 0)
    assert list(g.erased_degrees) == [1, 1]


def test_erase_identity_on_simple_outcome():
    mg = _mg(3, {(0, 1): 1, (1, 2): 1}, {}, [1, 2, 1])
    g = erase(mg)
    assert g.edge_count == 2
    assert np.array_equal(g.erased_degrees, mg.degrees.degrees)


def test_erase_monotone_on_random_graphs():
    p = ModelParams(tau=2.3, n=2000, seed=31)
    for r in range(5):
        rng = replica_stream(p.seed, r)
        degs = sample_degrees(p, rng, table_size=10**5)
        g = erase(pair_half_edges(degs, rng))
        assert (g.erased_degrees <= degs.degrees).all()
        assert np.array_equal(g.erased_degrees, np.diff(g.indptr))


def test_csr_rows_sorted_unique_symmetric():
    u = np.array([3, 0, 0, 1, 0, 2])
    v = np.array([1, 1, 2, 2, 1, 3])  # includes duplicate {0,1}
    g = SimpleGraph.from_edges(4, u, v)
    for w in range(4):
        row = g.neighbors(w)
        assert (np.diff(row) > 0).all()
        for x in row:
            assert g.has_edge(int(x), w)
    assert g.edge_count == 5
    assert not g.has_edge(0, 3)


def test_from_edges_drops_self_loops():
    g = SimpleGraph.from_edges(3, np.array([0, 1]), np.array([0, 2]))
    assert g.edge_count == 1
    assert not g.has_edge(0, 0)


def test_edge_arrays_roundtrip():
    u = np.array([0, 1, 2])
    v = np.array([1, 2, 0])
    g = SimpleGraph.from_edges(3, u, v)
    eu, ev = g.edge_arrays()
    assert (eu < ev).all()
    assert set(zip(eu.tolist(), ev.tolist())) == {(0, 1), (0, 2), (1, 2)}
