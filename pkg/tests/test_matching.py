import numpy as np
import pytest

from cksim.degrees import DegreeSequence
from cksim.matching import pair_half_edges
from cksim.params import ModelParams
from cksim.rng import replica_stream
from cksim.degrees import sample_degrees

from oracles import enumerate_matchings


def _seq(*degrees):
    return DegreeSequence.from_raw(np.array(degrees, dtype=np.int64))


def test_two_degree_one_vertices_always_joined():
    degs = _seq(1, 1)
    for r in range(10):
        mg = pair_half_edges(degs, replica_stream(42, r))
        assert mg.multiplicity(0, 1) == 1
        assert mg.total_self_loops == 0


def test_single_vertex_degree_two_self_loop():
    degs = _seq(2)
    mg = pair_half_edges(degs, replica_stream(0, 0))
    assert mg.self_loop_count(0) == 1
    assert mg.total_edge_multiplicity == 0


def test_degrees_three_one_forced_outcome():
    # all 3 stub matchings of (3,1) give one self-loop at 0 plus edge {0,1}
    outcomes = enumerate_matchings([3, 1])
    assert len(outcomes) == 1
    assert outcomes[0][0] == ((0, 0), (0, 1))
    for r in range(20):
        mg = pair_half_edges(_seq(3, 1), replica_stream(7, r))
        assert mg.self_loop_count(0) == 1
        assert mg.multiplicity(0, 1) == 1


def test_rejects_odd_sum():
    degs = DegreeSequence(
        degrees=np.array([1, 1, 1]), parity_fixed=False, l_n=3, d_max=1
    )
    with pytest.raises(ValueError):
        pair_half_edges(degs, replica_stream(0, 0))


def test_matching_conservation_random_sequences():
    p = ModelParams(tau=2.3, n=800, seed=13)
    for r in range(5):
        rng = replica_stream(p.seed, r)
        degs = sample_degrees(p, rng, table_size=10**4)
        mg = pair_half_edges(degs, rng)
        assert np.array_equal(mg.multigraph_degrees(), degs.degrees)
        # every half-edge matched exactly once
        assert mg.total_edge_multiplicity + mg.total_self_loops == degs.l_n // 2


def test_matching_determinism():
    p = ModelParams(tau=2.5, n=500, seed=21)
    degs = sample_degrees(p, replica_stream(p.seed, 0), table_size=10**4)
    a = pair_half_edges(degs, replica_stream(p.seed, 5))
    b = pair_half_edges(degs, replica_stream(p.seed, 5))
    assert np.array_equal(a.pair_keys, b.pair_keys)
    assert np.array_equal(a.pair_mult, b.pair_mult)
    assert np.array_equal(a.loop_vertex, b.loop_vertex)


def test_matching_uniformity_four_singletons():
    # degrees (1,1,1,1): the three matchings {01,23}, {02,13}, {03,12}
    # must each appear with frequency 1/3 within 3 standard errors
    degs = _seq(1, 1, 1, 1)
    trials = 6000
    counts = {}
    for r in range(trials):
        mg = pair_half_edges(degs, replica_stream(1234, r))
        key = tuple(sorted(zip(mg.pair_i.tolist(), mg.pair_j.tolist())))
        counts[key] = counts.get(key, 0) + 1
    assert len(counts) == 3
    se = np.sqrt((1 / 3) * (2 / 3) / trials)
    for key, cnt in counts.items():
        assert abs(cnt / trials - 1 / 3) <= 3 * se, (key, cnt / trials)
