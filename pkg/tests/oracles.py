"""Independent brute-force oracles for the test suite.

Everything here is written for clarity over speed and stays independent
of the implementation paths it checks: O(n^3) triple loops for triangle
counts, direct series summation for zeta, stub-list enumeration for tiny
matchings.
"""

from itertools import combinations, permutations

import numpy as np


def zeta_series(s: float, terms: int = 2_000_000) -> float:
    """Direct series sum with an integral tail correction."""
    k = np.arange(1, terms + 1, dtype=np.float64)
    head = float(np.sum(k**-s))
    tail = (terms + 0.5) ** (1.0 - s) / (s - 1.0)
    return head + tail


def brute_triangles_per_vertex(g) -> np.ndarray:
    """O(n^3) per-vertex triangle counts from the adjacency predicate."""
    per = np.zeros(g.n, dtype=np.int64)
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if not g.has_edge(i, j):
                continue
            for k in range(j + 1, g.n):
                if g.has_edge(i, k) and g.has_edge(j, k):
                    per[i] += 1
                    per[j] += 1
                    per[k] += 1
    return per


def brute_spectrum(g) -> dict:
    """Degree -> (N_k, delta_k, c_k) computed from the brute-force counts."""
    per = brute_triangles_per_vertex(g)
    deg = g.erased_degrees
    out = {}
    for k in sorted(set(int(d) for d in deg)):
        if k < 2:
            continue
        idx = np.flatnonzero(deg == k)
        n_k = len(idx)
        delta_k = int(per[idx].sum())
        out[k] = (n_k, delta_k, 2.0 * delta_k / (n_k * k * (k - 1)))
    return out


def brute_global_clustering(g) -> float:
    per = brute_triangles_per_vertex(g)
    t = int(per.sum()) // 3
    deg = g.erased_degrees
    wedges = int((deg * (deg - 1)).sum())
    return 6.0 * t / wedges


def brute_edge_perspective(mg) -> int:
    """Sum of multiplicity products over all distinct vertex triples."""
    mult = {}
    for i, j, m in zip(mg.pair_i, mg.pair_j, mg.pair_mult):
        mult[(int(i), int(j))] = int(m)
    total = 0
    for i, j, k in combinations(range(mg.n), 3):
        total += (
            mult.get((i, j), 0) * mult.get((j, k), 0) * mult.get((i, k), 0)
        )
    return total


def enumerate_matchings(degrees):
    """All distinct perfect matchings of the stub list, as multisets of pairs.

    Returns a list of (matching, weight) where matching is a frozenset-able
    canonical tuple of vertex pairs (loops included) and weight counts how
    many stub-level matchings map onto it. Only usable for tiny sequences.
    """
    stubs = []
    for v, d in enumerate(degrees):
        stubs.extend([v] * d)
    seen = {}
    # enumerate matchings by fixing the partner of the smallest free stub
    def rec(free, acc):
        if not free:
            key = tuple(sorted(acc))
            seen[key] = seen.get(key, 0) + 1
            return
        first, rest = free[0], free[1:]
        for idx in range(len(rest)):
            pair = tuple(sorted((stubs[first], stubs[rest[idx]])))
            rec(rest[:idx] + rest[idx + 1:], acc + [pair])

    rec(list(range(len(stubs))), [])
    return sorted(seen.items())


def random_simple_graph(rng, n_max=50):
    """A small random simple graph (Erdos-Renyi flavored) for oracle tests."""
    from cksim.graphs import SimpleGraph

    n = int(rng.integers(4, n_max + 1))
    p = rng.uniform(0.05, 0.5)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = rng.random(len(pairs)) < p
    chosen = [pq for pq, keep in zip(pairs, mask) if keep]
    if chosen:
        u = np.array([a for a, _ in chosen])
        v = np.array([b for _, b in chosen])
    else:
        u = v = np.empty(0, dtype=np.int64)
    return SimpleGraph.from_edges(n, u, v)
