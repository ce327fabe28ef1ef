"""Uniform half-edge matching into a configuration multigraph."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .degrees import DegreeSequence


@dataclass(frozen=True)
class MultiGraph:
    """Configuration-model outcome: edge multiplicities plus self-loops.

    Pairs are stored as parallel arrays (pair_i < pair_j) sorted by the
    encoded key pair_i * n + pair_j, which doubles as a lookup index.
    """

    n: int
    pair_i: np.ndarray
    pair_j: np.ndarray
    pair_mult: np.ndarray
    loop_vertex: np.ndarray
    loop_mult: np.ndarray
    degrees: DegreeSequence

    def __post_init__(self):
        for arr in (self.pair_i, self.pair_j, self.pair_mult,
                    self.loop_vertex, self.loop_mult):
            arr.flags.writeable = False

    @property
    def pair_keys(self) -> np.ndarray:
        return self.pair_i * np.int64(self.n) + self.pair_j

    def multiplicity(self, i: int, j: int) -> int:
        """Number of parallel edges between distinct vertices i and j."""
        if i == j:
            raise ValueError("use self_loop_count for loops")
        lo, hi = (i, j) if i < j else (j, i)
        key = lo * self.n + hi
        keys = self.pair_keys
        pos = np.searchsorted(keys, key)
        if pos < len(keys) and keys[pos] == key:
            return int(self.pair_mult[pos])
        return 0

    def self_loop_count(self, v: int) -> int:
        pos = np.searchsorted(self.loop_vertex, v)
        if pos < len(self.loop_vertex) and self.loop_vertex[pos] == v:
            return int(self.loop_mult[pos])
        return 0

    @property
    def total_self_loops(self) -> int:
        return int(self.loop_mult.sum())

    @property
    def total_edge_multiplicity(self) -> int:
        return int(self.pair_mult.sum())

    def multigraph_degrees(self) -> np.ndarray:
        """Per-vertex degree recomputed from the matching (loops count twice)."""
        deg = np.zeros(self.n, dtype=np.int64)
        np.add.at(deg, self.pair_i, self.pair_mult)
        np.add.at(deg, self.pair_j, self.pair_mult)
        np.add.at(deg, self.loop_vertex, 2 * self.loop_mult)
        return deg


def pair_half_edges(degs: DegreeSequence, rng: np.random.Generator) -> MultiGraph:
    """Match all half-edges uniformly at random.

    The stub array is shuffled (Fisher-Yates) and consecutive entries are
    paired, which makes each of the (l_n - 1)!! perfect matchings equally
    likely in O(l_n) time.
    """
    if degs.l_n % 2 != 0:
        raise ValueError("degree sum must be even; apply the parity fix first")
    n = degs.n
    stubs = np.repeat(np.arange(n, dtype=np.int64), degs.degrees)
    rng.shuffle(stubs)
    u = stubs[0::2]
    v = stubs[1::2]

    loops = u == v
    loop_counts = np.bincount(u[loops], minlength=n) if loops.any() else None
    if loop_counts is not None:
        loop_vertex = np.flatnonzero(loop_counts).astype(np.int64)
        loop_mult = loop_counts[loop_vertex].astype(np.int64)
    else:
        loop_vertex = np.empty(0, dtype=np.int64)
        loop_mult = np.empty(0, dtype=np.int64)

    uu, vv = u[~loops], v[~loops]
    lo = np.minimum(uu, vv)
    hi = np.maximum(uu, vv)
    keys, mult = np.unique(lo * np.int64(n) + hi, return_counts=True)
    return MultiGraph(
        n=n,
        pair_i=(keys // n).astype(np.int64),
        pair_j=(keys % n).astype(np.int64),
        pair_mult=mult.astype(np.int64),
        loop_vertex=loop_vertex,
        loop_mult=loop_mult,
        degrees=degs,
    )
