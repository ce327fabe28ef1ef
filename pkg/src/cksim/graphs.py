"""Simple graphs in CSR form and the erasure of a multigraph."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .degrees import DegreeSequence
from .matching import MultiGraph


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph with per-vertex sorted neighbor lists.

    degree_sequence, when present, is the original sampled sequence the
    graph was generated from (erased degrees may be smaller).
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    degree_sequence: Optional[DegreeSequence] = None

    def __post_init__(self):
        self.indptr.flags.writeable = False
        self.indices.flags.writeable = False

    @property
    def erased_degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        pos = np.searchsorted(row, v)
        return bool(pos < len(row) and row[pos] == v)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Unique undirected edges as arrays (u, v) with u < v."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.erased_degrees)
        mask = src < self.indices
        return src[mask], self.indices[mask]

    @classmethod
    def from_edges(
        cls,
        n: int,
        u: np.ndarray,
        v: np.ndarray,
        degree_sequence: Optional[DegreeSequence] = None,
    ) -> "SimpleGraph":
        """Build from undirected edges; duplicates and loops are dropped."""
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        keep = u != v
        lo = np.minimum(u[keep], v[keep])
        hi = np.maximum(u[keep], v[keep])
        keys = np.unique(lo * np.int64(n) + hi)
        lo, hi = keys // n, keys % n

        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        deg = np.bincount(src, minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        return cls(n=n, indptr=indptr, indices=dst[order],
                   degree_sequence=degree_sequence)


def erase(mg: MultiGraph) -> SimpleGraph:
    """Merge multi-edges and drop self-loops."""
    return SimpleGraph.from_edges(
        mg.n, mg.pair_i, mg.pair_j, degree_sequence=mg.degrees
    )
