"""Triangle counting and the degree-resolved clustering spectrum.

Two counting conventions coexist on a multigraph. The vertex perspective
counts connected triples of distinct vertices once, which equals the
triangle count of the erased graph. The edge perspective weighs each
triple by the product of its edge multiplicities, so one hub triple with
parallel edges can contribute many triangles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._ext import triangle_corners
from .graphs import SimpleGraph, erase
from .matching import MultiGraph


def triangle_list(g: SimpleGraph, backend=None):
    """Corner arrays (a, b, c) of all distinct triangles, a < b < c."""
    return triangle_corners(g.indptr, g.indices, backend=backend)


def triangles_per_vertex(g: SimpleGraph, corners=None) -> np.ndarray:
    """Number of distinct triangles containing each vertex."""
    if corners is None:
        corners = triangle_list(g)
    return np.bincount(np.concatenate(corners), minlength=g.n).astype(np.int64)


def count_triangles(g: SimpleGraph, corners=None) -> int:
    """Total number of distinct triangles."""
    if corners is None:
        corners = triangle_list(g)
    return len(corners[0])


def count_triangles_edge_perspective(
    mg: MultiGraph, erased: Optional[SimpleGraph] = None, corners=None
) -> int:
    """Sum of multiplicity products over all connected vertex triples.

    Self-loops never contribute because triples range over distinct
    vertices.
    """
    if erased is None:
        erased = erase(mg)
    if corners is None:
        corners = triangle_list(erased)
    a, b, c = corners
    if len(a) == 0:
        return 0
    keys = mg.pair_keys
    n = np.int64(mg.n)
    total = np.int64(0)
    prod = np.ones(len(a), dtype=np.int64)
    for lo, hi in ((a, b), (a, c), (b, c)):
        pos = np.searchsorted(keys, lo * n + hi)
        prod *= mg.pair_mult[pos]
    return int(prod.sum())


@dataclass(frozen=True)
class ClusteringSpectrum:
    """Per-degree triple (N_k, triangle incidences, c(k)).

    Only degrees k >= 2 with at least one vertex appear. c(k) is
    2 * delta_k / (N_k * k * (k-1)); a triangle with two degree-k corners
    contributes twice to delta_k.
    """

    ks: np.ndarray
    n_k: np.ndarray
    delta_k: np.ndarray
    c_k: np.ndarray
    n: int
    degree_basis: str

    def __post_init__(self):
        for arr in (self.ks, self.n_k, self.delta_k, self.c_k):
            arr.flags.writeable = False

    def c(self, k: int) -> Optional[float]:
        pos = np.searchsorted(self.ks, k)
        if pos < len(self.ks) and self.ks[pos] == k:
            return float(self.c_k[pos])
        return None

    def as_dict(self) -> dict:
        return {
            int(k): (int(nk), int(dk), float(ck))
            for k, nk, dk, ck in zip(self.ks, self.n_k, self.delta_k, self.c_k)
        }

    @property
    def d_max(self) -> int:
        return int(self.ks[-1]) if len(self.ks) else 0


def pool_spectra(spectra) -> ClusteringSpectrum:
    """Merge spectra by summing vertex and triangle counts per degree."""
    spectra = list(spectra)
    if not spectra:
        raise ValueError("need at least one spectrum")
    basis = spectra[0].degree_basis
    if any(s.degree_basis != basis for s in spectra):
        raise ValueError("cannot pool spectra with different degree bases")
    counts: dict[int, list[int]] = {}
    for s in spectra:
        for k, nk, dk in zip(s.ks, s.n_k, s.delta_k):
            acc = counts.setdefault(int(k), [0, 0])
            acc[0] += int(nk)
            acc[1] += int(dk)
    ks = np.array(sorted(counts), dtype=np.int64)
    n_k = np.array([counts[int(k)][0] for k in ks], dtype=np.int64)
    delta_k = np.array([counts[int(k)][1] for k in ks], dtype=np.int64)
    c_k = 2.0 * delta_k / (n_k * ks * (ks - 1.0))
    return ClusteringSpectrum(
        ks=ks, n_k=n_k, delta_k=delta_k, c_k=c_k,
        n=spectra[0].n, degree_basis=basis,
    )


def clustering_spectrum(
    g: SimpleGraph, basis: str = "erased", corners=None
) -> ClusteringSpectrum:
    """Group vertices by degree and compute c(k) for each group."""
    if basis == "erased":
        deg = g.erased_degrees
    elif basis == "original":
        if g.degree_sequence is None:
            raise ValueError("basis='original' needs an attached degree sequence")
        deg = g.degree_sequence.degrees
    else:
        raise ValueError(f"unknown degree basis {basis!r}")

    per_vertex = triangles_per_vertex(g, corners=corners)
    n_counts = np.bincount(deg)
    d_counts = np.bincount(deg, weights=per_vertex).astype(np.int64)
    ks = np.flatnonzero(n_counts).astype(np.int64)
    ks = ks[ks >= 2]
    n_k = n_counts[ks]
    delta_k = d_counts[ks]
    c_k = 2.0 * delta_k / (n_k * ks * (ks - 1.0))
    return ClusteringSpectrum(
        ks=ks, n_k=n_k.astype(np.int64), delta_k=delta_k, c_k=c_k,
        n=g.n, degree_basis=basis,
    )


def global_clustering(g: SimpleGraph, corners=None) -> float:
    """Closed wedges over all wedges: 6T / sum_v deg(v)(deg(v)-1)."""
    deg = g.erased_degrees
    wedges = int((deg * (deg - 1)).sum())
    if wedges == 0:
        raise ValueError("graph has no wedge; global clustering undefined")
    return 6.0 * count_triangles(g, corners=corners) / wedges


@dataclass(frozen=True)
class BinnedSpectrum:
    """Geometric binning of a spectrum for display and slope fits.

    mean_k and mean_c are N_k-weighted averages within each bin; weight
    carries the total vertex count of the bin.
    """

    k_lo: np.ndarray
    k_hi: np.ndarray
    mean_k: np.ndarray
    mean_c: np.ndarray
    weight: np.ndarray
    base: float

    def __len__(self):
        return len(self.mean_k)


def log_bin(spec: ClusteringSpectrum, base: float = 1.3) -> BinnedSpectrum:
    """Bin the spectrum into [2*base^m, 2*base^(m+1)) windows."""
    if base <= 1.0:
        raise ValueError("bin base must exceed 1")
    empty = np.empty(0)
    if len(spec.ks) == 0:
        z = np.empty(0, dtype=np.int64)
        return BinnedSpectrum(empty, empty, empty, empty, z, base)

    d_max = spec.d_max
    edges = [2.0]
    while edges[-1] <= d_max:
        edges.append(edges[-1] * base)
    edges = np.array(edges)
    which = np.digitize(spec.ks, edges) - 1

    k_lo, k_hi, mean_k, mean_c, weight = [], [], [], [], []
    for b in np.unique(which):
        sel = which == b
        w = spec.n_k[sel].astype(np.float64)
        tot = w.sum()
        k_lo.append(edges[b])
        k_hi.append(edges[b + 1])
        mean_k.append(float((w * spec.ks[sel]).sum() / tot))
        mean_c.append(float((w * spec.c_k[sel]).sum() / tot))
        weight.append(int(tot))
    return BinnedSpectrum(
        k_lo=np.array(k_lo), k_hi=np.array(k_hi),
        mean_k=np.array(mean_k), mean_c=np.array(mean_c),
        weight=np.array(weight, dtype=np.int64), base=base,
    )


def fit_slope(binned: BinnedSpectrum, k_lo: float, k_hi: float) -> tuple[float, float]:
    """Least-squares slope of log mean_c against log mean_k over a k range."""
    sel = (binned.mean_k >= k_lo) & (binned.mean_k <= k_hi) & (binned.mean_c > 0)
    if sel.sum() < 3:
        raise ValueError(
            f"need at least 3 nonempty bins in [{k_lo}, {k_hi}], have {int(sel.sum())}"
        )
    x = np.log(binned.mean_k[sel])
    y = np.log(binned.mean_c[sel])
    m = len(x)
    xbar = x.mean()
    sxx = ((x - xbar) ** 2).sum()
    slope = ((x - xbar) * y).sum() / sxx
    intercept = y.mean() - slope * xbar
    resid = y - slope * x - intercept
    if m > 2:
        var = (resid**2).sum() / (m - 2)
        std_err = float(np.sqrt(var / sxx))
    else:
        std_err = 0.0
    return float(slope), std_err
