"""Contributing-degree windows and triangle decomposition by window.

For a focal degree k, most triangles through a degree-k vertex have their
other two degrees (d_u, d_v) in a narrow window: product d_u*d_v of order
mu*n when k is small, and both degrees of order mu*n/k when k exceeds
sqrt(n). The window predicate is parameterized by epsilon and tested on
the ORIGINAL sampled degrees, while the focal vertex is selected by its
erased degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .degrees import DegreeSequence
from .graphs import SimpleGraph
from .params import ModelParams, degree_range
from .triangles import triangle_list


@dataclass(frozen=True)
class RegimeWindow:
    """Epsilon-window on degree pairs for focal degree k in a size-n graph."""

    k: int
    n: int
    mu: float
    tau: float
    epsilon: float
    a_ii: float = 1.0
    range_id: str = field(init=False)

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie strictly in (0, 1), got {self.epsilon}")
        object.__setattr__(
            self, "range_id", degree_range(self.k, self.n, self.tau, self.a_ii)
        )

    def contains(self, d_u, d_v):
        """Window membership for degree pair(s); accepts scalars or arrays."""
        d_u = np.asarray(d_u, dtype=np.float64)
        d_v = np.asarray(d_v, dtype=np.float64)
        mu_n = self.mu * self.n
        if self.range_id == "III":
            lo = self.epsilon * mu_n / self.k
            hi = mu_n / (self.k * self.epsilon)
            ok = (d_u >= lo) & (d_u <= hi) & (d_v >= lo) & (d_v <= hi)
        else:
            prod = d_u * d_v
            ok = (prod >= self.epsilon * mu_n) & (prod <= mu_n / self.epsilon)
            if self.range_id == "II":
                cap = mu_n / (self.k * self.epsilon)
                ok &= (d_u < cap) & (d_v < cap)
        return bool(ok) if ok.ndim == 0 else ok


def window_contains(w: RegimeWindow, d_u: int, d_v: int) -> bool:
    return w.contains(d_u, d_v)


@dataclass(frozen=True)
class TriangleDecomposition:
    """Split of the degree-k triangle incidences into window and complement."""

    delta_k_total: int
    delta_k_window: int

    @property
    def fraction(self) -> Optional[float]:
        if self.delta_k_total == 0:
            return None
        return self.delta_k_window / self.delta_k_total


def decompose_triangles(
    g: SimpleGraph,
    degs: DegreeSequence,
    k: int,
    w: RegimeWindow,
    corners=None,
) -> TriangleDecomposition:
    """Count triangle incidences at erased degree k inside/outside a window.

    Every vertex of erased degree k contributes one incidence per triangle
    through it; the incidence falls in the window when the other two
    corners' original degrees satisfy the window predicate.
    """
    if g.n != degs.n:
        raise ValueError("graph and degree sequence sizes differ")
    if corners is None:
        corners = triangle_list(g)
    er = g.erased_degrees
    d = degs.degrees
    total = 0
    inside = 0
    a, b, c = corners
    for focal, o1, o2 in ((a, b, c), (b, a, c), (c, a, b)):
        sel = er[focal] == k
        if not sel.any():
            continue
        total += int(sel.sum())
        inside += int(np.count_nonzero(w.contains(d[o1[sel]], d[o2[sel]])))
    return TriangleDecomposition(delta_k_total=total, delta_k_window=inside)


def decompose_by_degree(
    g: SimpleGraph,
    degs: DegreeSequence,
    k_values,
    epsilons,
    mu: float,
    tau: float,
    corners=None,
):
    """Window decomposition for many focal degrees and epsilons in one pass.

    Returns (k_values, totals, window) where totals[i] counts triangle
    incidences at erased degree k_values[i] and window[i, j] those whose
    other two original degrees fall in the epsilon[j]-window of k_values[i].
    """
    k_values = np.asarray(sorted(set(int(k) for k in k_values)), dtype=np.int64)
    epsilons = list(epsilons)
    if corners is None:
        corners = triangle_list(g)
    er = g.erased_degrees
    d = degs.degrees.astype(np.float64)
    n = g.n
    mu_n = mu * n
    sqrt_n = math.isqrt(n)
    range_i_cut = n ** ((tau - 2.0) / (tau - 1.0))

    totals = np.zeros(len(k_values), dtype=np.int64)
    window = np.zeros((len(k_values), len(epsilons)), dtype=np.int64)
    a, b, c = corners
    for focal, o1, o2 in ((a, b, c), (b, a, c), (c, a, b)):
        kf = er[focal]
        pos = np.searchsorted(k_values, kf)
        pos_c = np.minimum(pos, len(k_values) - 1)
        sel = (pos < len(k_values)) & (k_values[pos_c] == kf)
        if not sel.any():
            continue
        idx = pos_c[sel]
        kf = kf[sel].astype(np.float64)
        du = d[o1[sel]]
        dv = d[o2[sel]]
        np.add.at(totals, idx, 1)
        is_iii = kf > sqrt_n
        is_i = kf < range_i_cut
        prod = du * dv
        for j, eps in enumerate(epsilons):
            cap = mu_n / (kf * eps)
            in_prod = (prod >= eps * mu_n) & (prod <= mu_n / eps)
            lo_iii = eps * mu_n / kf
            ok = np.where(
                is_iii,
                (du >= lo_iii) & (du <= cap) & (dv >= lo_iii) & (dv <= cap),
                in_prod & (is_i | ((du < cap) & (dv < cap))),
            )
            np.add.at(window[:, j], idx[ok], 1)
    return k_values, totals, window


def triangle_probability_estimate(d_w, d_u, d_v, l_n):
    """Approximate probability that a triangle spans three given degrees.

    g = (1-e^(-d_w d_u/l_n)) (1-e^(-d_w d_v/l_n)) (1-e^(-d_u d_v/l_n)).
    """
    if l_n <= 0:
        raise ValueError("l_n must be positive")
    d_w = np.asarray(d_w, dtype=np.float64)
    d_u = np.asarray(d_u, dtype=np.float64)
    d_v = np.asarray(d_v, dtype=np.float64)
    out = (
        -np.expm1(-d_w * d_u / l_n)
        * -np.expm1(-d_w * d_v / l_n)
        * -np.expm1(-d_u * d_v / l_n)
    )
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ConnectionCell:
    """Pooled empirical vs model connection probability for one degree cell."""

    du_lo: float
    du_hi: float
    dv_lo: float
    dv_hi: float
    pairs: int
    edges: int
    mean_du: float
    mean_dv: float
    empirical_p: float
    model_p: float
    std_err: float


def _interval_rel(a, b):
    if a == b:
        return "same"
    if a[1] <= b[0] or b[1] <= a[0]:
        return "disjoint"
    return "overlap"


def connection_cell_counts(g: SimpleGraph, degs: DegreeSequence, degree_cells):
    """Single-replica tallies behind empirical_connection_probability.

    Returns per-cell arrays (pairs, edges, model_mass, sum_du, cnt_du,
    sum_dv, cnt_dv) that pool across replicas by plain addition.
    model_mass is pairs * (1 - e^(-mean_du * mean_dv / l_n)) with this
    replica's cell means and degree sum, so the model pools exactly like
    the empirical frequency does.
    """
    for iu, iv in degree_cells:
        if _interval_rel(tuple(iu), tuple(iv)) == "overlap":
            raise ValueError(f"cell intervals {iu} and {iv} partially overlap")
    ncells = len(degree_cells)
    pairs = np.zeros(ncells, dtype=np.int64)
    edges = np.zeros(ncells, dtype=np.int64)
    model_mass = np.zeros(ncells)
    sum_du = np.zeros(ncells)
    cnt_du = np.zeros(ncells, dtype=np.int64)
    sum_dv = np.zeros(ncells)
    cnt_dv = np.zeros(ncells, dtype=np.int64)

    d = degs.degrees.astype(np.float64)
    eu, ev = g.edge_arrays()
    for idx, (iu, iv) in enumerate(degree_cells):
        in_u = (d >= iu[0]) & (d < iu[1])
        in_v = (d >= iv[0]) & (d < iv[1])
        m_u = int(in_u.sum())
        m_v = int(in_v.sum())
        if tuple(iu) == tuple(iv):
            n_pairs = m_u * (m_u - 1) // 2
            hit = in_u[eu] & in_u[ev]
        else:
            n_pairs = m_u * m_v
            hit = (in_u[eu] & in_v[ev]) | (in_v[eu] & in_u[ev])
        if n_pairs:
            mean_du = d[in_u].mean()
            mean_dv = d[in_v].mean()
            model_mass[idx] += n_pairs * -np.expm1(-mean_du * mean_dv / degs.l_n)
        pairs[idx] += n_pairs
        edges[idx] += int(hit.sum())
        sum_du[idx] += d[in_u].sum()
        cnt_du[idx] += m_u
        sum_dv[idx] += d[in_v].sum()
        cnt_dv[idx] += m_v
    return pairs, edges, model_mass, sum_du, cnt_du, sum_dv, cnt_dv


def connection_rows(degree_cells, pairs, edges, model_mass, sum_du, cnt_du,
                    sum_dv, cnt_dv) -> list[ConnectionCell]:
    """Turn pooled tallies into result rows; cells with no pair are omitted."""
    rows = []
    for idx, (iu, iv) in enumerate(degree_cells):
        if pairs[idx] == 0:
            continue
        p_hat = edges[idx] / pairs[idx]
        rows.append(ConnectionCell(
            du_lo=float(iu[0]), du_hi=float(iu[1]),
            dv_lo=float(iv[0]), dv_hi=float(iv[1]),
            pairs=int(pairs[idx]), edges=int(edges[idx]),
            mean_du=float(sum_du[idx] / cnt_du[idx]),
            mean_dv=float(sum_dv[idx] / cnt_dv[idx]),
            empirical_p=float(p_hat),
            model_p=float(model_mass[idx] / pairs[idx]),
            std_err=float(np.sqrt(p_hat * (1.0 - p_hat) / pairs[idx])),
        ))
    return rows


def empirical_connection_probability(
    replicas: Sequence[tuple[SimpleGraph, DegreeSequence]],
    degree_cells: Sequence[tuple[tuple[float, float], tuple[float, float]]],
) -> list[ConnectionCell]:
    """Pool adjacency frequencies over replicas for each degree-cell pair.

    Cells are half-open intervals [lo, hi) on the original degrees; each
    pair of intervals must be identical or disjoint. The model column is
    1 - e^(-mean_du * mean_dv / l_n) evaluated per replica at that
    replica's cell means and degree sum, pooled with pair weights.
    """
    if not replicas:
        raise ValueError("need at least one replica")
    acc = None
    for g, degs in replicas:
        out = connection_cell_counts(g, degs, degree_cells)
        if acc is None:
            acc = [np.array(a) for a in out]
        else:
            for slot, arr in zip(acc, out):
                slot += arr
    return connection_rows(degree_cells, *acc)


def partition_cells(edges: Sequence[float]):
    """All interval pairs (unordered) from a partition given by bin edges."""
    ivs = [(edges[i], edges[i + 1]) for i in range(len(edges) - 1)]
    return [(ivs[i], ivs[j]) for i in range(len(ivs)) for j in range(i, len(ivs))]


@dataclass(frozen=True)
class ExponentBand:
    """Degree exponents alpha (d = n^alpha) contributing at focal k = n^beta.

    For beta below 1/2 the band is a product constraint alpha + alpha' = 1
    with alpha in [alpha_lo, alpha_hi]; above 1/2 it collapses to the point
    alpha = 1 - beta. Epsilon-dependent constants are dropped.
    """

    kind: str  # "product" or "point"
    alpha_lo: float
    alpha_hi: float


def contributing_alpha_band(beta: float, tau: float, epsilon: float) -> ExponentBand:
    if not 2.0 < tau < 3.0:
        raise ValueError(f"tau must lie in (2, 3), got {tau}")
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie strictly in (0, 1), got {epsilon}")
    hi_exp = 1.0 / (tau - 1.0)
    if not 0.0 <= beta < hi_exp:
        raise ValueError(f"beta must lie in [0, {hi_exp}), got {beta}")
    if beta > 0.5:
        a = 1.0 - beta
        return ExponentBand(kind="point", alpha_lo=a, alpha_hi=a)
    lo = max((tau - 2.0) / (tau - 1.0), beta)
    hi = min(hi_exp, 1.0 - beta)
    return ExponentBand(kind="product", alpha_lo=lo, alpha_hi=hi)
