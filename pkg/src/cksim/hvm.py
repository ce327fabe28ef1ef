"""Hidden-variable (rank-1 inhomogeneous) random graphs.

Every unordered pair {i, j} is independently present with a kernel
probability of w_i w_j / (mu n): either the truncated product
min(w_i w_j/(mu n), 1) or the exponential form 1 - e^(-w_i w_j/(mu n)).
Edge independence is the structural contrast with the erased
configuration model, whose connections are correlated by the degree
constraints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .degrees import DegreeSequence, sample_degrees
from .graphs import SimpleGraph
from .params import ModelParams
from .triangles import ClusteringSpectrum, log_bin

KERNELS = ("truncated_product", "exponential")
WEIGHT_SOURCES = ("fresh_powerlaw", "reuse_degrees")


@dataclass(frozen=True)
class HvmParams:
    kernel: str
    weights_source: str
    base: ModelParams

    def __post_init__(self):
        if self.kernel not in KERNELS:
            raise ValueError(f"kernel must be one of {KERNELS}, got {self.kernel!r}")
        if self.weights_source not in WEIGHT_SOURCES:
            raise ValueError(
                f"weights_source must be one of {WEIGHT_SOURCES}, "
                f"got {self.weights_source!r}"
            )


def kernel_probability(x, kernel: str):
    """Edge probability for scaled weight product x = w_i w_j / (mu n)."""
    x = np.asarray(x, dtype=np.float64)
    if kernel == "truncated_product":
        out = np.minimum(x, 1.0)
    elif kernel == "exponential":
        out = -np.expm1(-x)
    else:
        raise ValueError(f"unknown kernel {kernel!r}")
    return float(out) if out.ndim == 0 else out


class _UniformBuffer:
    """Blocked uniform draws; cheaper than per-call Generator.random()."""

    def __init__(self, rng, block=1 << 15):
        self._rng = rng
        self._block = block
        self._buf = rng.random(block)
        self._pos = 0

    def next(self) -> float:
        if self._pos == self._block:
            self._buf = self._rng.random(self._block)
            self._pos = 0
        u = self._buf[self._pos]
        self._pos += 1
        return u


def generate_hvm(
    weights: np.ndarray,
    p: HvmParams,
    rng: np.random.Generator,
) -> SimpleGraph:
    """Sample a hidden-variable graph on the given positive weights.

    Weights are sorted descending; for each row the remaining candidates
    are visited by geometric skipping under the truncated-product envelope
    min(w_i w_j / (mu n), 1), which is exact for that kernel and an upper
    bound for the exponential one (accepted with ratio). Hubs with
    envelope 1 are visited exhaustively. Expected cost O(n + edges).
    """
    weights = np.asarray(weights, dtype=np.float64)
    if weights.ndim != 1 or len(weights) == 0 or weights.min() <= 0:
        raise ValueError("weights must be a non-empty 1-d array of positives")
    n = len(weights)
    s = p.base.mu * p.base.n
    order = np.argsort(-weights, kind="stable")
    w = weights[order]
    exponential = p.kernel == "exponential"

    uni = _UniformBuffer(rng)
    us: list[int] = []
    vs: list[int] = []
    log = np.log
    for i in range(n - 1):
        wi = w[i]
        j = i + 1
        q = min(wi * w[j] / s, 1.0)
        while j < n and q > 0.0:
            if q < 1.0:
                r = uni.next()
                j += int(log(1.0 - r) // log(1.0 - q))
            if j < n:
                x = wi * w[j] / s
                accept = True
                prob = -np.expm1(-x) if exponential else min(x, 1.0)
                # prob <= q because w is descending
                if prob < q:
                    accept = uni.next() < prob / q
                if accept:
                    us.append(i)
                    vs.append(j)
                q = min(x, 1.0)
                j += 1
    return SimpleGraph.from_edges(
        n, order[np.array(us, dtype=np.int64)], order[np.array(vs, dtype=np.int64)]
    )


def hvm_weights(
    p: HvmParams,
    rng: np.random.Generator,
    degs: Optional[DegreeSequence] = None,
) -> np.ndarray:
    """Weights for one replica: reuse sampled degrees or draw fresh ones."""
    if p.weights_source == "reuse_degrees":
        if degs is None:
            raise ValueError("reuse_degrees needs a DegreeSequence")
        return degs.degrees.astype(np.float64)
    return sample_degrees(p.base, rng).degrees.astype(np.float64)


def _binned_with_se(spec: ClusteringSpectrum, base: float):
    """Bin a spectrum and attach a binomial-style error bar per bin.

    Each degree-k vertex contributes k(k-1)/2 wedge-closure trials, so
    var(c_k) is estimated as c_k(1-c_k)/(N_k k(k-1)/2) and propagated
    through the N_k-weighted bin average.
    """
    binned = log_bin(spec, base)
    ses = []
    for lo, hi in zip(binned.k_lo, binned.k_hi):
        sel = (spec.ks >= lo) & (spec.ks < hi)
        nk = spec.n_k[sel].astype(np.float64)
        ks = spec.ks[sel].astype(np.float64)
        ck = spec.c_k[sel]
        trials = nk * ks * (ks - 1.0) / 2.0
        var_ck = ck * (1.0 - ck) / trials
        wsum = nk.sum()
        ses.append(float(np.sqrt(((nk / wsum) ** 2 * var_ck).sum())))
    return binned, np.array(ses)


@dataclass(frozen=True)
class SpectrumRatioRow:
    k_lo: float
    k_hi: float
    mean_k: float
    c_ref: float
    c_other: float
    ratio: float
    std_err: float
    n_ref: int
    n_other: int


@dataclass(frozen=True)
class SpectrumComparison:
    rows: list
    omitted_ref_zero: int
    omitted_other_zero: int
    omitted_missing: int


def compare_spectra(
    ecm_spec: ClusteringSpectrum,
    hvm_spec: ClusteringSpectrum,
    base: float = 1.3,
) -> SpectrumComparison:
    """Binned ratio of ECM c(k) to HVM c(k) with propagated errors.

    Bins present in only one spectrum, or with a zero on either side, are
    omitted and counted.
    """
    if ecm_spec.n != hvm_spec.n:
        raise ValueError("spectra come from different graph sizes")
    b_ecm, se_ecm = _binned_with_se(ecm_spec, base)
    b_hvm, se_hvm = _binned_with_se(hvm_spec, base)
    hvm_by_lo = {lo: i for i, lo in enumerate(b_hvm.k_lo)}

    rows = []
    ref_zero = other_zero = missing = 0
    seen = set()
    for i, lo in enumerate(b_ecm.k_lo):
        j = hvm_by_lo.get(lo)
        seen.add(lo)
        if j is None:
            missing += 1
            continue
        a, b = b_ecm.mean_c[i], b_hvm.mean_c[j]
        if a == 0.0:
            ref_zero += 1
            continue
        if b == 0.0:
            other_zero += 1
            continue
        ratio = a / b
        se = ratio * np.sqrt((se_ecm[i] / a) ** 2 + (se_hvm[j] / b) ** 2)
        rows.append(SpectrumRatioRow(
            k_lo=float(lo), k_hi=float(b_ecm.k_hi[i]),
            mean_k=float(b_ecm.mean_k[i]),
            c_ref=float(a), c_other=float(b),
            ratio=float(ratio), std_err=float(se),
            n_ref=int(b_ecm.weight[i]), n_other=int(b_hvm.weight[j]),
        ))
    missing += sum(1 for lo in b_hvm.k_lo if lo not in seen)
    return SpectrumComparison(
        rows=rows,
        omitted_ref_zero=ref_zero,
        omitted_other_zero=other_zero,
        omitted_missing=missing,
    )
