"""Power-law degree sequences by inverse-CDF sampling.

Sampling uses a cumulative table of the Zipf law up to a cutoff and a
continuous Pareto inversion for the (astronomically rare) draws beyond it,
so each draw costs one binary search and the result is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import zeta as _zeta

from .params import ModelParams

DEFAULT_TABLE_SIZE = 10**7
_TABLE_CHUNK = 10**6


@dataclass(frozen=True)
class DegreeSequence:
    """Sampled degrees with parity bookkeeping.

    degrees has the parity fix already applied; l_n is its (even) sum and
    d_max its maximum. If parity_fixed is set, exactly the last entry was
    incremented by exactly 1.
    """

    degrees: np.ndarray
    parity_fixed: bool
    l_n: int
    d_max: int

    @classmethod
    def from_raw(cls, raw: np.ndarray) -> "DegreeSequence":
        degrees = np.asarray(raw, dtype=np.int64).copy()
        if degrees.size == 0 or degrees.min() < 1:
            raise ValueError("degrees must be a non-empty array of positive integers")
        parity_fixed = bool(degrees.sum() % 2 == 1)
        if parity_fixed:
            degrees[-1] += 1
        degrees.flags.writeable = False
        return cls(
            degrees=degrees,
            parity_fixed=parity_fixed,
            l_n=int(degrees.sum()),
            d_max=int(degrees.max()),
        )

    @property
    def n(self) -> int:
        return len(self.degrees)


@lru_cache(maxsize=4)
def _zipf_cdf_table(tau: float, size: int) -> np.ndarray:
    """cdf[k-1] = P(D <= k) for the Zipf law, k = 1..size."""
    z = float(_zeta(tau, 1))
    cdf = np.empty(size, dtype=np.float64)
    total = 0.0
    for start in range(0, size, _TABLE_CHUNK):
        stop = min(start + _TABLE_CHUNK, size)
        k = np.arange(start + 1, stop + 1, dtype=np.float64)
        np.cumsum(k**-tau / z, out=cdf[start:stop])
        cdf[start:stop] += total
        total = cdf[stop - 1]
    cdf.flags.writeable = False
    return cdf


def _pareto_tail(u: np.ndarray, cutoff: int, cdf_top: float, tau: float) -> np.ndarray:
    # Conditional on D > cutoff, invert the continuous Pareto survival
    # (x/cutoff)^(1-tau); exact only to table resolution.
    v = (u - cdf_top) / (1.0 - cdf_top)
    x = cutoff * (1.0 - v) ** (-1.0 / (tau - 1.0))
    return np.maximum(np.floor(x).astype(np.int64), cutoff + 1)


def sample_degrees(
    params: ModelParams,
    rng: np.random.Generator,
    table_size: int = DEFAULT_TABLE_SIZE,
) -> DegreeSequence:
    """Draw n i.i.d. Zipf(tau) degrees and apply the parity fix."""
    cdf = _zipf_cdf_table(params.tau, table_size)
    u = rng.random(params.n)
    draws = np.searchsorted(cdf, u, side="right").astype(np.int64) + 1
    tail = draws > table_size
    if tail.any():
        draws[tail] = _pareto_tail(u[tail], table_size, cdf[-1], params.tau)
    return DegreeSequence.from_raw(draws)


def degree_sum_typical(degs: DegreeSequence, params: ModelParams) -> bool:
    """Whether the degree sum sits within n^(1/(tau-1)) of its mean mu*n.

    Emitted as a per-replica diagnostic; the asymptotic formulas are
    derived on this event.
    """
    bound = params.n ** (1.0 / (params.tau - 1.0))
    return bool(abs(degs.l_n - params.mu * params.n) <= bound)
