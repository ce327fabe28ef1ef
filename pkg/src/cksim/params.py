"""Model parameters and the constants derived from the degree law.

The degree law is the pure Zipf distribution P(D = k) = k^(-tau) / zeta(tau)
on k >= 1, which pins the normalization c_norm = 1/zeta(tau) and the mean
mu = zeta(tau - 1)/zeta(tau) in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import gamma as _gamma
from scipy.special import zeta as _zeta


def gamma_tail_constant(tau: float) -> float:
    """Return -Gamma(2 - tau) for tau in (2, 3).

    Evaluated as Gamma(3 - tau)/(tau - 2) so the gamma function is only
    called at arguments in (0, 1), away from its poles.
    """
    if not 2.0 < tau < 3.0:
        raise ValueError(f"tau must lie in (2, 3), got {tau}")
    return _gamma(3.0 - tau) / (tau - 2.0)


@dataclass(frozen=True)
class ModelParams:
    """Degree exponent, graph size, master seed, and derived constants.

    c_norm, mu and a_const are computed from tau; passing them explicitly
    is not supported.
    """

    tau: float
    n: int
    seed: int = 0
    c_norm: float = None  # type: ignore[assignment]
    mu: float = None      # type: ignore[assignment]
    a_const: float = None  # type: ignore[assignment]

    def __post_init__(self):
        if not 2.0 < self.tau < 3.0:
            raise ValueError(f"tau must lie in (2, 3), got {self.tau}")
        if not (isinstance(self.n, (int,)) and self.n >= 1):
            raise ValueError(f"n must be a positive integer, got {self.n}")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        z_tau = float(_zeta(self.tau, 1))
        z_tau1 = float(_zeta(self.tau - 1.0, 1))
        object.__setattr__(self, "c_norm", 1.0 / z_tau)
        object.__setattr__(self, "mu", z_tau1 / z_tau)
        object.__setattr__(self, "a_const", gamma_tail_constant(self.tau))

    def with_seed(self, seed: int) -> "ModelParams":
        return ModelParams(tau=self.tau, n=self.n, seed=seed)


def degree_range(k: int, n: int, tau: float, a_ii: float = 1.0) -> str:
    """Classify degree k into scaling range "I", "II" or "III".

    Boundaries: k below a_ii * n^((tau-2)/(tau-1)) is range I, k up to and
    including floor(sqrt(n)) is range II, larger k is range III.
    """
    if k < a_ii * n ** ((tau - 2.0) / (tau - 1.0)):
        return "I"
    if k <= math.isqrt(n):
        return "II"
    return "III"
