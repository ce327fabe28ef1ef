"""Closed-form predictions for the clustering spectrum and their numerics.

The spectrum c(k) has three scaling ranges separated by n^((tau-2)/(tau-1))
and sqrt(n). Inside each range c(k) is a constant times a scale function;
around sqrt(n) a two-dimensional integral in B = k/sqrt(n) interpolates
smoothly between the ranges. All logarithms are natural; the integrals are
stated on (0, inf) and evaluated in log coordinates where the integrands
decay exponentially, with closed-form bounds for the truncated tails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import ModelParams, degree_range, gamma_tail_constant
from .quadrature import QuadratureSpec, integrate_1d, integrate_2d

# splice factor: use the crossover integral for k within this factor of sqrt(n)
CROSSOVER_SPAN = 4.0

constant_A = gamma_tail_constant


def one_minus_exp_moment(
    tau: float,
    lo: float = 0.0,
    hi: float = math.inf,
    qspec: QuadratureSpec = QuadratureSpec(),
) -> tuple[float, float]:
    """Integral of t^(1-tau) (1 - e^(-t)) over [lo, hi], with error estimate.

    On (0, inf) this equals -Gamma(2 - tau). The head below a small cutoff
    is summed by Taylor expansion, the far tail is integrable in closed
    form up to an e^(-T) remainder, and the middle runs through adaptive
    quadrature in log coordinates, where the integrand is smooth.
    """
    if not 2.0 < tau < 3.0:
        raise ValueError(f"tau must lie in (2, 3), got {tau}")
    if not 0.0 <= lo < hi:
        raise ValueError("need 0 <= lo < hi")

    value = 0.0
    err = 0.0

    cut_lo = lo
    if lo == 0.0:
        cut_lo = min(1e-6, hi / 2.0)
        a = cut_lo
        value += (
            a ** (3.0 - tau) / (3.0 - tau)
            - a ** (4.0 - tau) / (2.0 * (4.0 - tau))
            + a ** (5.0 - tau) / (6.0 * (5.0 - tau))
        )
        err += a ** (6.0 - tau) / (24.0 * (6.0 - tau))

    cut_hi = hi
    if math.isinf(hi):
        cut_hi = qspec.truncation_bound or 48.0
        value += cut_hi ** (2.0 - tau) / (tau - 2.0)
        err += cut_hi ** (1.0 - tau) * math.exp(-cut_hi)

    def integrand(x):
        return np.exp((2.0 - tau) * x) * -np.expm1(-np.exp(x))

    mid, mid_err = integrate_1d(
        integrand, math.log(cut_lo), math.log(cut_hi),
        abs_tol=qspec.abs_tol, rel_tol=qspec.rel_tol,
    )
    return value + mid, err + mid_err


def clustering_scale(k: int, n: int, params: ModelParams) -> float:
    """Order of magnitude of c(k) in the range that k falls in."""
    if k < 2 or n < 2:
        raise ValueError("need k >= 2 and n >= 2")
    tau = params.tau
    rng_id = degree_range(k, n, tau)
    if rng_id == "I":
        return n ** (2.0 - tau) * math.log(n)
    if rng_id == "II":
        if n <= k * k:
            raise ValueError(f"range II scale needs n > k^2, got n={n}, k={k}")
        return n ** (2.0 - tau) * math.log(n / k**2)
    return n ** (5.0 - 2.0 * tau) * k ** (2.0 * tau - 6.0)


def _range_constant(rng_id: str, params: ModelParams) -> float:
    tau, c, mu, a = params.tau, params.c_norm, params.mu, params.a_const
    if rng_id == "I":
        return (3.0 - tau) / (tau - 1.0) * mu**-tau * c * c * a
    if rng_id == "II":
        return mu**-tau * c * c * a
    return mu ** (3.0 - 2.0 * tau) * c * c * a * a


def clustering_limit(k: int, n: int, params: ModelParams) -> float:
    """Limiting c(k) prediction: scale function times range constant."""
    return clustering_scale(k, n, params) * _range_constant(
        degree_range(k, n, params.tau), params
    )


def _crossover_tail_bounds(tau: float, mu: float, B: float):
    # Closed-form bounds on the mass outside the log-coordinate box,
    # obtained from 1 - e^(-x) <= min(1, x) and piecewise power integrals.
    c1 = 1.0 / (3.0 - tau) + 1.0 / (tau - 2.0)

    def upper(x_hi):
        return (
            B * mu ** (tau - 2.0) * c1 * math.exp(-x_hi)
            + B ** (tau - 1.0) * math.exp((1.0 - tau) * x_hi) / (tau - 1.0) ** 2
        )

    def lower(x_lo):
        return (
            B ** (tau - 1.0) * mu * c1 * math.exp((3.0 - tau) * x_lo) / (3.0 - tau)
            + B * mu ** (tau - 1.0) * math.exp(x_lo) / (tau - 1.0)
        )

    return upper, lower


def crossover_scaling(
    B: float,
    params: ModelParams,
    qspec: QuadratureSpec = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-7),
) -> tuple[float, float]:
    """Predicted c(k)/n^(2-tau) at k = B*sqrt(n), with error estimate.

    Evaluates C^2 mu^(2-2tau) B^(-2) times the double integral of
    (t1 t2)^(-tau) (1-e^(-B t1)) (1-e^(-B t2)) (1-e^(-mu t1 t2)) over the
    positive quadrant.
    """
    if B <= 0:
        raise ValueError(f"B must be positive, got {B}")
    tau, mu, c, a = params.tau, params.mu, params.c_norm, params.a_const

    # crude magnitude to convert the relative tolerance into an absolute one
    if B >= 1.0:
        crude = mu * B ** (2.0 * tau - 4.0) * a * a
    else:
        crude = mu ** (tau - 2.0) * a * B * B * max(math.log(1.0 / B**2), 1.0)
    target = max(qspec.abs_tol, qspec.rel_tol * crude)

    up_bound, lo_bound = _crossover_tail_bounds(tau, mu, B)
    t_rule = qspec.truncation_bound or max(40.0 / B, 40.0, 40.0 / mu)
    x_hi = max(math.log(t_rule), math.log(B / mu) + 1.0, 5.0)
    while 2.0 * up_bound(x_hi) > target / 4.0:
        x_hi += 2.0
    x_lo = min(-x_hi, math.log(B / mu) - 1.0)
    while 2.0 * lo_bound(x_lo) > target / 4.0:
        x_lo -= 2.0

    def integrand(x, y):
        s = x + y
        return (
            np.exp((1.0 - tau) * s)
            * -np.expm1(-B * np.exp(x))
            * -np.expm1(-B * np.exp(y))
            * -np.expm1(-mu * np.exp(s))
        )

    val, q_err = integrate_2d(
        integrand, x_lo, x_hi, x_lo, x_hi,
        abs_tol=target / 2.0, rel_tol=0.0,
    )
    tail = 2.0 * up_bound(x_hi) + 2.0 * lo_bound(x_lo)
    pref = c * c * mu ** (2.0 - 2.0 * tau) / (B * B)
    return pref * val, pref * (q_err + tail)


def ck_crossover(
    B: float,
    params: ModelParams,
    qspec: QuadratureSpec = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-7),
) -> float:
    return crossover_scaling(B, params, qspec)[0]


@dataclass(frozen=True)
class TheoryCurve:
    """Predicted c(k) over a degree grid; points are (k, c, range_id)."""

    points: list
    params: ModelParams

    def as_arrays(self):
        ks = np.array([p[0] for p in self.points], dtype=np.int64)
        cs = np.array([p[1] for p in self.points])
        ids = [p[2] for p in self.points]
        return ks, cs, ids


def theory_curve(
    n: int,
    k_grid,
    params: ModelParams,
    qspec: QuadratureSpec = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-7),
) -> TheoryCurve:
    """Evaluate the prediction on a degree grid.

    Degrees within a factor CROSSOVER_SPAN of sqrt(n) use the crossover
    integral (the range formulas are off near the boundary); the range
    limits are used elsewhere.
    """
    k_max = n ** (1.0 / (params.tau - 1.0))
    sqrt_n = math.sqrt(n)
    points = []
    for k in k_grid:
        k = int(k)
        if k < 2 or k > k_max:
            raise ValueError(f"grid degree {k} outside [2, n^(1/(tau-1))={k_max:.1f}]")
        rng_id = degree_range(k, n, params.tau)
        if sqrt_n / CROSSOVER_SPAN <= k <= sqrt_n * CROSSOVER_SPAN:
            c = ck_crossover(k / sqrt_n, params, qspec) * n ** (2.0 - params.tau)
        else:
            c = clustering_limit(k, n, params)
        points.append((k, c, rng_id))
    return TheoryCurve(points=points, params=params)
