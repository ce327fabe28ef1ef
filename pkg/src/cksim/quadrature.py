"""Adaptive Gauss-Kronrod quadrature, vectorized over panels.

All panels pending refinement are evaluated in one batched call to the
(vectorized) integrand, and the panels carrying the largest error
estimates are bisected until the summed estimate meets the tolerance.
The 2D rule is the tensor product of the 1D rule on rectangles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

# 15-point Kronrod nodes on [-1, 1] and their weights; the embedded
# 7-point Gauss rule uses every second node.
_XGK_HALF = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
])
_WGK_HALF = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG_HALF = np.array([
    0.0,
    0.129484966168869693270611432679082,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.417959183673469387755102040816327,
])

XGK = np.concatenate([-_XGK_HALF[:-1], _XGK_HALF[::-1]])
WGK = np.concatenate([_WGK_HALF[:-1], _WGK_HALF[::-1]])
WG = np.concatenate([_WG_HALF[:-1], _WG_HALF[::-1]])


class ToleranceNotMet(RuntimeError):
    """Raised when the panel budget runs out; carries the best estimate."""

    def __init__(self, value: float, error: float, message: str = ""):
        self.value = value
        self.error = error
        super().__init__(
            message or f"quadrature tolerance not met: value={value!r}, "
                       f"error estimate={error!r}"
        )


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and truncation policy for improper integrals.

    truncation_bound, when set, overrides the automatic cutoff for
    infinite domains; the discarded tail must stay below abs_tol, which
    the callers bound via 1 - e^(-x) <= min(1, x).
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-8
    truncation_bound: Optional[float] = None

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol < 0:
            raise ValueError("tolerances must be positive")
        if self.truncation_bound is not None and self.truncation_bound <= 0:
            raise ValueError("truncation bound must be positive")


def _scaled_errors(raw: np.ndarray, resasc: np.ndarray) -> np.ndarray:
    # QUADPACK error sharpening: smooth panels get err ~ |K-G|^1.5
    err = raw.copy()
    ok = resasc > 0
    ratio = np.zeros_like(raw)
    ratio[ok] = np.minimum(1.0, (200.0 * raw[ok] / resasc[ok]) ** 1.5)
    err[ok] = resasc[ok] * ratio[ok]
    return err


def _gk_panels_1d(f: Callable, a: np.ndarray, b: np.ndarray):
    mid = 0.5 * (a + b)
    hw = 0.5 * (b - a)
    pts = mid[:, None] + hw[:, None] * XGK[None, :]
    fv = np.asarray(f(pts.ravel()), dtype=np.float64).reshape(pts.shape)
    k = fv @ WGK
    g = fv @ WG
    mean = k * 0.5
    resasc = (np.abs(fv - mean[:, None]) @ WGK) * hw
    raw = np.abs(k - g) * hw
    return k * hw, _scaled_errors(raw, resasc)


def integrate_1d(
    f: Callable,
    a: float,
    b: float,
    abs_tol: float = 1e-12,
    rel_tol: float = 1e-10,
    max_panels: int = 4096,
    min_panels: int = 8,
) -> tuple[float, float]:
    """Adaptive integral of a vectorized function over [a, b].

    Returns (value, error estimate); raises ToleranceNotMet when the
    panel budget is exhausted first.
    """
    edges = np.linspace(a, b, min_panels + 1)
    pa, pb = edges[:-1].copy(), edges[1:].copy()
    vals, errs = _gk_panels_1d(f, pa, pb)
    while True:
        total = vals.sum()
        err = errs.sum()
        target = max(abs_tol, rel_tol * abs(total))
        if err <= target:
            return float(total), float(err)
        if len(pa) >= max_panels:
            raise ToleranceNotMet(float(total), float(err))
        thresh = min(max(target / (2 * len(errs)), errs.max() * 0.01), errs.max())
        split = errs >= thresh
        mid = 0.5 * (pa[split] + pb[split])
        na = np.concatenate([pa[~split], pa[split], mid])
        nb = np.concatenate([pb[~split], mid, pb[split]])
        new_vals, new_errs = _gk_panels_1d(f, na[len(pa[~split]):], nb[len(pb[~split]):])
        vals = np.concatenate([vals[~split], new_vals])
        errs = np.concatenate([errs[~split], new_errs])
        pa, pb = na, nb


def _gk_panels_2d(f: Callable, ax, bx, ay, by):
    midx = 0.5 * (ax + bx)
    hwx = 0.5 * (bx - ax)
    midy = 0.5 * (ay + by)
    hwy = 0.5 * (by - ay)
    xs = midx[:, None] + hwx[:, None] * XGK[None, :]
    ys = midy[:, None] + hwy[:, None] * XGK[None, :]
    gx = np.broadcast_to(xs[:, :, None], (len(ax), 15, 15))
    gy = np.broadcast_to(ys[:, None, :], (len(ax), 15, 15))
    fv = np.asarray(f(gx.ravel(), gy.ravel()), dtype=np.float64).reshape(gx.shape)
    area = hwx * hwy
    k = np.einsum("pij,i,j->p", fv, WGK, WGK)
    g = np.einsum("pij,i,j->p", fv, WG, WG)
    mean = k * 0.25
    resasc = np.einsum("pij,i,j->p", np.abs(fv - mean[:, None, None]), WGK, WGK) * area
    raw = np.abs(k - g) * area
    return k * area, _scaled_errors(raw, resasc)


def integrate_2d(
    f: Callable,
    ax: float,
    bx: float,
    ay: float,
    by: float,
    abs_tol: float = 1e-12,
    rel_tol: float = 1e-8,
    max_panels: int = 60000,
    min_grid: int = 8,
) -> tuple[float, float]:
    """Adaptive integral of a vectorized f(x, y) over a rectangle."""
    ex = np.linspace(ax, bx, min_grid + 1)
    ey = np.linspace(ay, by, min_grid + 1)
    pax, pay = np.meshgrid(ex[:-1], ey[:-1], indexing="ij")
    pbx, pby = np.meshgrid(ex[1:], ey[1:], indexing="ij")
    pax, pbx, pay, pby = (arr.ravel().copy() for arr in (pax, pbx, pay, pby))
    vals, errs = _gk_panels_2d(f, pax, pbx, pay, pby)

    while True:
        total = vals.sum()
        err = errs.sum()
        target = max(abs_tol, rel_tol * abs(total))
        if err <= target:
            return float(total), float(err)
        if len(pax) >= max_panels:
            raise ToleranceNotMet(float(total), float(err))
        thresh = min(max(target / (2 * len(errs)), errs.max() * 0.01), errs.max())
        split = errs >= thresh

        sx, sy = pax[split], pay[split]
        tx, ty = pbx[split], pby[split]
        wider_x = (tx - sx) >= (ty - sy)
        mx = 0.5 * (sx + tx)
        my = 0.5 * (sy + ty)

        # bisect along the wider side of each panel
        h1 = (sx, np.where(wider_x, mx, tx), sy, np.where(wider_x, ty, my))
        h2 = (np.where(wider_x, mx, sx), tx, np.where(wider_x, sy, my), ty)
        nax = np.concatenate([pax[~split], h1[0], h2[0]])
        nbx = np.concatenate([pbx[~split], h1[1], h2[1]])
        nay = np.concatenate([pay[~split], h1[2], h2[2]])
        nby = np.concatenate([pby[~split], h1[3], h2[3]])

        keep = (~split).sum()
        new_vals, new_errs = _gk_panels_2d(
            f, nax[keep:], nbx[keep:], nay[keep:], nby[keep:]
        )
        vals = np.concatenate([vals[~split], new_vals])
        errs = np.concatenate([errs[~split], new_errs])
        pax, pbx, pay, pby = nax, nbx, nay, nby
