"""Kernel backend selection: compiled extension if available, numpy otherwise.

Both backends return the same canonical triangle list. Set CKSIM_KERNEL to
"numpy" or "compiled" to force a backend (the benchmark does this).
"""

import os

import numpy as np

from . import _pure

try:
    from . import _fast
except ImportError:
    _fast = None

BACKEND = "compiled" if _fast is not None else "numpy"


def available_backends():
    return ("numpy", "compiled") if _fast is not None else ("numpy",)


def _resolve(backend):
    choice = backend or os.environ.get("CKSIM_KERNEL") or BACKEND
    if choice == "compiled":
        if _fast is None:
            raise RuntimeError("compiled kernel requested but not built")
        return _fast
    if choice == "numpy":
        return _pure
    raise ValueError(f"unknown kernel backend {choice!r}")


def _canonicalize(t0, t1, t2):
    # sort corners within each triangle, then the list lexicographically,
    # so output is identical across backends
    tri = np.sort(np.stack([t0, t1, t2]), axis=0)
    order = np.lexsort((tri[2], tri[1], tri[0]))
    return tri[0][order], tri[1][order], tri[2][order]


def triangle_corners(indptr, indices, backend=None):
    """Distinct triangles of a CSR simple graph as three corner arrays.

    Corners are sorted within each triangle and the triangles are in
    lexicographic order.
    """
    impl = _resolve(backend)
    t0, t1, t2 = impl.triangle_corners(
        np.ascontiguousarray(indptr, dtype=np.int64),
        np.ascontiguousarray(indices, dtype=np.int64),
    )
    return _canonicalize(t0, t1, t2)
