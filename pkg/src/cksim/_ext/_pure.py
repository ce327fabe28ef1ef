"""Numpy fallback for the triangle enumeration kernel.

Edges are oriented from the lower (degree, id) endpoint to the higher one,
which turns the graph into a DAG where every triangle has exactly one
vertex with two out-edges. Enumerating the out-neighbor pairs of each
vertex and testing them against the edge set therefore visits each
triangle exactly once.
"""

import numpy as np

# cap on materialized wedges per batch; keeps peak memory bounded
_WEDGE_BATCH = 1 << 22


def triangle_corners(indptr, indices):
    n = len(indptr) - 1
    deg = np.diff(indptr)
    src = np.repeat(np.arange(n, dtype=np.int64), deg)
    dst = indices

    keep = (deg[src] < deg[dst]) | ((deg[src] == deg[dst]) & (src < dst))
    osrc = src[keep]
    odst = dst[keep]
    outdeg = np.bincount(osrc, minlength=n)
    optr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(outdeg, out=optr[1:])

    # sorted key array of all undirected edges, for closed-wedge membership
    emask = src < dst
    ekeys = src[emask] * np.int64(n) + dst[emask]

    out_a, out_b, out_c = [], [], []
    for d in np.unique(outdeg):
        if d < 2:
            continue
        rows = np.flatnonzero(outdeg == d).astype(np.int64)
        pi, pj = np.triu_indices(d, k=1)
        pairs_per_row = len(pi)
        rows_per_batch = max(1, _WEDGE_BATCH // pairs_per_row)
        for start in range(0, len(rows), rows_per_batch):
            batch = rows[start:start + rows_per_batch]
            block = odst[optr[batch][:, None] + np.arange(d)]
            x = block[:, pi].ravel()
            y = block[:, pj].ravel()
            key = x * np.int64(n) + y
            pos = np.searchsorted(ekeys, key)
            pos_c = np.minimum(pos, len(ekeys) - 1)
            closed = (pos < len(ekeys)) & (ekeys[pos_c] == key)
            if closed.any():
                out_a.append(np.repeat(batch, pairs_per_row)[closed])
                out_b.append(x[closed])
                out_c.append(y[closed])

    if not out_a:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy(), empty.copy()
    return (np.concatenate(out_a), np.concatenate(out_b), np.concatenate(out_c))
