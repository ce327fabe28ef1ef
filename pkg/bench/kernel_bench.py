#!/usr/bin/env python3
"""Benchmark the compiled triangle kernel against the numpy fallback.

Builds erased configuration graphs at a few sizes and times
triangle enumeration under both backends, checking they agree.
"""

import argparse
import time

import numpy as np

from cksim._ext import available_backends, triangle_corners
from cksim.degrees import sample_degrees
from cksim.graphs import erase
from cksim.matching import pair_half_edges
from cksim.params import ModelParams
from cksim.rng import replica_stream


def build_graph(n, tau, seed):
    params = ModelParams(tau=tau, n=n, seed=seed)
    rng = replica_stream(seed, 0)
    degs = sample_degrees(params, rng)
    return erase(pair_half_edges(degs, rng))


def time_backend(g, backend, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = triangle_corners(g.indptr, g.indices, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tau", type=float, default=2.5)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--sizes", type=int, nargs="+",
                    default=[10_000, 100_000, 1_000_000])
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    header = f"{'n':>9} {'edges':>10} {'triangles':>10}"
    for b in backends:
        header += f" {b + ' [s]':>14}"
    if len(backends) == 2:
        header += f" {'speedup':>9}"
    print(header)

    for n in args.sizes:
        g = build_graph(n, args.tau, args.seed)
        times = {}
        counts = {}
        for b in backends:
            times[b], corners = time_backend(g, b, args.repeats)
            counts[b] = len(corners[0])
        assert len(set(counts.values())) == 1, f"backend mismatch at n={n}: {counts}"
        line = f"{n:>9} {g.edge_count:>10} {counts[backends[0]]:>10}"
        for b in backends:
            line += f" {times[b]:>14.4f}"
        if len(backends) == 2:
            line += f" {times['numpy'] / times['compiled']:>8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
