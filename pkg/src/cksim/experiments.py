"""Reproducible experiment runner: replicas, pooling, CSV + manifest output.

Every experiment is a pure function of (config, seed): replica r draws
from the stream derived from (seed, r), results are merged in replica
order, and floats are written with repr so reruns are byte-identical.
The JSON manifest records the config echo, per-replica diagnostics, and
a content hash per emitted CSV.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import asymptotics
from ._ext import BACKEND
from .degrees import degree_sum_typical, sample_degrees
from .graphs import erase
from .hvm import HvmParams, compare_spectra, generate_hvm, hvm_weights
from .ingest import ingest_edge_list
from .matching import pair_half_edges
from .params import ModelParams, degree_range
from .quadrature import QuadratureSpec
from .regimes import (
    connection_cell_counts,
    connection_rows,
    decompose_by_degree,
    partition_cells,
)
from .rng import replica_stream
from .triangles import (
    ClusteringSpectrum,
    clustering_spectrum,
    count_triangles,
    count_triangles_edge_perspective,
    pool_spectra,
    triangle_list,
)

SCHEMA_VERSION = 1

EXPERIMENTS = (
    "spectrum", "regimes", "crossover", "theory",
    "compare_hvm", "connection_check", "ingest",
)

_CSV_HEADERS = {
    "spectrum": "k,N_k,delta_k,c_k,c_k_over_f,range_id,n,tau,replica",
    "regimes": "k,epsilon,delta_k_total,delta_k_window,fraction,replica",
    "crossover": "B,ck_over_n2mt_theory,ck_over_n2mt_rangeII,ck_over_n2mt_rangeIII",
    "theory": "k,c_theory,f_scale,range_id,n,tau",
    "compare_hvm": "k_lo,k_hi,mean_k,c_ecm,c_hvm,ratio,std_err,n_ecm,n_hvm",
    "connection_check": "du_lo,du_hi,dv_lo,dv_hi,pairs,empirical_p,model_p,std_err",
}


class ConfigError(ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    tau: float = 2.5
    n: int = 10_000
    seed: int = 0
    replicas: int = 1
    epsilon_sweep: tuple = (0.5, 0.2, 0.1, 0.05)
    bin_base: float = 1.3
    output_path: str = "."
    emit_raw: bool = True
    workers: int = 1
    k_list: tuple = None          # regimes focal degrees (default: band at sqrt(n))
    k_grid: tuple = None          # theory degree grid
    b_grid: tuple = None          # crossover B grid
    input_path: str = None        # ingest source file
    hvm_kernel: str = "exponential"
    hvm_weights: str = "reuse_degrees"
    strict_ingest: bool = True

    def validate(self):
        problems = []
        if self.experiment not in EXPERIMENTS:
            problems.append(f"unknown experiment {self.experiment!r}")
        if not 2.0 < self.tau < 3.0:
            problems.append(f"tau must lie in (2, 3), got {self.tau}")
        if self.n < 1:
            problems.append(f"n must be positive, got {self.n}")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            problems.append(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.replicas < 1:
            problems.append(f"replicas must be >= 1, got {self.replicas}")
        if any(not 0.0 < e < 1.0 for e in self.epsilon_sweep):
            problems.append(f"epsilon values must lie in (0, 1), got {self.epsilon_sweep}")
        if self.bin_base <= 1.0:
            problems.append(f"bin base must exceed 1, got {self.bin_base}")
        if self.workers < 1:
            problems.append(f"workers must be >= 1, got {self.workers}")
        if self.experiment == "ingest" and not self.input_path:
            problems.append("ingest needs an input path")
        if self.hvm_kernel not in ("exponential", "truncated_product"):
            problems.append(f"unknown hvm kernel {self.hvm_kernel!r}")
        if self.hvm_weights not in ("reuse_degrees", "fresh_powerlaw"):
            problems.append(f"unknown hvm weights source {self.hvm_weights!r}")
        if problems:
            raise ConfigError(problems)
        return self

    def params(self) -> ModelParams:
        return ModelParams(tau=self.tau, n=self.n, seed=self.seed)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError([f"unknown config keys: {sorted(unknown)}"])
        data = dict(data)
        for key in ("epsilon_sweep", "k_list", "k_grid", "b_grid"):
            if data.get(key) is not None:
                data[key] = tuple(data[key])
        return cls(**data)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _csv_bytes(header: str, rows) -> bytes:
    lines = [header]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return ("\n".join(lines) + "\n").encode("utf-8")


@dataclass
class RunResult:
    output_dir: Path
    files: dict = field(default_factory=dict)   # name -> path
    manifest: dict = field(default_factory=dict)

    def path(self, name: str) -> Path:
        return self.files[name]


# ---------------------------------------------------------------------------
# per-replica payloads (top-level functions so worker processes can pickle)

def _generate(cfg: ExperimentConfig, replica: int):
    params = cfg.params()
    rng = replica_stream(cfg.seed, replica)
    degs = sample_degrees(params, rng)
    mg = pair_half_edges(degs, rng)
    g = erase(mg)
    diag = {
        "replica": replica,
        "l_n": degs.l_n,
        "d_max": degs.d_max,
        "parity_fixed": degs.parity_fixed,
        "degree_sum_typical": degree_sum_typical(degs, params),
    }
    return params, rng, degs, mg, g, diag


def _spectrum_payload(args):
    cfg, replica = args
    _, _, _, _, g, diag = _generate(cfg, replica)
    spec = clustering_spectrum(g)
    return replica, diag, (spec.ks, spec.n_k, spec.delta_k)


def _regimes_payload(args):
    cfg, replica = args
    params, _, degs, _, g, diag = _generate(cfg, replica)
    if cfg.k_list is not None:
        k_values = cfg.k_list
    else:
        root = math.sqrt(cfg.n)
        k_values = range(max(2, int(0.8 * root)), int(1.2 * root) + 1)
    ks, totals, window = decompose_by_degree(
        g, degs, k_values, cfg.epsilon_sweep, params.mu, params.tau
    )
    return replica, diag, (ks, totals, window)


def _compare_hvm_payload(args):
    cfg, replica = args
    params, rng, degs, _, g, diag = _generate(cfg, replica)
    ecm_spec = clustering_spectrum(g)
    hp = HvmParams(kernel=cfg.hvm_kernel, weights_source=cfg.hvm_weights, base=params)
    weights = hvm_weights(hp, rng, degs)
    hv = generate_hvm(weights, hp, rng)
    hvm_spec = clustering_spectrum(hv)
    return replica, diag, (
        (ecm_spec.ks, ecm_spec.n_k, ecm_spec.delta_k),
        (hvm_spec.ks, hvm_spec.n_k, hvm_spec.delta_k),
    )


def _connection_payload(args):
    cfg, replica, cells = args
    _, _, degs, _, g, diag = _generate(cfg, replica)
    counts = connection_cell_counts(g, degs, cells)
    return replica, diag, counts


def _run_replicas(cfg: ExperimentConfig, fn, extra=None):
    jobs = [(cfg, r) if extra is None else (cfg, r, extra)
            for r in range(cfg.replicas)]
    if cfg.workers > 1 and cfg.replicas > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(fn, jobs))
    else:
        results = [fn(job) for job in jobs]
    results.sort(key=lambda item: item[0])
    return results


def _spectrum_from_counts(counts, n) -> ClusteringSpectrum:
    ks, n_k, delta_k = (np.asarray(a) for a in counts)
    c_k = 2.0 * delta_k / (n_k * ks * (ks - 1.0))
    return ClusteringSpectrum(
        ks=ks.astype(np.int64), n_k=n_k.astype(np.int64),
        delta_k=delta_k.astype(np.int64), c_k=c_k, n=n, degree_basis="erased",
    )


# ---------------------------------------------------------------------------
# experiment bodies

def _spectrum_rows(spec: ClusteringSpectrum, params: ModelParams, replica: int):
    rows = []
    for k, nk, dk, ck in zip(spec.ks, spec.n_k, spec.delta_k, spec.c_k):
        k = int(k)
        try:
            f = asymptotics.clustering_scale(k, params.n, params)
            over_f = float(ck) / f if f > 0 else None
        except ValueError:
            over_f = None
        rows.append((k, int(nk), int(dk), float(ck), over_f,
                     degree_range(k, params.n, params.tau),
                     params.n, params.tau, replica))
    return rows


def _run_spectrum(cfg: ExperimentConfig):
    params = cfg.params()
    results = _run_replicas(cfg, _spectrum_payload)
    diags = [diag for _, diag, _ in results]
    specs = [_spectrum_from_counts(counts, cfg.n) for _, _, counts in results]
    pooled = pool_spectra(specs)
    rows = []
    if cfg.emit_raw:
        for (replica, _, _), spec in zip(results, specs):
            rows.extend(_spectrum_rows(spec, params, replica))
    rows.extend(_spectrum_rows(pooled, params, -1))
    return {"spectrum.csv": ("spectrum", rows)}, diags


def _run_regimes(cfg: ExperimentConfig):
    results = _run_replicas(cfg, _regimes_payload)
    diags = [diag for _, diag, _ in results]
    rows = []
    pooled: dict[int, np.ndarray] = {}
    pooled_tot: dict[int, int] = {}
    for replica, _, (ks, totals, window) in results:
        for i, k in enumerate(ks):
            k = int(k)
            pooled_tot[k] = pooled_tot.get(k, 0) + int(totals[i])
            pooled[k] = pooled.get(k, np.zeros(len(cfg.epsilon_sweep), dtype=np.int64))
            pooled[k] = pooled[k] + window[i]
            if not cfg.emit_raw:
                continue
            for j, eps in enumerate(cfg.epsilon_sweep):
                frac = window[i, j] / totals[i] if totals[i] else None
                rows.append((k, eps, int(totals[i]), int(window[i, j]), frac, replica))
    for k in sorted(pooled_tot):
        for j, eps in enumerate(cfg.epsilon_sweep):
            tot = pooled_tot[k]
            frac = pooled[k][j] / tot if tot else None
            rows.append((k, eps, tot, int(pooled[k][j]), frac, -1))
    return {"regimes.csv": ("regimes", rows)}, diags


def _run_crossover(cfg: ExperimentConfig):
    params = cfg.params()
    b_grid = cfg.b_grid or tuple(np.logspace(-2, 2, 25))
    qspec = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-7)
    mu, c, a, tau = params.mu, params.c_norm, params.a_const, params.tau
    rows = []
    for b in b_grid:
        b = float(b)
        theory = asymptotics.ck_crossover(b, params, qspec)
        range_ii = (
            math.log(1.0 / b**2) * mu**-tau * c * c * a if b < 1.0 else None
        )
        range_iii = mu ** (3.0 - 2.0 * tau) * c * c * a * a * b ** (2.0 * tau - 6.0)
        rows.append((b, theory, range_ii, range_iii))
    return {"crossover.csv": ("crossover", rows)}, []


def _run_theory(cfg: ExperimentConfig):
    params = cfg.params()
    if cfg.k_grid is not None:
        k_grid = [int(k) for k in cfg.k_grid]
    else:
        k_max = int(cfg.n ** (1.0 / (cfg.tau - 1.0)))
        k_grid = sorted(set(
            int(round(k)) for k in np.logspace(math.log10(2), math.log10(k_max), 40)
        ))
    curve = asymptotics.theory_curve(cfg.n, k_grid, params)
    rows = []
    for k, c_val, range_id in curve.points:
        try:
            f = asymptotics.clustering_scale(k, cfg.n, params)
            f_out = f if f > 0 else None
        except ValueError:
            f_out = None
        rows.append((k, c_val, f_out, range_id, cfg.n, cfg.tau))
    return {"theory.csv": ("theory", rows)}, []


def _run_compare_hvm(cfg: ExperimentConfig):
    results = _run_replicas(cfg, _compare_hvm_payload)
    diags = [diag for _, diag, _ in results]
    ecm = pool_spectra([_spectrum_from_counts(c[0], cfg.n) for _, _, c in results])
    hvm = pool_spectra([_spectrum_from_counts(c[1], cfg.n) for _, _, c in results])
    cmp = compare_spectra(ecm, hvm, base=cfg.bin_base)
    rows = [
        (r.k_lo, r.k_hi, r.mean_k, r.c_ref, r.c_other, r.ratio, r.std_err,
         r.n_ref, r.n_other)
        for r in cmp.rows
    ]
    extra = {"omitted_bins": {
        "ecm_zero": cmp.omitted_ref_zero,
        "hvm_zero": cmp.omitted_other_zero,
        "missing": cmp.omitted_missing,
    }}
    return {"compare_hvm.csv": ("compare_hvm", rows)}, diags, extra


def _default_cells(cfg: ExperimentConfig):
    top = cfg.n ** (1.0 / (cfg.tau - 1.0)) * 4.0
    edges = [1.0]
    while edges[-1] < top:
        edges.append(edges[-1] * 2.0)
    return partition_cells(edges)


def _run_connection_check(cfg: ExperimentConfig):
    cells = _default_cells(cfg)
    results = _run_replicas(cfg, _connection_payload, extra=cells)
    diags = [diag for _, diag, _ in results]
    acc = None
    for _, _, counts in results:
        if acc is None:
            acc = [np.array(a) for a in counts]
        else:
            for slot, arr in zip(acc, counts):
                slot += arr
    rows_cc = connection_rows(cells, *acc)
    rows = [
        (r.du_lo, r.du_hi, r.dv_lo, r.dv_hi, r.pairs,
         r.empirical_p, r.model_p, r.std_err)
        for r in rows_cc
    ]
    return {"connection_check.csv": ("connection_check", rows)}, diags


def _run_ingest(cfg: ExperimentConfig):
    parsed = ingest_edge_list(cfg.input_path, strict=cfg.strict_ingest)
    g = parsed.to_simple_graph()
    spec = clustering_spectrum(g)
    # normalization columns use the configured tau at the file's size
    params = ModelParams(tau=cfg.tau, n=max(g.n, 2), seed=cfg.seed)
    rows = _spectrum_rows(spec, params, -1)
    extra = {"ingest_provenance": dataclasses.asdict(parsed.provenance)}
    return {"spectrum.csv": ("spectrum", rows)}, [], extra


def run(config: ExperimentConfig) -> RunResult:
    """Run one experiment and write its CSV files plus the JSON manifest."""
    config.validate()
    started = time.perf_counter()
    body = {
        "spectrum": _run_spectrum,
        "regimes": _run_regimes,
        "crossover": _run_crossover,
        "theory": _run_theory,
        "compare_hvm": _run_compare_hvm,
        "connection_check": _run_connection_check,
        "ingest": _run_ingest,
    }[config.experiment]
    out = body(config)
    files, diags = out[0], out[1]
    extra = out[2] if len(out) > 2 else {}

    out_dir = Path(config.output_path)
    out_dir.mkdir(parents=True, exist_ok=True)
    result = RunResult(output_dir=out_dir)
    manifest_files = []
    for name, (schema, rows) in files.items():
        payload = _csv_bytes(_CSV_HEADERS[schema], rows)
        path = out_dir / name
        path.write_bytes(payload)
        result.files[name] = path
        manifest_files.append({
            "name": name,
            "schema": schema,
            "rows": len(rows),
            "sha256": hashlib.sha256(payload).hexdigest(),
        })

    manifest = {
        "schema_version": SCHEMA_VERSION,
        "experiment": config.experiment,
        "config": dataclasses.asdict(config),
        "kernel_backend": BACKEND,
        "replica_diagnostics": diags,
        "files": manifest_files,
        "wall_time_s": time.perf_counter() - started,
    }
    manifest.update(extra)
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2, default=str) + "\n")
    result.files["manifest.json"] = manifest_path
    result.manifest = manifest
    return result
