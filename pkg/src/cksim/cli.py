"""Command-line entry point.

Each subcommand runs one experiment and writes CSV files plus a JSON
manifest into --out. A JSON config file can seed any flag; explicit
flags override file values. Invalid configs exit with status 2 and a
machine-readable error record on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from .experiments import ConfigError, ExperimentConfig, run

_SUBCOMMANDS = {
    "spectrum": "spectrum",
    "regimes": "regimes",
    "crossover": "crossover",
    "theory": "theory",
    "compare-hvm": "compare_hvm",
    "connection-check": "connection_check",
    "ingest": "ingest",
}


def _add_common(sub):
    sub.add_argument("--n", type=int, default=None, help="vertex count")
    sub.add_argument("--tau", type=float, default=None,
                     help="degree exponent in (2, 3)")
    sub.add_argument("--seed", type=int, default=None, help="master seed")
    sub.add_argument("--replicas", type=int, default=None)
    sub.add_argument("--epsilon", type=float, action="append", default=None,
                     help="window epsilon; repeatable")
    sub.add_argument("--bin-base", type=float, default=None)
    sub.add_argument("--out", type=str, default=None, help="output directory")
    sub.add_argument("--workers", type=int, default=None,
                     help="parallel replica workers")
    sub.add_argument("--config", type=str, default=None,
                     help="JSON config file; flags override its values")
    sub.add_argument("--no-raw", action="store_true",
                     help="emit only pooled rows")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cksim",
        description="Configuration-model clustering spectrum experiments",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    for name in _SUBCOMMANDS:
        sub = subs.add_parser(name)
        _add_common(sub)
        if name == "ingest":
            sub.add_argument("path", help="edge list file (whitespace pairs, # comments)")
            sub.add_argument("--lenient", action="store_true",
                             help="skip malformed lines instead of failing")
        if name == "regimes":
            sub.add_argument("--k", type=int, action="append", default=None,
                             help="focal degree; repeatable (default: band at sqrt(n))")
        if name == "theory":
            sub.add_argument("--k-grid", type=int, nargs="+", default=None)
        if name == "crossover":
            sub.add_argument("--b-grid", type=float, nargs="+", default=None)
        if name == "compare-hvm":
            sub.add_argument("--kernel", choices=("exponential", "truncated_product"),
                             default=None)
            sub.add_argument("--weights", choices=("reuse_degrees", "fresh_powerlaw"),
                             default=None)
    return parser


def _config_from_args(args) -> ExperimentConfig:
    data = {}
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
    data["experiment"] = _SUBCOMMANDS[args.command]

    overrides = {
        "n": args.n,
        "tau": args.tau,
        "seed": args.seed,
        "replicas": args.replicas,
        "epsilon_sweep": tuple(args.epsilon) if args.epsilon else None,
        "bin_base": args.bin_base,
        "output_path": args.out,
        "workers": args.workers,
        "k_list": tuple(args.k) if getattr(args, "k", None) else None,
        "k_grid": tuple(args.k_grid) if getattr(args, "k_grid", None) else None,
        "b_grid": tuple(args.b_grid) if getattr(args, "b_grid", None) else None,
        "input_path": getattr(args, "path", None),
        "hvm_kernel": getattr(args, "kernel", None),
        "hvm_weights": getattr(args, "weights", None),
    }
    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    if args.no_raw:
        data["emit_raw"] = False
    if getattr(args, "lenient", False):
        data["strict_ingest"] = False
    return ExperimentConfig.from_dict(data)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        config.validate()
    except (ConfigError, json.JSONDecodeError, OSError) as exc:
        record = {"error": "invalid_config", "detail": str(exc)}
        if isinstance(exc, ConfigError):
            record["problems"] = exc.problems
        print(json.dumps(record), file=sys.stderr)
        return 2
    try:
        result = run(config)
    except OSError as exc:
        print(json.dumps({"error": "io_failure", "detail": str(exc)}), file=sys.stderr)
        return 1
    for name in sorted(result.files):
        print(f"wrote {result.files[name]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
