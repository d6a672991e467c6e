"""Command-line interface: experiment runs, enrichment tables, and profiles."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

import numpy as np

from .blockmodel import KINDS, BlockmodelSpec
from .harness import ExperimentConfig, load_config, run_experiment
from .measures import enrichment, enrichment_profile, write_enrichment_csv
from .census import TRIAD_TYPES


def _csv_list(raw: str) -> tuple[str, ...]:
    return tuple(x.strip() for x in raw.split(",") if x.strip())


def _add_run_parser(sub) -> None:
    p = sub.add_parser("run", help="run a generate/fit experiment grid")
    p.add_argument("--config", help="INI config file; flags below override it")
    p.add_argument("--kinds", type=_csv_list, help="comma-separated blockmodel kinds")
    p.add_argument("--term-sets", type=_csv_list, help="comma-separated term set names")
    p.add_argument("--algorithms", type=_csv_list, help="subset of rl,mcmc_fixed,mcmc_free")
    p.add_argument("--replicates", type=int)
    p.add_argument("--seed", type=int, help="master seed")
    p.add_argument("--out", help="output directory")
    p.add_argument("--no-plots", action="store_true")


def _add_enrichment_parser(sub) -> None:
    p = sub.add_parser("enrichment", help="triad enrichment ratios for one kind")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--sizes", type=_csv_list, help="cluster sizes, e.g. 8,8,8")
    p.add_argument("--reps", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="write the report to this CSV file")


def _add_profile_parser(sub) -> None:
    p = sub.add_parser("profile", help="enrichment across error levels")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--sizes", type=_csv_list, help="cluster sizes, e.g. 8,8,8")
    p.add_argument("--grid", type=_csv_list, default=("0", "0.2", "0.4", "0.6", "0.8", "1"))
    p.add_argument("--reps", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="write the profile to this CSV file")


def _run(args) -> int:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    updates = {}
    if args.kinds:
        updates["kinds"] = args.kinds
    if args.term_sets:
        updates["term_sets"] = args.term_sets
    if args.algorithms:
        updates["algorithms"] = args.algorithms
    if args.replicates is not None:
        updates["replicates"] = args.replicates
    if args.seed is not None:
        updates["master_seed"] = args.seed
    if args.out:
        updates["output_dir"] = args.out
    if args.no_plots:
        updates["make_plots"] = False
    cfg = replace(cfg, **updates)
    reports = run_experiment(cfg)
    failed = [r for r in reports if r.error is not None]
    for rep in reports:
        imp = "n/a" if rep.improvement is None else f"{rep.improvement:.3f}"
        status = f"ERROR: {rep.error}" if rep.error else f"improvement={imp}"
        print(f"{rep.kind} / {rep.term_set} / {rep.algorithm}: {status}")
    print(f"wrote {cfg.output_dir}/summary.csv and {cfg.output_dir}/miv.csv")
    return 1 if failed else 0


def _spec_from_args(args) -> BlockmodelSpec:
    sizes = tuple(int(x) for x in args.sizes) if args.sizes else None
    return BlockmodelSpec(args.kind, sizes)


def _print_report(report) -> None:
    print(f"kind={report.kind} error_level={report.error_level:g}")
    print(f"{'triad':>6} {'model':>12} {'random_mean':>12} {'ratio':>10}")
    for t in TRIAD_TYPES:
        r = report.ratio[t]
        ratio = "undef" if r is None else f"{r:.3f}"
        print(
            f"{t:>6} {report.model_counts[t]:>12.2f} "
            f"{report.mean_random_counts[t]:>12.3f} {ratio:>10}"
        )


def _enrichment(args) -> int:
    spec = _spec_from_args(args)
    rng = np.random.default_rng(args.seed)
    report = enrichment(spec, args.reps, rng)
    _print_report(report)
    if args.csv:
        write_enrichment_csv(args.csv, [report])
        print(f"wrote {args.csv}")
    return 0


def _profile(args) -> int:
    spec = _spec_from_args(args)
    rng = np.random.default_rng(args.seed)
    grid = [float(x) for x in args.grid]
    profile = enrichment_profile(spec, grid, args.reps, rng)
    for le in grid:
        _print_report(profile[le])
        print()
    if args.csv:
        write_enrichment_csv(args.csv, [profile[le] for le in grid])
        print(f"wrote {args.csv}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="triadnet",
        description="Generate and evaluate networks with prescribed blockmodel "
        "structure from triad-level statistics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    _add_run_parser(sub)
    _add_enrichment_parser(sub)
    _add_profile_parser(sub)
    args = parser.parse_args(argv)
    if args.command == "run":
        return _run(args)
    if args.command == "enrichment":
        return _enrichment(args)
    return _profile(args)


if __name__ == "__main__":
    sys.exit(main())
