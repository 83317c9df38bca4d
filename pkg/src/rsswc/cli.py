"""Command-line entry point: `rsswc classical|feedback --config <path> ...`."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .harness import ExperimentConfig, emit_report, run_experiment


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rsswc",
        description="Monte-Carlo simulator for RS-syndrome distributed compression")
    sub = parser.add_subparsers(dest="scenario", required=True)
    for name, help_text in (("classical", "one-shot decoding at fixed rates"),
                            ("feedback", "rate-adaptive sessions with retries")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="key = value config file")
        p.add_argument("--seed", type=int, default=None, help="override the base seed")
        p.add_argument("--out", default=None, help="output directory for CSVs and figures")
        p.add_argument("--full-scale", action="store_true",
                       help="allow expensive multiplicity regimes (lambda > 10)")
        p.add_argument("--mismatch", action="store_true",
                       help="also run a decoder with a mismatched sparse pdf")
        p.add_argument("--workers", type=int, default=None, help="parallel trial workers")
        p.add_argument("--no-figures", action="store_true", help="skip PNG rendering")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = ExperimentConfig.from_file(args.config)
        config = replace(config, scenario=args.scenario)
        if args.seed is not None:
            config = replace(config, seed=args.seed)
        if args.out is not None:
            config = replace(config, out=args.out)
        if args.full_scale:
            config = replace(config, full_scale=True)
        if args.mismatch:
            config = replace(config, mismatch=True)
        if args.workers is not None:
            config = replace(config, workers=args.workers)
        config.validate()
    except (OSError, ValueError) as exc:
        print(f"rsswc: config error: {exc}", file=sys.stderr)
        return 1

    try:
        reports, records = run_experiment(config)
        paths = emit_report(reports, records, config.out, scenario=config.scenario,
                            figures=not args.no_figures)
    except OSError as exc:
        print(f"rsswc: i/o error: {exc}", file=sys.stderr)
        return 1

    print(f"{'model':<44} {'rate':>9} {'gap':>9} {'fer/std':>9} {'trials':>7} {'elapsed':>9}")
    for rep in reports:
        rate = "-" if rep.rate_bits_per_sym is None else f"{rep.rate_bits_per_sym:.4f}"
        gap = "-" if rep.gap_bits is None else f"{rep.gap_bits:.4f}"
        print(f"{rep.model:<44} {rate:>9} {gap:>9} {rep.fer_or_std:>9.4f} "
              f"{rep.trials:>7} {rep.elapsed_s:>8.1f}s")
    for path in paths:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
