"""Command-line front end: sweeps, recipe printing, selftest.

Exit codes: 0 success, 1 configuration error, 2 runtime error.
"""

import argparse
import sys

from .bench import (
    ConfigError,
    SweepConfig,
    _parse_list,
    emit_csv,
    fig_recipe,
    format_config,
    parse_config,
    run_sweep,
)
from .selftest import run_selftest


class _Parser(argparse.ArgumentParser):
    # usage mistakes are configuration errors, exit code 1
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gasmld", description="BER/query sweeps for quantum-assisted block detection")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sweep = sub.add_parser("sweep", help="run a Monte-Carlo sweep and write a CSV")
    sweep.add_argument("--config", metavar="FILE", help="flat key=value config file")
    sweep.add_argument("--recipe", choices=("fig2", "fig3"), help="start from a preset")
    sweep.add_argument("--snr", help="comma list of SNR points in dB")
    sweep.add_argument("--trials", type=int, help="trials per sweep point")
    sweep.add_argument("--seed", type=int, help="master seed")
    sweep.add_argument("--detector", help="comma list of detectors")
    sweep.add_argument("--ris", help="comma list of reflecting-element counts")
    sweep.add_argument("--out", help="output CSV path")

    recipe = sub.add_parser("recipe", help="print a preset as a config file")
    recipe.add_argument("name", choices=("fig2", "fig3"))

    sub.add_parser("selftest", help="run the built-in invariant checks")
    return parser


def _cmd_sweep(args) -> int:
    cfg = fig_recipe(args.recipe) if args.recipe else SweepConfig()
    if args.config:
        try:
            with open(args.config) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        cfg = parse_config(text, base=cfg)
    if args.snr:
        cfg.snr_db_list = _parse_list(args.snr, float)
    if args.detector:
        cfg.detectors = _parse_list(args.detector, str)
    if args.ris:
        cfg.R_list = _parse_list(args.ris, int)
    if args.trials is not None:
        cfg.trials_per_point = args.trials
    if args.seed is not None:
        cfg.master_seed = args.seed
    if args.out:
        cfg.output_path = args.out
    cfg.validate()
    records = run_sweep(cfg)
    emit_csv(records, cfg.output_path)
    print(f"wrote {cfg.output_path} ({len(records)} records)")
    return 0


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "recipe":
            sys.stdout.write(format_config(fig_recipe(args.name)))
            return 0
        return run_selftest()
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # surfaced as runtime failure, exit code 2
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
