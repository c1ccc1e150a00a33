"""Command-line entry point.

Exit codes: 0 success, 1 usage or configuration error, 2 validation
failure, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import experiments, validation
from .config import EXPERIMENTS, FORMATS, OUTPUT_DIR_ENV, build_config, read_config_file
from .errors import NumericalError, ParameterError
from .tables import render

log = logging.getLogger("vqutrit")

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 1, 2, 3

RUNNERS = {
    "negativity-dynamics": experiments.negativity_dynamics,
    "bound-spectrum": experiments.bound_spectrum,
    "negativity-map": experiments.negativity_map,
    "validate": validation.validate,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="flat key = value file with flag names as keys")
    p.add_argument("--gamma0", help="decay rate (units of omega0)")
    p.add_argument("--gamma0-grid", help="a:b:n or comma list of decay rates")
    p.add_argument("--lambda", dest="lambda_", help="spectral width (units of omega0)")
    p.add_argument("--omega0", help="transition frequency")
    theta = p.add_mutually_exclusive_group()
    theta.add_argument("--theta")
    theta.add_argument("--theta-grid")
    atoms = p.add_mutually_exclusive_group()
    atoms.add_argument("--n-atoms")
    atoms.add_argument("--n-list")
    times = p.add_mutually_exclusive_group()
    times.add_argument("--t", help="evaluation time (negativity-map)")
    times.add_argument("--t-grid")
    p.add_argument("--output", help="output file (default: stdout, or $%s/<experiment>.<format>)"
                   % OUTPUT_DIR_ENV)
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--workers", help="process pool size for grid evaluation")
    p.add_argument("-v", "--verbose", action="store_true")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vqutrit", description=(
        "Negativity and bound-state tables for two V-type qutrits in Lorentzian "
        "reservoirs, with a built-in validation command."))
    sub = parser.add_subparsers(dest="experiment", required=True, parser_class=_Parser)
    for name in EXPERIMENTS:
        p = sub.add_parser(name)
        _add_common(p)
        if name == "validate":
            p.add_argument("--modes", help="bath modes M")
            p.add_argument("--bandwidth", help="bath half-bandwidth W (default 40*lambda)")
            p.add_argument("--dt", help="RK4 step")
            p.add_argument("--t-end", help="oracle integration time")
            p.add_argument("--cutoff-at-zero", action="store_const", const="true")
            p.add_argument("--samples", help="random CPTP samples")
            p.add_argument("--seed")
            p.add_argument("--from", dest="from_", help="re-check rows of an emitted table")
    return parser


def _flag_settings(args) -> dict:
    settings = {}
    for key, value in vars(args).items():
        if value is None or key in ("experiment", "config", "verbose"):
            continue
        flag = {"lambda_": "lambda", "from_": "from"}.get(key, key.replace("_", "-"))
        settings[flag] = value
    return settings


def _write(text: str, cfg):
    target = cfg.output
    if target is None and os.environ.get(OUTPUT_DIR_ENV):
        target = str(Path(os.environ[OUTPUT_DIR_ENV]) / f"{cfg.experiment}.{cfg.format}")
    if target is None:
        sys.stdout.write(text)
        return
    path = Path(target)
    path.parent.mkdir(parents=True, exist_ok=True)
    # newline="" keeps the bytes identical across platforms
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    log.info("wrote %s", path)


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        file_settings = read_config_file(args.config) if args.config else {}
        cfg = build_config(args.experiment, file_settings, _flag_settings(args))
    except (ParameterError, OSError) as exc:
        print(f"vqutrit: configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        rows = RUNNERS[cfg.experiment](cfg)
    except NumericalError as exc:
        print(f"vqutrit: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ParameterError, OSError) as exc:
        print(f"vqutrit: {exc}", file=sys.stderr)
        return EXIT_USAGE

    _write(render(rows, cfg.format, cfg.echo()), cfg)
    if cfg.experiment == "validate":
        failed = [r for r in rows if not r["passed"]]
        for r in failed:
            print(f"FAIL {r['check']}: measured {r['measured']:.3e} > {r['tolerance']:.1e} "
                  f"{r['detail']}", file=sys.stderr)
        return EXIT_VALIDATION if failed else EXIT_OK
    failed = sum(1 for r in rows if r.get("error"))
    if failed:
        print(f"vqutrit: numerical failure in {failed} of {len(rows)} rows (see error column)",
              file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
