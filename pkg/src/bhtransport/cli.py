"""Command-line driver for the chain experiments.

One subcommand per experiment; common flags control the model and the
drive grid.  Results go to a CSV (stdout by default), with an optional
rendered figure next to the file.  Exit codes: 0 success, 1 usage or
validation error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .basis import CapacityError
from .config import ConfigError, build_spec, parse_config
from .dynamics import PropagationError
from .eigensolver import ConvergenceError
from .report import write_csv
from .sweeps import KINDS, SweepValidationError, run_sweep

__all__ = ["main", "build_parser"]

_USAGE_EXIT = 1
_NUMERICAL_EXIT = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; this tool reserves 2
    # for numerical failures
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(_USAGE_EXIT)


_HELP = {
    "occupation": "ground-state atom number per site versus drive strength",
    "parity": "two-site parity correlations versus drive strength",
    "entropy": "bipartite entanglement entropy versus drive strength",
    "gap": "gap between the two lowest levels versus drive strength",
    "excited": "end-site occupation of the lowest eigenstates",
    "ramp": "time evolution under a linearly ramped drive",
    "thresholds": "closed-form branch-crossing drive strengths",
}


def _add_common(sub: argparse.ArgumentParser):
    sub.add_argument("--sites", "-M", type=int, help="number of lattice sites")
    sub.add_argument("--atoms", "-N", type=int, help="total atom number (default: sites)")
    sub.add_argument("--hopping", type=float, help="tunnel coupling J (default 1)")
    sub.add_argument("--interaction", type=float, help="interaction strength U (default 20)")
    sub.add_argument("--detuning", type=float, help="laser detuning (default 0)")
    sub.add_argument("--trap", type=float, help="harmonic confinement strength (default 0)")
    sub.add_argument("--boundary", choices=("open", "periodic"), help="chain boundary (default open)")
    sub.add_argument("--omega-min", type=float, help="grid start (default 0)")
    sub.add_argument("--omega-max", type=float, help="grid end (default 1.2*U*(N-1))")
    sub.add_argument("--omega-step", type=float, help="grid step (default 0.25)")
    sub.add_argument("--cut", type=int, help="right-part size for the entropy cut (default: all)")
    sub.add_argument("--distance", type=int, help="parity correlation distance (default: all)")
    sub.add_argument("--states", type=int, help="eigenstates to track in 'excited' (default 5)")
    sub.add_argument("--ramp-rate", type=float, help="drive ramp rate v (default 1)")
    sub.add_argument("--t-final", type=float, help="ramp end time (default: reach 1.2x last threshold)")
    sub.add_argument("--threads", type=int, help="worker threads for grid points (default 1)")
    sub.add_argument("--out", type=str, help="output CSV path (default: stdout)")
    sub.add_argument("--config", type=str, help="key-value config file; flags win")
    sub.add_argument("--plot", action="store_true", help="render a figure next to the CSV")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="bhtransport",
        description="Exact diagonalization of a driven two-component Bose-Hubbard chain.",
    )
    subs = parser.add_subparsers(dest="kind", required=True)
    for kind in KINDS:
        sub = subs.add_parser(kind, help=_HELP[kind])
        _add_common(sub)
    return parser


_SPEC_KEYS = (
    "sites",
    "atoms",
    "hopping",
    "interaction",
    "detuning",
    "trap",
    "boundary",
    "omega_min",
    "omega_max",
    "omega_step",
    "cut",
    "distance",
    "states",
    "ramp_rate",
    "t_final",
    "threads",
    "out",
)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = parse_config(args.config) if args.config else {}
        overrides = {key: getattr(args, key) for key in _SPEC_KEYS}
        spec = build_spec(args.kind, config, overrides)
        if args.plot and spec.out is None:
            parser.error("--plot requires --out")
    except SystemExit as exc:
        return int(exc.code or 0)
    except (ConfigError, SweepValidationError, CapacityError, OSError) as exc:
        sys.stderr.write(f"bhtransport: error: {exc}\n")
        return _USAGE_EXIT

    try:
        table = run_sweep(spec)
    except (ConvergenceError, PropagationError, FloatingPointError) as exc:
        sys.stderr.write(f"bhtransport: numerical failure: {exc}\n")
        return _NUMERICAL_EXIT

    if spec.out is None:
        write_csv(table, sys.stdout)
    else:
        write_csv(table, spec.out)
        if args.plot:
            from .plotting import render_figure

            render_figure(table, Path(spec.out).with_suffix(".png"))
    return 0


if __name__ == "__main__":
    sys.exit(main())
