"""Command-line entry point: ``lfia simulate | bound | selftest``."""
import argparse
import logging
import sys

from . import selftest
from .channel import SystemConfig
from .errors import BudgetExceeded, DegenerateRun, InvalidConfig
from .harness import (DEFAULT_FLOP_CAP, LOWER_BOUND, PERFECT, PROPOSED, SCHEMES,
                      SweepSpec, run_sweep, write_csv)
from .theory import min_rho_expectation, wishart_spec_for

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_DEGENERATE = 0, 2, 3, 4


def _list(cast):
    def parse(text):
        try:
            return [cast(x) for x in text.replace(" ", ",").split(",") if x]
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc))
    return parse


def _add_system_args(p):
    p.add_argument("--nt", type=int, required=True, help="antennas per user")
    p.add_argument("--nr", type=int, required=True, help="antennas per base station")
    p.add_argument("--k", type=int, required=True, help="users per cell")
    p.add_argument("--b", type=int, required=True, help="feedback bits per user")
    p.add_argument("--snr-db", type=_list(float), required=True,
                   help="comma-separated SNR points in dB")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--flop-cap", type=int, default=DEFAULT_FLOP_CAP)
    p.add_argument("--workers", type=int, default=1)


def build_parser():
    parser = argparse.ArgumentParser(prog="lfia", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="Monte Carlo sum-rate sweep")
    _add_system_args(sim)
    sim.add_argument("--schemes", type=_list(str), default=[PROPOSED],
                     help="comma-separated subset of " + ",".join(SCHEMES))

    bound = sub.add_parser("bound", help="perfect-feedback rate and its lower bound")
    _add_system_args(bound)

    sub.add_parser("selftest", help="run the built-in invariant checks")
    return parser


def _spec(args, schemes):
    cfg = SystemConfig(args.nt, args.nr, args.k, args.b)
    return SweepSpec(cfg, args.snr_db, args.trials, args.seed, tuple(schemes), args.flop_cap)


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "selftest":
            return EXIT_OK if selftest.run() else 1
        if args.command == "simulate":
            spec = _spec(args, args.schemes)
        else:
            spec = _spec(args, (PERFECT, LOWER_BOUND))
            emin = min_rho_expectation(wishart_spec_for(spec.cfg, spec.trials), spec.seed)
            print(f"E[min rho_K] = {emin.mean:.6g} +/- {emin.std_err:.2g}")
        records = run_sweep(spec, workers=args.workers)
        write_csv(records, args.out)
    except InvalidConfig as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DegenerateRun as exc:
        print(f"degenerate run: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
