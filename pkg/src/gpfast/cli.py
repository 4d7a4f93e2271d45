"""Command-line entry point: ``gpfast bench`` and ``gpfast demo``.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 I/O failure.
Setting ``GPFAST_SEED`` overrides ``--seed``.
"""

import argparse
import os
import sys

from .bench import cmd_bench
from .demo import cmd_demo
from .errors import NumericalError

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text):
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser():
    parser = _Parser(prog="gpfast", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bench", help="time fast routines against naive baselines")
    b.add_argument("--sizes", type=_int_list, default=[200])
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--no-jitter", action="store_true",
                   help="build the benchmark covariance without diagonal jitter")
    b.add_argument("--ess-iters", type=int, default=1000,
                   help="chain length for the ess_run row (0 skips it)")
    b.add_argument("--out", default="bench.csv")

    d = sub.add_parser("demo", help="warped-signal inference with elliptical slice sampling")
    d.add_argument("--n", type=int, default=100)
    d.add_argument("--iters", type=int, default=1000)
    d.add_argument("--seed", type=int, default=1)
    d.add_argument("--amplitude", type=float, default=1.0)
    d.add_argument("--period", type=float, default=1.0)
    d.add_argument("--noise-sd", type=float, default=1e-3)
    d.add_argument("--sigma", type=float, default=1.0)
    d.add_argument("--phi", type=float, default=1.0)
    d.add_argument("--out-dir", default="demo_out")
    return parser


def _seed(args):
    env = os.environ.get("GPFAST_SEED")
    if env is None or env.strip() == "":
        return args.seed
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"GPFAST_SEED must be an integer, got {env!r}")


def run(argv=None):
    try:
        args = build_parser().parse_args(argv)
        seed = _seed(args)
        if args.command == "bench":
            cmd_bench(sizes=args.sizes, reps=args.reps, seed=seed, jitter=not args.no_jitter,
                      out_path=args.out, ess_iters=args.ess_iters,
                      log=lambda msg: print(msg, file=sys.stderr))
            print(args.out)
        else:
            cmd_demo(n=args.n, iters=args.iters, seed=seed, amplitude=args.amplitude,
                     period=args.period, noise_sd=args.noise_sd, sigma=args.sigma,
                     phi=args.phi, out_dir=args.out_dir)
            print(args.out_dir)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"gpfast: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"gpfast: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"gpfast: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
