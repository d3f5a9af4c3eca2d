"""ggdkit command line.

Exit codes:
  0  success
  1  validation failed (validate, or an --oracle disagreement)
  2  unparseable input or invalid flags
  3  budget exhausted before the answer was proven, with --require-optimal
  4  invalid matching or edit path given to price
"""

import argparse
import logging
import sys

from ggdkit import __version__
from ggdkit.cli.commands import COMMANDS
from ggdkit.cli.common import EXIT_BAD_INPUT, EXIT_OK, EXIT_USAGE, ExceptionCounterByType, RunReport, UsageError
from ggdkit.cli.metrics import commands_total, errors_total
from ggdkit.exceptions import GgdkitError, IllegalEditOperationError, InvalidMatchingError
from ggdkit.exports import ExportToTextfile
from ggdkit.utils import Time, TimeSince

logger = logging.getLogger(__name__)


def _common_flags():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging")
    common.add_argument("--json", action="store_true", help="print the run report as JSON")
    common.add_argument("--metrics-file", help="write Prometheus metrics to this file when done")
    return common


def _coefficient_flags(parser):
    parser.add_argument("--cv", type=float, default=1.0, help="vertex translation coefficient C_V")
    parser.add_argument("--ce", type=float, default=1.0, help="edge coefficient C_E")


def build_parser():
    parser = argparse.ArgumentParser(prog="ggdkit", description="Geometric graph distances.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_flags()

    ggd = sub.add_parser("ggd", parents=[common], help="exact geometric graph distance")
    ggd.add_argument("g_file")
    ggd.add_argument("h_file")
    _coefficient_flags(ggd)
    ggd.add_argument("--budget-nodes", type=int, help="stop after this many search nodes")
    ggd.add_argument("--time-limit", type=float, help="stop after this many seconds")
    ggd.add_argument("--emit-witness", help="write the witness matching here")
    ggd.add_argument("--require-optimal", action="store_true", help="exit 3 if the result is not proven")
    ggd.add_argument("--decision", type=float, metavar="TAU", help="only decide whether GGD <= TAU")
    ggd.add_argument("--incumbent", help="matching to try first in --decision mode")
    ggd.add_argument("--oracle", action="store_true", help="cross-check against brute force")

    bounds = sub.add_parser("bounds", parents=[common], help="polynomial-time bounds")
    bounds.add_argument("g_file")
    bounds.add_argument("h_file")
    _coefficient_flags(bounds)
    bounds.add_argument("--emit-witness", help="write the assignment matching here")

    price = sub.add_parser("price", parents=[common], help="cost of a matching or an edit path")
    price.add_argument("g_file")
    price.add_argument("h_file")
    _coefficient_flags(price)
    what = price.add_mutually_exclusive_group(required=True)
    what.add_argument("--matching")
    what.add_argument("--path")
    price.add_argument("--tol", type=float, default=1e-9, help="tolerance when comparing the path's end to H")

    gen = sub.add_parser("gen", parents=[common], help="generate instances")
    gen.add_argument("family", choices=["wiggle", "tight", "blob", "reduction", "random"])
    gen.add_argument("--out-dir", default=".")
    _coefficient_flags(gen)
    gen.add_argument("--k", type=int, default=1, help="wiggle: steps of the edit path")
    gen.add_argument("--d", type=float, default=1.0, help="tight: target distance")
    gen.add_argument("--size", type=int, default=3, help="blob: size")
    gen.add_argument("--height", type=float, default=1.0, help="blob: row separation")
    gen.add_argument("--spacing", type=float, default=0.1, help="blob: vertex spacing")
    gen.add_argument("--instance", help="reduction: 3-PARTITION instance JSON")
    gen.add_argument("--tau", type=float, help="reduction: decision threshold")
    gen.add_argument("--witness", action="store_true", help="reduction: also write a partition matching")
    gen.add_argument("--seed", type=int, default=0, help="random: seed")
    gen.add_argument("--vertices", type=int, default=4, help="random: vertices per graph")
    gen.add_argument("--edges", type=int, default=3, help="random: edges per graph")
    gen.add_argument("--planar", action="store_true", help="random: resample until non-crossing")
    gen.add_argument("--connected", action="store_true", help="random: resample until no vertex is isolated")

    validate = sub.add_parser("validate", parents=[common], help="check a document")
    validate.add_argument("file")
    validate.add_argument("--kind", choices=["graph", "matching", "path"], default="graph")
    validate.add_argument("--g", help="graph G (matching and path)")
    validate.add_argument("--h", help="graph H (matching; optional target for path)")
    validate.add_argument("--tol", type=float, default=0.0)
    return parser


def _configure_logging(verbosity):
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


def _run(args, report):
    try:
        with ExceptionCounterByType(errors_total, extra_labels={"command": args.command}):
            return COMMANDS[args.command](args, report)
    except (InvalidMatchingError, IllegalEditOperationError) as e:
        report.messages.append(str(e))
        return EXIT_BAD_INPUT
    except (UsageError, GgdkitError, OSError) as e:
        report.messages.append(f"error: {e}")
        return EXIT_USAGE


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    commands_total.labels(args.command).inc()

    report = RunReport(command=["ggdkit"] + argv)
    started = Time()
    code = _run(args, report)
    report.elapsed = TimeSince(started)

    if code != EXIT_OK:
        for message in report.messages:
            print(message, file=sys.stderr)
    if args.json:
        sys.stdout.write(report.to_json())
    elif code != EXIT_USAGE:
        print(report.format(messages=code == EXIT_OK))
    if args.metrics_file:
        ExportToTextfile(args.metrics_file)
    return code
