import argparse
import logging
import sys

from permres.commands import analyze, construct, family, pipeline, pres, transform, verify
from permres.config import LOG_FORMAT
from permres.errors import PermresError
from permres.models import SuiteSummary
from permres.reports import emit

log = logging.getLogger(__name__)

COMMANDS = (analyze, pres, construct, family, pipeline, transform, verify)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permres", description="Permutation resemblance of functions over finite groups.",
    )
    level = parser.add_mutually_exclusive_group()
    level.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    level.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in COMMANDS:
        module.register(subparsers)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO,
        format=LOG_FORMAT,
    )
    try:
        report = args.run(args)
        emit(report, getattr(args, "format", "json"))
    except PermresError as e:
        log.error("%s: %s", type(e).__name__, e.detail)
        return e.exit_code
    if isinstance(report, SuiteSummary) and report.failed:
        log.error("%d of %d checks failed", report.failed, report.total)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
