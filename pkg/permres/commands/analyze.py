import logging

from permres.commands import add_format_arg, add_function_args, load
from permres.functions import function_stats
from permres.models import StatsReport

log = logging.getLogger(__name__)


def register(subparsers):
    p = subparsers.add_parser("analyze", help="preimage, difference and ambiguity statistics")
    add_function_args(p)
    add_format_arg(p)
    p.set_defaults(run=run)


def run(args) -> StatsReport:
    f = load(args)
    log.info("Analyzing %d-point function over %s", len(f), f.group.spec)
    return function_stats(f, acknowledge_convention=args.acknowledge_convention)
