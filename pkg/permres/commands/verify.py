import logging

from permres.checks import SUITE_ALIASES, SUITES, SuiteOptions, run_suites
from permres.commands import add_format_arg
from permres.config import CHECK_SEED, VERIFY_P_LIST, VERIFY_Q_MAX, VERIFY_SAMPLES
from permres.models import SuiteSummary
from permres.specs import parse_int_list

log = logging.getLogger(__name__)


def register(subparsers):
    p = subparsers.add_parser("verify", help="run verification suites",
                              description="suites: " + ", ".join([*SUITES, "all"])
                              + "; aliases: " + ", ".join(SUITE_ALIASES))
    p.add_argument("suites", nargs="+", metavar="suite")
    p.add_argument("--q-max", type=int, default=VERIFY_Q_MAX)
    p.add_argument("--samples", type=int, default=VERIFY_SAMPLES)
    p.add_argument("--p-list", default=",".join(map(str, VERIFY_P_LIST)),
                   help="primes for the quadratic-character suite, comma separated")
    p.add_argument("--field", action="append", default=[], dest="fields",
                   help="restrict field-based suites to this group (repeatable)")
    p.add_argument("--seed", type=int, default=CHECK_SEED)
    p.add_argument("--jobs", type=int, default=None)
    add_format_arg(p, default="csv")
    p.set_defaults(run=run)


def run(args) -> SuiteSummary:
    opts = SuiteOptions(
        q_max=args.q_max, samples=args.samples, p_list=tuple(parse_int_list(args.p_list, "prime")),
        fields=args.fields, seed=args.seed, jobs=args.jobs,
    )
    summary = run_suites(args.suites, opts)
    log.info("%d checks, %d failed", summary.total, summary.failed)
    return summary
