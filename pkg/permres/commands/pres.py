import logging

from permres.commands import add_budget_args, add_format_arg, add_function_args, load
from permres.errors import VerificationFailed
from permres.models import PresCertificate
from permres.solver import pres_exact, pres_oracle_bruteforce

log = logging.getLogger(__name__)


def register(subparsers):
    p = subparsers.add_parser("pres", help="exact permutation resemblance with a certificate")
    add_function_args(p)
    add_format_arg(p)
    add_budget_args(p)
    p.add_argument("--max-k", type=int, default=None, help="largest shift-set size to try")
    p.add_argument("--all-optimal", action="store_true",
                   help="count every optimal shift set (first 100 listed)")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against the q! brute force (q <= 8)")
    p.set_defaults(run=run)


def run(args) -> PresCertificate:
    f = load(args)
    cert = pres_exact(
        f, max_k=args.max_k, jobs=args.jobs, enumerate_all_optimal=args.all_optimal,
        max_sets=args.max_sets, time_limit=args.time_limit,
        acknowledge_convention=args.acknowledge_convention,
    )
    if args.oracle:
        expected = pres_oracle_bruteforce(f)
        if cert.pres != expected:
            raise VerificationFailed(f"solver gives {cert.pres}, brute force gives {expected}")
        log.info("Brute-force oracle agrees: pres = %d", expected)
        cert.note = (cert.note + "; " if cert.note else "") + "brute-force oracle agrees"
    return cert
