"""One module per subcommand; each exposes `register(subparsers)` and a `run(args)`
that returns the report for main to serialize."""

import argparse

from permres.algebra import FuncTable
from permres.specs import load_function


def add_function_args(p: argparse.ArgumentParser):
    src = p.add_argument_group("function")
    src.add_argument("--group", help="gf:p^e[:c0,...,1], zn:n1xn2..., cayley:<path>")
    src.add_argument("--table", help="JSON value table or function document; '-' reads stdin")
    src.add_argument("--poly", help='polynomial over a field, e.g. "x^2 - x^3"')
    src.add_argument("--file", help="function document {group, table|poly}; '-' reads stdin")
    src.add_argument("--acknowledge-convention", action="store_true",
                     help="allow difference operators on nonabelian groups, f(x+a) + (-f(x))")


def add_format_arg(p: argparse.ArgumentParser, default: str = "json"):
    p.add_argument("--format", "--out", dest="format", choices=("json", "csv"), default=default)


def add_budget_args(p: argparse.ArgumentParser):
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default PERMRES_JOBS)")
    p.add_argument("--max-sets", type=int, default=None, help="shift sets tested before giving up")
    p.add_argument("--time-limit", type=float, default=None,
                   help="seconds before giving up; 0 means no limit")


def load(args: argparse.Namespace) -> FuncTable:
    return load_function(args.group, args.table, args.poly, args.file)
