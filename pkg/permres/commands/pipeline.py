from permres.commands import add_budget_args, add_format_arg, add_function_args, load
from permres.config import PIPELINE_CAP
from permres.families import lowdu_pipeline
from permres.models import PipelineReport


def register(subparsers):
    p = subparsers.add_parser("pipeline", help="low-DU permutations g + f from optimal witnesses")
    add_function_args(p)
    add_format_arg(p)
    add_budget_args(p)
    p.add_argument("--cap", type=int, default=PIPELINE_CAP, help="optimal witnesses to evaluate")
    p.set_defaults(run=run)


def run(args) -> PipelineReport:
    return lowdu_pipeline(load(args), candidate_cap=args.cap, jobs=args.jobs,
                          max_sets=args.max_sets, time_limit=args.time_limit)
