from permres.models import FamilyPrediction
from permres.specs import parse_family


def register(subparsers):
    p = subparsers.add_parser("family", help="closed-form family with its proof witness")
    p.add_argument("spec", help="ppoly:gf:p^e:a0,a1,...  quadchar:p  monomial:gf:p^e:d")
    p.set_defaults(run=run)


def run(args) -> FamilyPrediction:
    return parse_family(args.spec)
