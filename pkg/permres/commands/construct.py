from permres.commands import add_function_args, load
from permres.functions import pres_bounds
from permres.solver import construct_upper_bound_g, normalize_witness
from permres.specs import function_document


def register(subparsers):
    p = subparsers.add_parser("construct", help="witness g meeting the q - V(f) + 1 upper bound")
    add_function_args(p)
    p.add_argument("--translate", type=int, default=None, metavar="C",
                   help="left-translate the witness by -C (C must be one of its values)")
    p.set_defaults(run=run)


def run(args) -> dict:
    f = load(args)
    g = construct_upper_bound_g(f)
    if args.translate is not None:
        g = normalize_witness(g, args.translate)
    doc = function_document(g)
    doc["image_size"] = g.image_size()
    doc["upper_bound"] = pres_bounds(f).upper
    return doc
