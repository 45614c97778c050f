import logging

from permres.commands import add_function_args, load
from permres.equivalence import (
    AffineMap, affine_transform, compose_left, compose_right, ea_transform, parse_permutation,
)
from permres.specs import function_document, parse_affine

log = logging.getLogger(__name__)


def register(subparsers):
    p = subparsers.add_parser(
        "transform", help="compose with permutations or apply outer o f o inner + add",
    )
    add_function_args(p)
    p.add_argument("--left", help="permutation phi for phi o f: cycles '(0)(2345)' or a JSON table")
    p.add_argument("--right", help="permutation phi for f o phi")
    p.add_argument("--outer", help="affine permutation a0,a1,...[+c] applied after f")
    p.add_argument("--inner", help="affine permutation applied before f")
    p.add_argument("--add", help="affine map added to the result (EA transform)")
    p.set_defaults(run=run)


def run(args) -> dict:
    f = load(args)
    G = f.group
    if args.right:
        f = compose_right(f, parse_permutation(args.right, G))
    if args.left:
        f = compose_left(parse_permutation(args.left, G), f)
    if args.outer or args.inner or args.add:
        outer = parse_affine(args.outer, G) if args.outer else AffineMap.identity(G)
        inner = parse_affine(args.inner, G) if args.inner else AffineMap.identity(G)
        if args.add:
            f = ea_transform(f, inner, outer, parse_affine(args.add, G))
        else:
            f = affine_transform(f, outer, inner)
    log.info("Transformed function has %d values", f.image_size())
    return function_document(f)
