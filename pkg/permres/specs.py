"""Spec strings and function files.

Groups: `gf:7`, `gf:9`, `gf:3^2`, `gf:2^4:1,1,0,0,1` (modulus, constant term first),
`zn:5`, `zn:2x3`, `cayley:<path>`.  Functions: a JSON table of codes or digit vectors
(`[[0,0],[1,2],...]` over `zn:2x3`, constant term first over a field), a polynomial string, or
a file `{"group": ..., "table": [...]}` / `{"group": ..., "poly": "..."}`; `-` is stdin.
Families: `ppoly:<group>:a0,a1,...`, `quadchar:p`, `monomial:<group>:d`.  Affine maps:
`a0,a1,...[+c]`.
"""

import json
import logging
import re
import sys
from pathlib import Path

from sympy import factorint

from permres.algebra import (
    FuncTable, GroupTable, eval_poly, load_cayley, make_cyclic_product, make_field, parse_poly,
)
from permres.equivalence import AffineMap, affine_from_coeffs
from permres.errors import DomainError, GroupError, SpecError
from permres.families import gen_p_polynomial, gen_quadratic_character, planar_monomial_prediction
from permres.models import FamilyPrediction

log = logging.getLogger(__name__)

FIELD_RE = re.compile(r"gf:(?P<base>\d+)(?:\^(?P<e>\d+))?(?::(?P<mod>[\d,\s]+))?")
CYCLIC_RE = re.compile(r"zn:(?P<factors>\d+(?:x\d+)*)")


def parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as e:
        raise SpecError(f"bad {what} list {text!r}") from e


def parse_group(text: str) -> GroupTable:
    text = text.strip()
    if m := FIELD_RE.fullmatch(text):
        base = int(m["base"])
        if m["e"] is not None:
            p, e = base, int(m["e"])
        else:
            factors = factorint(base)
            if len(factors) != 1:
                raise GroupError(f"{base} is not a prime power")
            (p, e), = factors.items()
        modulus = tuple(parse_int_list(m["mod"], "modulus")) if m["mod"] else None
        return make_field(p, e, modulus)
    if m := CYCLIC_RE.fullmatch(text):
        return make_cyclic_product(int(n) for n in m["factors"].split("x"))
    if text.startswith("cayley:"):
        return load_cayley(text[len("cayley:"):])
    raise SpecError(f"unknown group spec {text!r} (expected gf:..., zn:... or cayley:...)")


def _read(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    return source


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"{what} is not valid JSON: {e.msg} at position {e.pos}") from e


def _is_digits(v) -> bool:
    return isinstance(v, list) and all(type(d) is int for d in v)


def _table(G: GroupTable, values) -> FuncTable:
    if not isinstance(values, list):
        raise SpecError("a function table must be a JSON list")
    if all(type(v) is int for v in values):
        return FuncTable(G, values)
    if all(_is_digits(v) for v in values):
        try:
            return FuncTable(G, [G.encode(v) for v in values])
        except DomainError as e:
            raise SpecError(f"bad digit vector in table: {e.detail}") from e
    raise SpecError("a function table must list integer codes or digit vectors")


def function_from_document(doc: dict, group: GroupTable | None = None) -> FuncTable:
    if "group" in doc:
        group = parse_group(doc["group"])
    if group is None:
        raise SpecError("function document names no group and none was given")
    if "table" in doc:
        return _table(group, doc["table"])
    if "poly" in doc:
        return eval_poly(group, parse_poly(doc["poly"], group))
    raise SpecError("function document needs a 'table' or a 'poly' entry")


def load_function(group: str | None = None, table: str | None = None,
                  poly: str | None = None, file: str | None = None) -> FuncTable:
    """Resolve the CLI's --group/--table/--poly/--file combination into a table."""
    G = parse_group(group) if group else None
    if sum(x is not None for x in (table, poly, file)) != 1:
        raise SpecError("give exactly one of --table, --poly or --file")
    if file is not None:
        text = _read(file) if file == "-" else _read_file(file)
        return function_from_document(_load_json(text, "function file"), G)
    if poly is not None:
        if G is None:
            raise SpecError("--poly needs --group")
        return eval_poly(G, parse_poly(_read(poly), G))
    doc = _load_json(_read(table), "--table")
    if isinstance(doc, dict):
        return function_from_document(doc, G)
    if G is None:
        raise SpecError("--table needs --group")
    return _table(G, doc)


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise SpecError(f"cannot read {path}: {e}") from e


def function_document(f: FuncTable) -> dict:
    return {"group": f.group.spec, "table": f.tolist()}


def parse_affine(text: str, G: GroupTable) -> AffineMap:
    """`a0,a1,...[+c]`: sum a_i x^(p^i) + c, e.g. `3+1` is 3x + 1 over a prime field."""
    coeffs, _, constant = text.strip().partition("+")
    values = parse_int_list(coeffs, "coefficient")
    if not values:
        raise SpecError(f"affine map {text!r} has no coefficients")
    try:
        c = int(constant) if constant.strip() else 0
    except ValueError as e:
        raise SpecError(f"bad affine constant {constant!r}") from e
    return affine_from_coeffs(G, values, c)


def parse_family(text: str) -> FamilyPrediction:
    kind, _, rest = text.strip().partition(":")
    if kind == "quadchar":
        if not rest.isdigit():
            raise SpecError(f"quadchar needs a prime, got {rest!r}")
        return gen_quadratic_character(int(rest))
    if kind in ("ppoly", "monomial"):
        group_text, sep, arg = rest.rpartition(":")
        if not sep or not group_text:
            raise SpecError(f"{kind} spec needs <group>:<args>, got {text!r}")
        G = parse_group(group_text)
        if kind == "ppoly":
            return gen_p_polynomial(G, parse_int_list(arg, "coefficient"))
        if not arg.isdigit():
            raise SpecError(f"monomial exponent must be a non-negative integer, got {arg!r}")
        return planar_monomial_prediction(G, int(arg))
    raise SpecError(f"unknown family {kind!r} (expected ppoly, quadchar or monomial)")
