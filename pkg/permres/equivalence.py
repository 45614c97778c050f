"""Composition, affine and extended-affine transforms, and permutation notation."""

import json
import logging
import re
from dataclasses import dataclass

import numpy as np

from permres.algebra import FuncTable, GroupTable, eval_poly, p_polynomial
from permres.config import CHECK_SEED, EXHAUSTIVE_CHECK_MAX_Q, SAMPLED_CHECKS
from permres.errors import DomainError, ParseError, SpecError

log = logging.getLogger(__name__)


def is_additive(phi: FuncTable, samples: int = SAMPLED_CHECKS) -> bool:
    """phi(x + y) = phi(x) + phi(y); exhaustive for small groups, sampled above."""
    G = phi.group
    q = G.order
    v = phi.values
    if q <= EXHAUSTIVE_CHECK_MAX_Q:
        return bool(np.array_equal(v[G.add], G.add[v[:, None], v[None, :]]))
    rng = np.random.default_rng(CHECK_SEED)
    x, y = rng.integers(0, q, size=(2, samples))
    return bool(np.array_equal(v[G.add[x, y]], G.add[v[x], v[y]]))


@dataclass(frozen=True)
class AffineMap:
    """x -> linear(x) + constant with `linear` additive."""

    linear: FuncTable
    constant: int = 0

    def __post_init__(self):
        G = self.linear.group
        if not 0 <= self.constant < G.order:
            raise DomainError(f"constant {self.constant} is not an element of {G.spec}")
        if not is_additive(self.linear):
            raise DomainError("linear part of an affine map is not additive")

    @property
    def group(self) -> GroupTable:
        return self.linear.group

    def table(self) -> FuncTable:
        return self.linear + FuncTable.constant(self.group, self.constant)

    def is_permutation(self) -> bool:
        return self.linear.is_permutation()

    @classmethod
    def identity(cls, G: GroupTable) -> "AffineMap":
        return cls(FuncTable.identity(G))

    @classmethod
    def zero(cls, G: GroupTable) -> "AffineMap":
        return cls(FuncTable.constant(G, 0))


def affine_from_coeffs(G: GroupTable, coeffs, constant: int = 0) -> AffineMap:
    """sum a_i x^(p^i) + constant."""
    return AffineMap(eval_poly(G, p_polynomial(G, coeffs)), int(constant))


def _require_permutation(phi: FuncTable, what: str):
    if not phi.is_permutation():
        raise DomainError(f"{what} is not a permutation")


def compose_right(f: FuncTable, phi: FuncTable) -> FuncTable:
    """f o phi."""
    f.same_group(phi)
    _require_permutation(phi, "phi")
    return FuncTable(f.group, f.values[phi.values])


def compose_left(phi: FuncTable, f: FuncTable) -> FuncTable:
    """phi o f."""
    f.same_group(phi)
    _require_permutation(phi, "phi")
    return FuncTable(f.group, phi.values[f.values])


def affine_transform(f: FuncTable, A1: AffineMap, A2: AffineMap) -> FuncTable:
    """A1 o f o A2."""
    if not (A1.is_permutation() and A2.is_permutation()):
        raise DomainError("affine transform needs affine permutations")
    return compose_left(A1.table(), compose_right(f, A2.table()))


def ea_transform(f: FuncTable, A1: AffineMap, A2: AffineMap, A3: AffineMap) -> FuncTable:
    """A2 o f o A1 + A3."""
    if not (A1.is_permutation() and A2.is_permutation()):
        raise DomainError("EA transform needs affine permutations A1 and A2")
    return compose_left(A2.table(), compose_right(f, A1.table())) + A3.table()


CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, q: int) -> list[int]:
    """Cycle notation `(0)(1)(2345)(6)` or `(2 3 4 5)` / `(2,3,4,5)` as a one-line table.

    Unlisted points are fixed.  A cycle without separators is read digit by digit,
    which is only accepted when q <= 10.
    """
    stripped = text.strip()
    if not stripped:
        return list(range(q))
    pos = 0
    perm = list(range(q))
    seen: set[int] = set()
    for m in CYCLE_RE.finditer(stripped):
        if stripped[pos:m.start()].strip():
            raise ParseError("text outside a cycle", stripped, pos)
        pos = m.end()
        body = m.group(1).strip()
        if not body:
            raise ParseError("empty cycle", stripped, m.start())
        if re.fullmatch(r"\d+", body) and len(body) > 1:
            if q > 10:
                raise ParseError(f"cycle {body!r} needs separators when q > 10", stripped, m.start(1))
            points = [int(ch) for ch in body]
        else:
            parts = [t for t in re.split(r"[\s,]+", body) if t]
            if not all(t.isdigit() for t in parts):
                raise ParseError(f"bad cycle {body!r}", stripped, m.start(1))
            points = [int(t) for t in parts]
        for x in points:
            if x >= q:
                raise ParseError(f"point {x} out of range for q={q}", stripped, m.start(1))
            if x in seen:
                raise ParseError(f"point {x} appears twice", stripped, m.start(1))
            seen.add(x)
        for a, b in zip(points, points[1:] + points[:1]):
            perm[a] = b
    if stripped[pos:].strip():
        raise ParseError("text outside a cycle", stripped, pos)
    return perm


def parse_one_line(text: str, q: int) -> list[int]:
    try:
        values = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"one-line permutation is not JSON: {e.msg}", text, e.pos) from e
    if not isinstance(values, list) or len(values) != q or sorted(values) != list(range(q)):
        raise SpecError(f"one-line permutation must list 0..{q - 1} once each")
    return values


def parse_permutation(text: str, G: GroupTable) -> FuncTable:
    text = text.strip()
    values = parse_one_line(text, G.order) if text.startswith("[") else parse_cycles(text, G.order)
    return FuncTable(G, values)


def random_permutation(G: GroupTable, rng: np.random.Generator) -> FuncTable:
    return FuncTable(G, rng.permutation(G.order))


def random_affine_permutation(G: GroupTable, rng: np.random.Generator) -> AffineMap:
    """Random bijective p-polynomial plus a random constant."""
    if not G.is_field:
        raise DomainError(f"{G.spec} is not a field")
    while True:
        coeffs = rng.integers(0, G.order, size=G.e).tolist()
        A = affine_from_coeffs(G, coeffs, int(rng.integers(0, G.order)))
        if A.is_permutation():
            return A
