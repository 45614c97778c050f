"""Finite groups, finite fields and the lookup-table function type.

Every element of a group of order q is an integer code in 0..q-1.  Fields use the
base-p digits of the code as polynomial-basis coefficients, least significant digit
first (the constant term); cyclic products use mixed radix, first factor least
significant.
"""

import json
import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from pathlib import Path

import numpy as np
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_pow_mod, gf_rem, gf_strip

from permres.config import (
    CHECK_SEED, EXHAUSTIVE_CHECK_MAX_Q, FERMAT_CHECK_MAX_Q,
    IRREDUCIBLE_TABLE_MAX_Q, ORDER_LIMIT, SAMPLED_CHECKS,
)
from permres.errors import DomainError, GroupError, ParseError

log = logging.getLogger(__name__)

CYCLIC = "cyclic-product"
FIELD = "field-additive"
CAYLEY = "cayley"


@dataclass(frozen=True, eq=False)
class GroupTable:
    order: int
    kind: str
    structure: tuple
    add: np.ndarray = field(repr=False)
    neg: np.ndarray = field(repr=False)
    is_abelian: bool
    spec: str
    # field kind only
    p: int | None = None
    e: int | None = None
    modulus: tuple[int, ...] | None = None   # c0..ce, monic
    generator: int | None = None
    exp: np.ndarray | None = field(default=None, repr=False)
    log: np.ndarray | None = field(default=None, repr=False)

    @property
    def is_field(self) -> bool:
        return self.kind == FIELD

    def elements(self) -> range:
        return range(self.order)

    def plus(self, a: int, b: int) -> int:
        return int(self.add[a, b])

    def minus(self, a: int, b: int) -> int:
        """a + (-b)."""
        return int(self.add[a, self.neg[b]])

    def encode(self, digits) -> int:
        """Code of a digit vector (field coefficients or cyclic components)."""
        radices = self._radices()
        if len(digits) != len(radices):
            raise DomainError(f"{self.spec} elements have {len(radices)} digits, got {list(digits)}")
        code = 0
        scale = 1
        for d, r in zip(digits, radices):
            if not 0 <= d < r:
                raise DomainError(f"digit {d} out of range for radix {r}")
            code += d * scale
            scale *= r
        return code

    def _radices(self) -> tuple[int, ...]:
        if self.kind == FIELD:
            return (self.p,) * self.e
        if self.kind == CYCLIC:
            return self.structure
        return (self.order,)

    def __eq__(self, other):
        if not isinstance(other, GroupTable):
            return NotImplemented
        return self is other or (self.spec == other.spec and np.array_equal(self.add, other.add))

    def __hash__(self):
        return hash(self.spec)


def _require_field(G: GroupTable):
    if not G.is_field:
        raise GroupError(f"{G.spec} is not a field")


def _check_order(q: int):
    if q > ORDER_LIMIT:
        raise GroupError(f"order {q} exceeds limit {ORDER_LIMIT}")


def _digit_add_table(radices: tuple[int, ...]) -> np.ndarray:
    q = int(np.prod(radices))
    codes = np.arange(q, dtype=np.int64)
    table = np.zeros((q, q), dtype=np.int64)
    scale = 1
    for r in radices:
        d = (codes // scale) % r
        table += ((d[:, None] + d[None, :]) % r) * scale
        scale *= r
    return table


def _neg_from_add(add: np.ndarray) -> np.ndarray:
    # row x of the table holds 0 exactly at column -x
    rows, cols = np.nonzero(add == 0)
    neg = np.empty(add.shape[0], dtype=np.int64)
    neg[rows] = cols
    return neg


def make_cyclic_product(factors) -> GroupTable:
    factors = tuple(int(n) for n in factors)
    if not factors:
        raise GroupError("empty factor list")
    if any(n < 2 for n in factors):
        raise GroupError(f"cyclic factors must be >= 2, got {factors}")
    q = int(np.prod(factors))
    _check_order(q)
    add = _digit_add_table(factors)
    add.setflags(write=False)
    neg = _neg_from_add(add)
    neg.setflags(write=False)
    return GroupTable(
        order=q, kind=CYCLIC, structure=factors, add=add, neg=neg,
        is_abelian=True, spec="zn:" + "x".join(str(n) for n in factors),
    )


# --- polynomial plumbing over GF(p), sympy dense lists are highest degree first ---

def _code_to_gf(code: int, p: int, e: int) -> list[int]:
    digits = []
    for _ in range(e):
        digits.append(code % p)
        code //= p
    return gf_strip(digits[::-1])


def _gf_to_code(poly: list[int], p: int) -> int:
    code = 0
    for c in poly:
        code = code * p + int(c)
    return code


def is_irreducible(coeffs, p: int) -> bool:
    """`coeffs` constant term first."""
    poly = gf_strip([int(c) % p for c in coeffs][::-1])
    if len(poly) < 2:
        return False
    return bool(gf_irreducible_p(ZZ.map(poly), p, ZZ))


def _search_irreducible(p: int, e: int) -> tuple[int, ...]:
    if e == 1:
        return (0, 1)
    for lower in range(p ** e):
        coeffs = [(lower // p ** i) % p for i in range(e)] + [1]
        if coeffs[0] == 0:
            continue
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise GroupError(f"no irreducible polynomial of degree {e} over GF({p})")


_cached_irreducible = lru_cache(maxsize=None)(_search_irreducible)


def default_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Smallest-coded monic irreducible of degree e, constant term first."""
    if p ** e <= IRREDUCIBLE_TABLE_MAX_Q:
        return _cached_irreducible(p, e)
    return _search_irreducible(p, e)


def _primitive_element(p: int, e: int, modulus: list[int]) -> int:
    q = p ** e
    if q == 2:
        return 1
    cofactors = [(q - 1) // r for r in factorint(q - 1)]
    one = [1]
    for code in range(2, q):
        a = ZZ.map(_code_to_gf(code, p, e))
        if all(gf_pow_mod(a, k, modulus, p, ZZ) != one for k in cofactors):
            return code
    raise GroupError(f"no primitive element found for GF({p}^{e})")


@lru_cache(maxsize=64)
def make_field(p: int, e: int = 1, irreducible: tuple[int, ...] | None = None) -> GroupTable:
    """GF(p^e); `irreducible` is the monic modulus, constant term first."""
    p, e = int(p), int(e)
    if not isprime(p):
        raise GroupError(f"{p} is not prime")
    if e < 1:
        raise GroupError(f"extension degree must be >= 1, got {e}")
    q = p ** e
    _check_order(q)
    if irreducible is None:
        modulus = default_irreducible(p, e)
    else:
        modulus = tuple(int(c) % p for c in irreducible)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise GroupError(f"modulus must be monic of degree {e}: {list(irreducible)}")
        if not is_irreducible(modulus, p):
            raise GroupError(f"{format_coeffs(modulus)} is reducible over GF({p})")

    mod_gf = ZZ.map(list(modulus[::-1]))
    gen = _primitive_element(p, e, mod_gf)
    gen_gf = ZZ.map(_code_to_gf(gen, p, e))

    exp = np.empty(q - 1, dtype=np.int64)
    logs = np.full(q, -1, dtype=np.int64)
    cur = [1]
    for i in range(q - 1):
        code = _gf_to_code(cur, p)
        exp[i] = code
        logs[code] = i
        cur = gf_rem(gf_mul(cur, gen_gf, p, ZZ), mod_gf, p, ZZ)
    if (logs[1:] < 0).any():
        raise GroupError(f"generator {gen} does not span GF({p}^{e})*")

    add = _digit_add_table((p,) * e)
    neg = _neg_from_add(add)
    for arr in (add, neg, exp, logs):
        arr.setflags(write=False)

    spec = f"gf:{p}" if e == 1 else f"gf:{p}^{e}"
    if irreducible is not None:
        spec += ":" + ",".join(str(c) for c in modulus)
    G = GroupTable(
        order=q, kind=FIELD, structure=(p, e, modulus), add=add, neg=neg,
        is_abelian=True, spec=spec, p=p, e=e, modulus=modulus,
        generator=gen, exp=exp, log=logs,
    )
    check_field(G)
    log.debug("Built GF(%d^%d) modulus=%s generator=%d", p, e, modulus, gen)
    return G


def make_cayley(table, name: str = "cayley") -> GroupTable:
    """Group from an explicit addition table; identity must be element 0."""
    add = np.asarray(table, dtype=np.int64)
    if add.ndim != 2 or add.shape[0] != add.shape[1] or add.shape[0] == 0:
        raise GroupError("Cayley table must be a non-empty square array")
    q = add.shape[0]
    _check_order(q)
    if ((add < 0) | (add >= q)).any():
        raise GroupError("Cayley table entries out of range")
    elements = np.arange(q)
    if not (np.array_equal(add[0], elements) and np.array_equal(add[:, 0], elements)):
        raise GroupError("element 0 must be the identity")
    _check_latin(add, name)
    add.setflags(write=False)
    neg = _neg_from_add(add)
    neg.setflags(write=False)
    G = GroupTable(
        order=q, kind=CAYLEY, structure=(q,), add=add, neg=neg,
        is_abelian=bool(np.array_equal(add, add.T)), spec=name,
    )
    check_group(G)
    return G


def load_cayley(path) -> GroupTable:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise GroupError(f"cannot read Cayley table {path}: {e}") from e
    if data.get("order") != len(data.get("add", [])):
        raise GroupError(f"{path}: 'order' does not match the table")
    return make_cayley(data["add"], name=f"cayley:{path}")


def _check_latin(add: np.ndarray, spec: str):
    elements = np.arange(add.shape[0])
    rows_ok = (np.sort(add, axis=1) == elements[None, :]).all()
    cols_ok = (np.sort(add, axis=0) == elements[:, None]).all()
    if not (rows_ok and cols_ok):
        raise GroupError(f"{spec}: addition table is not a Latin square")


def check_group(G: GroupTable):
    """Latin square, inverses and associativity (exhaustive when small, sampled above)."""
    q = G.order
    add = G.add
    elements = np.arange(q)
    _check_latin(add, G.spec)
    if not (add[elements, G.neg] == 0).all():
        raise GroupError(f"{G.spec}: negation table is wrong")
    if q <= EXHAUSTIVE_CHECK_MAX_Q:
        left = add[add[:, :, None], elements[None, None, :]]    # (x+y)+z
        right = add[elements[:, None, None], add[None, :, :]]   # x+(y+z)
        ok = np.array_equal(left, right)
    else:
        rng = np.random.default_rng(CHECK_SEED)
        x, y, z = rng.integers(0, q, size=(3, SAMPLED_CHECKS))
        ok = np.array_equal(add[add[x, y], z], add[x, add[y, z]])
    if not ok:
        raise GroupError(f"{G.spec}: addition is not associative")


def check_field(G: GroupTable):
    """Multiplicative group, Fermat identity and inverses; distributivity spot-checked."""
    _require_field(G)
    q = G.order
    if sorted(G.exp.tolist()) != list(range(1, q)):
        raise GroupError(f"{G.spec}: nonzero elements do not form a cyclic group")
    mod_gf = ZZ.map(list(G.modulus[::-1]))
    if q <= FERMAT_CHECK_MAX_Q:
        for a in range(q):
            a_gf = ZZ.map(_code_to_gf(a, G.p, G.e))
            if _gf_to_code(gf_pow_mod(a_gf, q, mod_gf, G.p, ZZ), G.p) != a:
                raise GroupError(f"{G.spec}: a^q != a for a={a}")
        for a in range(1, q):
            if field_mul(G, a, field_inv(G, a)) != 1:
                raise GroupError(f"{G.spec}: {a} has no multiplicative inverse")
    rng = np.random.default_rng(CHECK_SEED)
    a, b, c = rng.integers(0, q, size=(3, min(SAMPLED_CHECKS, q ** 3)))
    lhs = mul_array(G, a, G.add[b, c])
    rhs = G.add[mul_array(G, a, b), mul_array(G, a, c)]
    if not np.array_equal(lhs, rhs):
        raise GroupError(f"{G.spec}: multiplication does not distribute over addition")


def mul_array(G: GroupTable, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    prod_ = G.exp[(G.log[a] + G.log[b]) % (G.order - 1)]
    return np.where((a == 0) | (b == 0), 0, prod_)


def field_mul(G: GroupTable, a: int, b: int) -> int:
    _require_field(G)
    if a == 0 or b == 0:
        return 0
    return int(G.exp[(G.log[a] + G.log[b]) % (G.order - 1)])


def field_inv(G: GroupTable, a: int) -> int:
    _require_field(G)
    if a == 0:
        raise DomainError("0 has no inverse")
    return int(G.exp[(-G.log[a]) % (G.order - 1)])


def field_pow(G: GroupTable, a: int, k: int) -> int:
    _require_field(G)
    if k == 0:
        return 1
    if a == 0:
        return 0
    return int(G.exp[(int(G.log[a]) * k) % (G.order - 1)])


def power_array(G: GroupTable, x, k: int) -> np.ndarray:
    """x^k elementwise, with 0^0 = 1."""
    x = np.asarray(x, dtype=np.int64)
    if k == 0:
        return np.ones_like(x)
    out = G.exp[(G.log[x] * k) % (G.order - 1)]
    return np.where(x == 0, 0, out)


def format_coeffs(coeffs) -> str:
    return "[" + ",".join(str(c) for c in coeffs) + "]"


# --- polynomials ---

@dataclass(frozen=True)
class Polynomial:
    """exponent -> nonzero coefficient code."""

    terms: dict[int, int]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def reduce_exponent(k: int, q: int) -> int:
    """Exponent of the same function on GF(q), using x^q = x."""
    if k < q:
        return k
    return (k - 1) % (q - 1) + 1


def make_poly(G: GroupTable, terms, reduce: bool = True) -> Polynomial:
    """`terms` maps exponent to coefficient, or lists (exponent, coefficient) pairs."""
    items = terms.items() if isinstance(terms, dict) else terms
    merged: dict[int, int] = {}
    for k, c in items:
        if k < 0:
            raise DomainError(f"negative exponent {k}")
        if reduce:
            k = reduce_exponent(k, G.order)
        merged[k] = G.plus(merged.get(k, 0), c)
    return Polynomial({k: c for k, c in sorted(merged.items()) if c != 0})


TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<x>x)|(?P<g>g)|(?P<op>[-+*^])|(?P<bad>\S))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while True:
        m = TOKEN_RE.match(text, pos)
        if m is None:   # only whitespace left
            break
        if m.lastgroup == "bad":
            raise ParseError(f"unexpected character {m.group('bad')!r}", text, m.start("bad"))
        tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_poly(text: str, G: GroupTable, generator: int | None = None,
               reduce: bool = True) -> Polynomial:
    """Parse `c*x^k`, `x^k`, `c`, `g^j*x^k` terms joined by + and -.

    Integer coefficients must lie in 0..p-1.  `g` is the field's generator for
    extension fields; over a prime field it needs an explicit `generator`.
    """
    _require_field(G)
    if generator is None and G.e > 1:
        generator = G.generator
    tokens = _tokenize(text)
    i = 0

    def peek():
        return tokens[i]

    def take(kind=None, value=None):
        nonlocal i
        tok = tokens[i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want}, found {tok[1] or 'end of input'!r}", text, tok[2])
        i += 1
        return tok

    def integer():
        return int(take("num")[1])

    def factor(coeff: int, exponent: int):
        kind, value, pos = peek()
        if kind == "num":
            n = integer()
            if n >= G.p:
                raise ParseError(f"coefficient {n} out of range for characteristic {G.p}", text, pos)
            coeff = field_mul(G, coeff, n)
        elif kind == "x":
            take()
            k = 1
            if peek()[1] == "^":
                take("op", "^")
                k = integer()
            exponent += k
        elif kind == "g":
            take()
            if generator is None:
                raise ParseError("'g' used over a prime field without a declared generator", text, pos)
            j = 1
            if peek()[1] == "^":
                take("op", "^")
                j = integer()
            coeff = field_mul(G, coeff, field_pow(G, generator, j))
        else:
            raise ParseError(f"expected a term, found {value or 'end of input'!r}", text, pos)
        return coeff, exponent

    terms: list[tuple[int, int]] = []
    sign = 1
    if peek()[1] in "+-" and peek()[0] == "op":
        sign = -1 if take()[1] == "-" else 1
    while True:
        coeff, exponent = factor(1, 0)
        while peek()[1] == "*":
            take("op", "*")
            coeff, exponent = factor(coeff, exponent)
        if sign < 0:
            coeff = int(G.neg[coeff])
        terms.append((exponent, coeff))
        kind, value, pos = peek()
        if kind == "end":
            break
        if kind == "op" and value in "+-":
            take()
            sign = -1 if value == "-" else 1
            continue
        raise ParseError(f"unexpected {value!r}", text, pos)

    return make_poly(G, terms, reduce=reduce)


def eval_poly(G: GroupTable, f: Polynomial) -> "FuncTable":
    _require_field(G)
    x = np.arange(G.order, dtype=np.int64)
    values = np.zeros(G.order, dtype=np.int64)
    for k, c in f.terms.items():
        term = mul_array(G, np.full_like(x, c), power_array(G, x, k))
        values = G.add[values, term]
    return FuncTable(G, values)


def p_polynomial(G: GroupTable, coeffs) -> Polynomial:
    """sum a_i x^(p^i) for coefficient codes a_0..a_(e-1)."""
    _require_field(G)
    coeffs = [int(c) for c in coeffs]
    if len(coeffs) > G.e:
        raise DomainError(f"{G.spec} takes at most {G.e} p-polynomial coefficients, got {len(coeffs)}")
    if any(not 0 <= c < G.order for c in coeffs):
        raise DomainError(f"p-polynomial coefficients must lie in 0..{G.order - 1}")
    return make_poly(G, [(G.p ** i, c) for i, c in enumerate(coeffs)])


def trace_table(G: GroupTable) -> "FuncTable":
    """Absolute trace x + x^p + ... + x^(p^(e-1))."""
    return eval_poly(G, p_polynomial(G, [1] * G.e))


# --- functions as lookup tables ---

@dataclass(frozen=True, eq=False)
class FuncTable:
    """A total function G -> G stored as its length-q value table."""

    group: GroupTable
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=np.int64).reshape(-1)
        q = self.group.order
        if values.shape[0] != q:
            raise DomainError(f"table has {values.shape[0]} entries, group order is {q}")
        if ((values < 0) | (values >= q)).any():
            raise DomainError(f"table values must lie in 0..{q - 1}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, G: GroupTable, c: int) -> "FuncTable":
        return cls(G, np.full(G.order, c))

    @classmethod
    def identity(cls, G: GroupTable) -> "FuncTable":
        return cls(G, np.arange(G.order))

    def __len__(self):
        return self.group.order

    def __getitem__(self, x):
        return int(self.values[x])

    def __iter__(self):
        return (int(v) for v in self.values)

    def tolist(self) -> list[int]:
        return [int(v) for v in self.values]

    def __eq__(self, other):
        if not isinstance(other, FuncTable):
            return NotImplemented
        return self.group == other.group and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.group.spec, self.values.tobytes()))

    def __repr__(self):
        return f"FuncTable({self.group.spec}, {self.tolist()})"

    def same_group(self, other: "FuncTable"):
        if self.group != other.group:
            raise DomainError(f"functions live on different groups: {self.group.spec}, {other.group.spec}")

    def __add__(self, other: "FuncTable") -> "FuncTable":
        """(self + other)(x) = self(x) + other(x)."""
        self.same_group(other)
        return FuncTable(self.group, self.group.add[self.values, other.values])

    def __sub__(self, other: "FuncTable") -> "FuncTable":
        """(self - other)(x) = self(x) + (-other(x))."""
        self.same_group(other)
        return FuncTable(self.group, self.group.add[self.values, self.group.neg[other.values]])

    def __neg__(self) -> "FuncTable":
        return FuncTable(self.group, self.group.neg[self.values])

    def image(self) -> list[int]:
        return np.unique(self.values).tolist()

    def image_size(self) -> int:
        return int(np.unique(self.values).shape[0])

    def is_permutation(self) -> bool:
        return self.image_size() == self.group.order

    def counts(self) -> np.ndarray:
        """#f^-1(b) for every b."""
        return np.bincount(self.values, minlength=self.group.order)

    def preimages(self) -> dict[int, list[int]]:
        classes: dict[int, list[int]] = {}
        for x, b in enumerate(self.values.tolist()):
            classes.setdefault(b, []).append(x)
        return classes


def all_tables(G: GroupTable):
    """Every function on G; q^q of them, meant for tiny groups."""
    for values in product(range(G.order), repeat=G.order):
        yield FuncTable(G, values)
