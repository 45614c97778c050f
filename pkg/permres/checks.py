"""Verification suites: randomized and exhaustive sweeps over the identities
and constructions the library implements.  Each suite returns one CheckResult per check;
an IdentityViolation inside a check is recorded as a failure, not raised."""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from permres.algebra import (
    FuncTable, GroupTable, eval_poly, make_cyclic_product, make_field, make_poly, trace_table,
)
from permres.config import CHECK_SEED, VERIFY_P_LIST, VERIFY_Q_MAX, VERIFY_SAMPLES
from permres.equivalence import (
    AffineMap, affine_from_coeffs, affine_transform, compose_left, compose_right, ea_transform,
    is_additive, parse_cycles, random_affine_permutation, random_permutation,
)
from permres.errors import PermresError, SpecError
from permres.families import (
    gen_p_polynomial, gen_planar_monomial, gen_quadratic_character, lowdu_pipeline,
    quadratic_character, quadratic_character_parity_obstruction, shift_difference_condition,
)
from permres.functions import (
    ambiguity, derivative_imbalance, difference_operator, difference_set_size, du_bound_holds,
    generating_poly_derivative_at_one, generating_poly_eval, imbalance, is_planar, m0_from_ns,
    n_s, n_s_enumerated, preimage_distribution, pres_bounds, uniformity,
)
from permres.models import CheckResult, SuiteSummary
from permres.solver import construct_upper_bound_g, pres_exact, pres_oracle_bruteforce
from permres.specs import parse_group

log = logging.getLogger(__name__)


@dataclass
class SuiteOptions:
    q_max: int = VERIFY_Q_MAX
    samples: int = VERIFY_SAMPLES
    p_list: tuple[int, ...] = VERIFY_P_LIST
    fields: list[str] = field(default_factory=list)   # empty: each suite's defaults
    seed: int = CHECK_SEED
    jobs: int | None = None

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def field_groups(self, defaults: list[str]) -> list[GroupTable]:
        groups = [parse_group(s) for s in (self.fields or defaults)]
        return [G for G in groups if G.order <= self.q_max or self.fields]


def _check(suite: str, name: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    try:
        passed, detail = fn()
    except PermresError as e:
        passed, detail = False, f"{type(e).__name__}: {e.detail}"
    if not passed:
        log.warning("%s/%s failed: %s", suite, name, detail)
    return CheckResult(suite=suite, check=name, passed=passed, detail=detail)


def _random_function(G: GroupTable, rng: np.random.Generator) -> FuncTable:
    return FuncTable(G, rng.integers(0, G.order, size=G.order))


def _sweep(functions, test: Callable[[FuncTable], str | None]) -> tuple[bool, str]:
    """Run `test` over functions; it returns an error string or None."""
    n = 0
    for f in functions:
        n += 1
        err = test(f)
        if err:
            return False, f"{f.tolist()}: {err}"
    return True, f"{n} functions"


def _square(G: GroupTable) -> FuncTable:
    return eval_poly(G, make_poly(G, {2: 1}))


def _pres(f: FuncTable, opts: SuiteOptions) -> int:
    cert = pres_exact(f, jobs=opts.jobs)
    if cert.pres is None:
        raise SpecError(f"solver budget exhausted on {f!r}")
    return cert.pres


# --- suites ---

def suite_bounds(opts: SuiteOptions) -> list[CheckResult]:
    rng = opts.rng()
    out = []
    for spec in ("zn:5", "zn:6", "gf:7", "gf:8", "gf:9"):
        G = parse_group(spec)
        if G.order > opts.q_max:
            continue

        def test(f, G=G):
            b = pres_bounds(f)
            k = _pres(f, opts)
            if not b.lower <= k <= b.upper:
                return f"pres {k} outside [{b.lower}, {b.upper}]"
            if (k == 1) != f.is_permutation() or (k == G.order) != (f.image_size() == 1):
                return f"pres {k} contradicts the permutation/constant extremes"
            g = construct_upper_bound_g(f)
            if g.image_size() > b.upper:
                return "constructed g exceeds the upper bound"
            return None

        funcs = [FuncTable.identity(G), FuncTable.constant(G, 0)]
        funcs += [_random_function(G, rng) for _ in range(opts.samples)]
        out.append(_check("bounds", spec, lambda t=test, fs=funcs: _sweep(fs, t)))
    return out


def suite_bounds_equality(opts: SuiteOptions) -> list[CheckResult]:
    out = []

    def test(f):
        b = pres_bounds(f)
        if b.lb_eq_ub != b.char_holds:
            return "lb = ub disagrees with the single-collision shape"
        if b.lb_eq_ub and f.group.order <= 5 and _pres(f, opts) != b.lower:
            return "lb = ub but pres differs"
        return None

    for n in range(2, min(opts.q_max, 5) + 1):
        G = make_cyclic_product([n])
        funcs = (FuncTable(G, v) for v in product(range(n), repeat=n))
        out.append(_check("bounds-equality", f"zn:{n} exhaustive", lambda fs=funcs: _sweep(fs, test)))
    rng = opts.rng()
    for G in opts.field_groups(["gf:7", "gf:11", "gf:13"]):
        funcs = [_random_function(G, rng) for _ in range(opts.samples)]
        out.append(_check("bounds-equality", f"{G.spec} random", lambda fs=funcs: _sweep(fs, test)))
    return out


def suite_p_polynomial(opts: SuiteOptions) -> list[CheckResult]:
    rng = opts.rng()
    out = []
    for G in opts.field_groups(["gf:4", "gf:8", "gf:9", "gf:16", "gf:27"]):
        if G.e == 1 and not opts.fields:
            continue
        trials = [[0] * (G.e - 1) + [1], [1] * G.e]
        while len(trials) < min(opts.samples, 10):
            trials.append(rng.integers(0, G.order, size=G.e).tolist())

        def run(G=G, trials=trials):
            for coeffs in trials:
                pred = gen_p_polynomial(G, coeffs)
                f = FuncTable(G, pred.f)
                if uniformity(f) != pred.predicted_pres:
                    return False, f"{coeffs}: u(L) != #ker L"
                k = _pres(f, opts)
                if k != pred.predicted_pres:
                    return False, f"{coeffs}: solver {k}, predicted {pred.predicted_pres}"
            return True, f"{len(trials)} p-polynomials"

        out.append(_check("p-polynomial", G.spec, run))
    return out


def suite_quadratic_character(opts: SuiteOptions) -> list[CheckResult]:
    out = []
    for p in opts.p_list:
        def run(p=p):
            pred = gen_quadratic_character(p)
            k = _pres(quadratic_character(p), opts)
            if k != pred.predicted_pres:
                return False, f"solver {k}, predicted {pred.predicted_pres}"
            if quadratic_character_parity_obstruction(p) != (p % 4 == 1):
                return False, "parity obstruction does not track p mod 4"
            return True, f"pres {k}, witness image {pred.witness_shifts}"

        out.append(_check("quadratic-character", f"p={p}", run))
    return out


def suite_right_invariance(opts: SuiteOptions) -> list[CheckResult]:
    rng = opts.rng()
    out = []
    for G in opts.field_groups(["gf:7", "gf:9"]):
        f = _square(G)

        def run(G=G, f=f):
            base = _pres(f, opts)
            counts = sorted(f.counts().tolist())
            n = min(opts.samples, 50)
            for _ in range(n):
                phi = random_permutation(G, rng)
                h = compose_right(f, phi)
                if h.image() != f.image() or sorted(h.counts().tolist()) != counts:
                    return False, f"image changed under phi={phi.tolist()}"
                if _pres(h, opts) != base:
                    return False, f"pres changed under phi={phi.tolist()}"
            return True, f"pres {base} over {n} permutations"

        out.append(_check("right-invariance", G.spec, run))
    return out


def suite_affine_invariance(opts: SuiteOptions) -> list[CheckResult]:
    rng = opts.rng()
    out = []
    for G in opts.field_groups(["gf:7", "gf:9"]):
        f = _square(G)

        def run(G=G, f=f):
            base = _pres(f, opts)
            n = min(opts.samples, 50)
            for _ in range(n):
                A1, A2 = random_affine_permutation(G, rng), random_affine_permutation(G, rng)
                if _pres(affine_transform(f, A1, A2), opts) != base:
                    return False, f"pres changed under A1={A1.table().tolist()} A2={A2.table().tolist()}"
            return True, f"pres {base} over {n} affine pairs"

        out.append(_check("affine-invariance", G.spec, run))
    return out


def suite_left_counterexample(opts: SuiteOptions) -> list[CheckResult]:
    G = make_field(7)
    f = _square(G)

    def run():
        phi = FuncTable(G, parse_cycles("(0)(1)(2345)(6)", 7))
        h = compose_left(phi, f)
        a, b = _pres(f, opts), _pres(h, opts)
        if h.image_size() != f.image_size():
            return False, "V changed under left composition"
        return (a == 3 and b == 2), f"pres(x^2) = {a}, pres(phi o x^2) = {b}"

    def additive():
        rng = opts.rng()
        base = _pres(f, opts)
        for _ in range(min(opts.samples, 20)):
            phi = affine_from_coeffs(G, [int(rng.integers(1, 7))]).linear
            if not is_additive(phi) or _pres(compose_left(phi, f), opts) != base:
                return False, f"additive phi={phi.tolist()} changed pres"
        return True, f"pres {base} kept by additive permutations"

    return [_check("left-counterexample", "(2345) o x^2 over gf:7", run),
            _check("left-counterexample", "additive left maps", additive)]


def suite_ea_counterexample(opts: SuiteOptions) -> list[CheckResult]:
    out = []
    for spec in ("gf:4", "gf:8"):
        G = parse_group(spec)

        def run(G=G):
            x = FuncTable.identity(G)
            tr = trace_table(G)
            A3 = AffineMap(tr - x)
            h = ea_transform(x, AffineMap.identity(G), AffineMap.identity(G), A3)
            if h != tr:
                return False, "EA transform of x is not the trace"
            a, b = _pres(x, opts), _pres(h, opts)
            return (a == 1 and b > 1), f"pres(x) = {a}, pres(Tr) = {b}"

        out.append(_check("ea-counterexample", spec, run))
    return out


def suite_du_bound(opts: SuiteOptions) -> list[CheckResult]:
    out = []
    for G in opts.field_groups(["gf:7", "gf:9", "gf:11", "gf:13"]):
        def pipeline(G=G):
            report = lowdu_pipeline(_square(G), jobs=opts.jobs)
            bad = [c for c in report.candidates if not c.within_bound]
            if bad:
                return False, f"delta {bad[0].delta} > {report.bound} for shifts {bad[0].shifts}"
            return True, (f"pres {report.pres}, {len(report.candidates)} candidates, "
                          f"best delta {report.best_delta}, bound {report.bound}")

        out.append(_check("du-bound", f"x^2 over {G.spec}", pipeline))

    G = make_field(7)
    rng = opts.rng()

    def general():
        n = min(opts.samples, 100)
        for _ in range(n):
            f, g = _random_function(G, rng), _random_function(G, rng)
            v = g.image_size()
            if difference_set_size(g) > v * (v - 1) + 1:
                return False, f"difference set of {g.tolist()} too large"
            if not du_bound_holds(f, g):
                return False, f"bound fails for f={f.tolist()} g={g.tolist()}"
        return True, f"{n} random (f, g) pairs"

    out.append(_check("du-bound", "random pairs over gf:7", general))
    return out


def suite_planar(opts: SuiteOptions) -> list[CheckResult]:
    out = []
    for G in opts.field_groups(["gf:3", "gf:5", "gf:7", "gf:9", "gf:11", "gf:13"]):
        q = G.order

        def run(G=G, q=q):
            f, _, planar = gen_planar_monomial(G, 2)
            if not planar:
                return False, "x^2 is not planar"
            if 2 * f.image_size() < q + 1:
                return False, f"V = {f.image_size()} < (q+1)/2"
            k = _pres(f, opts)
            if not k <= (q + 1) // 2 or (q > 5 and k <= 2):
                return False, f"pres {k} outside (2, (q+1)/2]"
            return True, f"pres {k}"

        out.append(_check("planar", f"x^2 over {G.spec}", run))

    def even():
        G = make_field(2, 3)
        hits = [d for d in range(G.order) if is_planar(eval_poly(G, make_poly(G, {d: 1})))]
        return not hits, f"planar monomials over gf:2^3: {hits}"

    out.append(_check("planar", "no planar monomial in characteristic 2", even))
    return out


def _d_to_one(G: GroupTable, d: int, rng: np.random.Generator) -> FuncTable:
    nonzero = rng.permutation(np.arange(1, G.order))
    images = rng.permutation(np.arange(1, G.order))[: (G.order - 1) // d]
    values = np.zeros(G.order, dtype=np.int64)
    for i, x in enumerate(nonzero):
        values[x] = images[i // d]
    return FuncTable(G, values)


def suite_shift_difference(opts: SuiteOptions) -> list[CheckResult]:
    def quadchar7():
        ok = shift_difference_condition(quadratic_character(7), [0, 3, 4])
        return ok, "C = {0, 3, 4}"

    def solver_witnesses():
        rng = opts.rng()
        G = make_field(7)
        tested = 0
        funcs = [quadratic_character(p) for p in opts.p_list if p % 4 == 3]
        funcs += [_d_to_one(G, d, rng) for d in (2, 3) for _ in range(min(opts.samples, 30))]
        for f in funcs:
            d = uniformity(f)
            cert = pres_exact(f, jobs=opts.jobs)
            if cert.pres == d:
                tested += 1
                if not shift_difference_condition(f, cert.shifts):
                    return False, f"{f.tolist()} witness {cert.shifts} violates the condition"
        return True, f"{tested} functions with pres = u"

    return [_check("shift-difference", "quadratic character p=7", quadchar7),
            _check("shift-difference", "solver witnesses", solver_witnesses)]


def _small_groups(q_max: int) -> list[GroupTable]:
    groups = [make_cyclic_product([n]) for n in range(2, min(q_max, 16) + 1)]
    groups += [make_cyclic_product([2, 2])]
    groups += [make_field(p, e) for p, e in ((2, 2), (2, 3), (3, 2), (2, 4)) if p ** e <= q_max]
    return groups


def suite_m0_identity(opts: SuiteOptions) -> list[CheckResult]:
    rng = opts.rng()
    groups = _small_groups(opts.q_max)

    def test(f):
        q = f.group.order
        dist = preimage_distribution(f, length=q + 1)
        if sum(dist.m) != q or sum(r * m for r, m in enumerate(dist.m)) != q:
            return "preimage counts do not sum to q"
        rep = m0_from_ns(f)
        if rep.m0 != dist.m[0] or not rep.lower <= rep.m0 <= rep.upper:
            return "M_0 outside its truncation bounds"
        for z in (0, 2, Fraction(1, 2)):
            generating_poly_eval(f, z)
        if generating_poly_eval(f, 1) != q or generating_poly_derivative_at_one(f) != q:
            return "P_f(1) or P_f'(1) differs from q"
        n2 = n_s(f, 2) if dist.u >= 2 else 0
        if imbalance(f) != n2 or 2 * dist.v < 2 * q - n2:
            return "Nb != N_2 or V < q - N_2/2"
        if q <= 10:
            for s in range(2, min(dist.u, 3) + 1):
                if n_s(f, s) != n_s_enumerated(f, s):
                    return f"N_{s} formula disagrees with enumeration"
        return None

    def funcs():
        for i in range(opts.samples):
            yield _random_function(groups[i % len(groups)], rng)

    return [_check("m0-identity", f"{opts.samples} functions over {len(groups)} groups",
                   lambda: _sweep(funcs(), test))]


def suite_ambiguity(opts: SuiteOptions) -> list[CheckResult]:
    rng = opts.rng()
    groups = _small_groups(opts.q_max)

    def test(f):
        amb = ambiguity(f)
        if 2 * amb.ambiguity != derivative_imbalance(f):
            return "A(f) != NB_f / 2"
        for a, row in enumerate(amb.rows, start=1):
            delta = difference_operator(f, a)
            if 2 * row != n_s(delta, 2):
                return f"row {a} ambiguity != N_2(Delta)/2"
        return None

    def funcs():
        for i in range(opts.samples):
            yield _random_function(groups[i % len(groups)], rng)

    return [_check("ambiguity", f"{opts.samples} functions", lambda: _sweep(funcs(), test))]


def suite_oracle(opts: SuiteOptions) -> list[CheckResult]:
    rng = opts.rng()
    out = []
    for spec in ("zn:5", "zn:6", "gf:7", "zn:2x4", "gf:8"):
        G = parse_group(spec)
        if G.order > min(opts.q_max, 8):
            continue

        def test(f):
            a, b = _pres(f, opts), pres_oracle_bruteforce(f)
            return None if a == b else f"solver {a}, oracle {b}"

        # q! grows fast; order-8 groups get a smaller sample
        n = opts.samples if G.order <= 7 else min(opts.samples, 20)
        funcs = [_random_function(G, rng) for _ in range(n)]
        out.append(_check("oracle", spec, lambda t=test, fs=funcs: _sweep(fs, t)))

    G = make_field(7)
    named = {
        "f = [0,0,2,2,4,4,6]": FuncTable(G, [0, 0, 2, 2, 4, 4, 6]),
        "h = [0,0,0,3,4,5,6]": FuncTable(G, [0, 0, 0, 3, 4, 5, 6]),
        "x^2": _square(G),
        "x^3": quadratic_character(7),
    }

    def agree(f):
        a, b = _pres(f, opts), pres_oracle_bruteforce(f)
        return a == b, f"solver {a}, oracle {b}"

    for name, f in named.items():
        out.append(_check("oracle", name, lambda f=f: agree(f)))
    return out


SUITES: dict[str, Callable[[SuiteOptions], list[CheckResult]]] = {
    "bounds": suite_bounds,
    "bounds-equality": suite_bounds_equality,
    "p-polynomial": suite_p_polynomial,
    "quadratic-character": suite_quadratic_character,
    "right-invariance": suite_right_invariance,
    "affine-invariance": suite_affine_invariance,
    "left-counterexample": suite_left_counterexample,
    "ea-counterexample": suite_ea_counterexample,
    "du-bound": suite_du_bound,
    "planar": suite_planar,
    "shift-difference": suite_shift_difference,
    "m0-identity": suite_m0_identity,
    "ambiguity": suite_ambiguity,
    "oracle": suite_oracle,
}

# short names accepted for the same suites
SUITE_ALIASES: dict[str, str] = {
    "thm2.1": "bounds",
    "thm2.2": "bounds-equality",
    "thm2.3": "p-polynomial",
    "thm2.4": "quadratic-character",
    "eq5": "quadratic-character",
    "cor3.2": "right-invariance",
    "thm3.3": "affine-invariance",
    "thm4.1": "du-bound",
    "lemma4.2": "planar",
    "thm4.5": "planar",
    "lemma4.4": "shift-difference",
    "thm5.1": "m0-identity",
    "a=nb/2": "ambiguity",
}


def resolve_suites(names: list[str]) -> list[str]:
    """Expand `all` and aliases; each suite runs once, in first-mention order."""
    if "all" in names:
        return list(SUITES)
    resolved = [SUITE_ALIASES.get(n.lower(), n) for n in names]
    unknown = [n for n, r in zip(names, resolved) if r not in SUITES]
    if unknown:
        raise SpecError(f"unknown suite(s) {unknown}; choose from "
                        f"{sorted([*SUITES, *SUITE_ALIASES])} or 'all'")
    return list(dict.fromkeys(resolved))


def run_suites(names: list[str], opts: SuiteOptions | None = None) -> SuiteSummary:
    opts = opts or SuiteOptions()
    names = resolve_suites(names)
    results: list[CheckResult] = []
    for name in names:
        batch = SUITES[name](opts)
        failed = sum(not r.passed for r in batch)
        log.info("Suite %s: %d checks, %d failed", name, len(batch), failed)
        results.extend(batch)
    return SuiteSummary(suites=names, total=len(results),
                        failed=sum(not r.passed for r in results), results=results)
