"""Closed-form families: p-polynomials, the quadratic character, planar monomials,
and the planar -> low differential uniformity pipeline."""

import logging
from typing import NamedTuple

import numpy as np
from sympy import isprime

from permres.algebra import FuncTable, GroupTable, eval_poly, make_field, make_poly, p_polynomial
from permres.config import PIPELINE_CAP
from permres.errors import DomainError, GroupError, ensure
from permres.functions import differential_uniformity, is_planar, uniformity
from permres.models import FamilyPrediction, PipelineCandidate, PipelineReport
from permres.solver import check_shift_set, feasible_shift_set, pres_exact

log = logging.getLogger(__name__)


class TaggedTable(NamedTuple):
    f: FuncTable
    exponent: int
    planar: bool


def _verified(f: FuncTable, g: FuncTable, expected: int, what: str):
    ensure((g + f).is_permutation(), f"{what}: g + f is not a permutation")
    ensure(g.image_size() == expected, f"{what}: witness has {g.image_size()} values, expected {expected}")


def gen_p_polynomial(G: GroupTable, coeffs) -> FamilyPrediction:
    """L = sum a_i x^(p^i) and its coset witness.

    Every image point of L has #ker L preimages.  P_j collects the j-th smallest
    member of each preimage class; g sends P_j to the j-th coset representative of
    im L, so (g + L)(P_j) is exactly that coset.
    """
    if not G.is_field:
        raise GroupError(f"{G.spec} is not a field")
    poly = p_polynomial(G, coeffs)
    L = eval_poly(G, poly)
    img = np.array(L.image())
    kernel = G.order // img.shape[0]

    reps = sorted({int(G.add[y, img].min()) for y in G.elements()})
    ensure(len(reps) == kernel, f"{len(reps)} cosets of im L, kernel has {kernel} elements")
    g = [0] * G.order
    for members in L.preimages().values():
        ensure(len(members) == kernel, "L is not uniform on its image")
        for j, x in enumerate(members):
            g[x] = reps[j]
    g = FuncTable(G, g)
    _verified(L, g, kernel, f"p-polynomial {poly}")
    ensure(uniformity(L) == kernel, "u(L) differs from #ker L")

    return FamilyPrediction(
        family="ppoly", group=G.spec, f=L.tolist(), predicted_pres=kernel,
        witness_g=g.tolist(), witness_shifts=g.image(), verified=True,
        source="p-polynomial coset construction", note=f"L = {poly}",
    )


def quadratic_character(p: int) -> FuncTable:
    G = make_field(p)
    return eval_poly(G, make_poly(G, {(p - 1) // 2: 1}))


def quadratic_character_parity_obstruction(p: int) -> bool:
    """True when a (p-1)/2-valued witness is ruled out.

    Such a g would force {y +- 1 : y in im g, y != 0} = {2, ..., p-2}; summing over
    the integers gives 2 * sum(y) = p(p-3)/2, which is odd for p = 1 mod 4.
    """
    return (p * (p - 3) // 2) % 2 == 1


def _quadchar_images(p: int) -> tuple[list[int], list[int]]:
    if p % 4 == 3:
        S = [0] + [v for t in range(1, (p - 3) // 4 + 1) for v in (4 * t - 1, 4 * t)]
        return S, S
    core = [0] + [v for t in range(1, (p - 5) // 4 + 1) for v in (4 * t - 1, 4 * t)]
    return core + [p - 3], core + [p - 2]


def gen_quadratic_character(p: int) -> FamilyPrediction:
    if p == 2 or not isprime(p):
        raise DomainError(f"quadratic character needs an odd prime, got {p}")
    f = quadratic_character(p)
    G = f.group
    predicted = (p - 1) // 2 if p % 4 == 3 else (p + 1) // 2

    if p in (3, 5):
        log.warning("p=%d lies outside the closed-form witnesses, solving exactly", p)
        cert = pres_exact(f)
        ensure(cert.pres == predicted, f"p={p}: solver gives {cert.pres}, expected {predicted}")
        return FamilyPrediction(
            family="quadchar", group=G.spec, f=f.tolist(), predicted_pres=predicted,
            witness_g=cert.g, witness_shifts=cert.shifts, verified=cert.verified,
            source="matching-search", note=f"p={p} solved exactly",
        )

    plus_one, minus_one = _quadchar_images(p)
    classes = f.preimages()
    g = [0] * p
    for b, images in ((1, plus_one), (p - 1, minus_one)):
        for x, y in zip(classes[b], images):
            g[x] = y
    g = FuncTable(G, g)
    _verified(f, g, predicted, f"quadratic character p={p}")

    note = "p = 3 mod 4" if p % 4 == 3 else "p = 1 mod 4, (p-1)/2 excluded by parity"
    return FamilyPrediction(
        family="quadchar", group=G.spec, f=f.tolist(), predicted_pres=predicted,
        witness_g=g.tolist(), witness_shifts=g.image(), verified=True,
        source="quadratic character construction", note=note,
    )


def gen_planar_monomial(G: GroupTable, exponent: int) -> TaggedTable:
    if not G.is_field:
        raise GroupError(f"{G.spec} is not a field")
    if G.p == 2:
        raise DomainError("no planar functions exist in characteristic 2")
    if exponent < 0:
        raise DomainError(f"negative exponent {exponent}")
    f = eval_poly(G, make_poly(G, {exponent: 1}))
    planar = is_planar(f)
    log.debug("x^%d over %s planar=%s", exponent, G.spec, planar)
    return TaggedTable(f, exponent, planar)


def planar_monomial_prediction(G: GroupTable, exponent: int) -> FamilyPrediction:
    f, _, planar = gen_planar_monomial(G, exponent)
    q = G.order
    lower, upper = uniformity(f), q - f.image_size() + 1
    if planar:
        upper = min(upper, (q + 1) // 2)
        if q > 5 and _two_to_one(f):
            lower = max(lower, 3)
    note = "planar" if planar else "not planar"
    return FamilyPrediction(
        family="monomial", group=G.spec, f=f.tolist(), predicted_range=(lower, upper),
        source="planar image bound" if planar else "general bounds", note=note,
    )


def _two_to_one(f: FuncTable) -> bool:
    counts = f.counts()
    return f[0] == 0 and counts[0] == 1 and all(c in (0, 2) for c in counts[1:].tolist())


def shift_difference_condition(f: FuncTable, C) -> bool:
    """f(x) - f(y) avoids every c_i - c_j (i != j) for nonzero x, y."""
    G = f.group
    if f[0] != 0:
        raise DomainError("shift-difference condition needs f(0) = 0")
    C = np.array(check_shift_set(C, G.order))
    shifts = G.add[C[:, None], G.neg[C][None, :]]
    forbidden = set(shifts[~np.eye(len(C), dtype=bool)].tolist())
    vals = np.unique(f.values[1:])
    diffs = set(G.add[vals[:, None], G.neg[vals][None, :]].ravel().tolist())
    return not (diffs & forbidden)


def lowdu_pipeline(f: FuncTable, candidate_cap: int = PIPELINE_CAP, jobs: int | None = None,
                   max_sets: int | None = None, time_limit: float | None = None) -> PipelineReport:
    """Permutations g + f from the optimal witnesses of f, with their differential uniformity."""
    G = f.group
    if candidate_cap < 1:
        raise DomainError(f"candidate cap must be positive, got {candidate_cap}")
    delta_f = differential_uniformity(f)
    planar = delta_f == 1
    if not planar:
        log.info("f is not planar (delta=%d), using the general bound", delta_f)
    cert = pres_exact(f, jobs=jobs, enumerate_all_optimal=True, keep=candidate_cap,
                      max_sets=max_sets, time_limit=time_limit)
    report = PipelineReport(group=G.spec, f=f.tolist(), planar=planar, delta_f=delta_f,
                            pres=cert.pres, bound=None, status=cert.status)
    if cert.pres is None:
        log.warning("pres undetermined, no candidates")
        return report

    k = cert.pres
    bound = delta_f * (k * k - k + 1)
    report.bound = bound
    for shifts in cert.optimal_shifts[:candidate_cap]:
        g = feasible_shift_set(f, shifts)
        ensure(g is not None, f"optimal shift set {shifts} has no witness")
        h = g + f
        ensure(h.is_permutation(), "g + f is not a permutation")
        delta = differential_uniformity(h)
        report.candidates.append(PipelineCandidate(
            shifts=list(shifts), g=g.tolist(), delta=delta, within_bound=delta <= bound,
        ))
    deltas = [c.delta for c in report.candidates]
    report.best_delta = min(deltas)
    ensure(report.best_delta <= bound, f"best delta {report.best_delta} exceeds {bound}")
    report.differing_du = len(set(deltas)) > 1
    log.info("%d candidates, best delta %d, bound %d", len(deltas), report.best_delta, bound)
    return report
