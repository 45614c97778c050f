"""Preimage statistics, difference operators and the identities tying them together."""

import logging
from fractions import Fraction
from itertools import permutations
from math import comb, factorial, perm

import numpy as np

from permres.algebra import FuncTable, GroupTable
from permres.errors import ConventionError, DomainError, ensure
from permres.models import (
    AmbiguityReport, BoundsReport, M0Report, NsUpperBound,
    PreimageDistribution, StatsReport, Truncation,
)

log = logging.getLogger(__name__)


def _require_abelian(G: GroupTable, acknowledge_convention: bool):
    if not G.is_abelian and not acknowledge_convention:
        raise ConventionError(
            f"{G.spec} is nonabelian; difference operators need acknowledge_convention=True "
            "(convention: f(x+a) + (-f(x)))"
        )


def preimage_distribution(f: FuncTable, length: int | None = None) -> PreimageDistribution:
    """M_0..M_u, or zero-padded to `length` entries (at least u + 1)."""
    counts = f.counts()
    u = int(counts.max())
    q = f.group.order
    if length is not None and length < u + 1:
        raise DomainError(f"distribution of {f!r} needs {u + 1} entries, got length {length}")
    m = np.bincount(counts, minlength=length or 0).tolist()
    return PreimageDistribution(q=q, m=m, u=u, v=q - m[0])


def uniformity(f: FuncTable) -> int:
    return int(f.counts().max())


def n_s(f: FuncTable, s: int) -> int:
    """Ordered s-tuples of distinct points sharing one image."""
    if s < 2:
        raise DomainError(f"N_s needs s >= 2, got {s}")
    dist = preimage_distribution(f)
    return _n_s_from_m(dist.m, s)


def _n_s_from_m(m: list[int], s: int) -> int:
    return sum(perm(r, s) * m[r] for r in range(s, len(m)))


def n_s_enumerated(f: FuncTable, s: int) -> int:
    """Direct count over ordered tuples; exponential, kept for cross-checking."""
    if s < 2:
        raise DomainError(f"N_s needs s >= 2, got {s}")
    if f.group.order > 16:
        raise DomainError("tuple enumeration is limited to q <= 16")
    total = 0
    for xs in permutations(range(f.group.order), s):
        first = f.values[xs[0]]
        if all(f.values[x] == first for x in xs[1:]):
            total += 1
    return total


def resemblance(f: FuncTable, h: FuncTable) -> int:
    """res(f, h) = V(f - h)."""
    return (f - h).image_size()


def difference_operator(f: FuncTable, a: int, acknowledge_convention: bool = False) -> FuncTable:
    G = f.group
    _require_abelian(G, acknowledge_convention)
    if a == 0:
        raise DomainError("difference direction must be nonzero")
    if not 0 < a < G.order:
        raise DomainError(f"direction {a} is not an element of {G.spec}")
    x = np.arange(G.order)
    shifted = f.values[G.add[x, a]]
    return FuncTable(G, G.add[shifted, G.neg[f.values]])


def difference_table(f: FuncTable, acknowledge_convention: bool = False) -> np.ndarray:
    """DDT: row a-1 holds #{x : f(x+a) - f(x) = b} for b = 0..q-1, a = 1..q-1."""
    G = f.group
    _require_abelian(G, acknowledge_convention)
    q = G.order
    x = np.arange(q)
    ddt = np.zeros((q - 1, q), dtype=np.int64)
    neg_f = G.neg[f.values]
    for a in range(1, q):
        delta = G.add[f.values[G.add[x, a]], neg_f]
        ddt[a - 1] = np.bincount(delta, minlength=q)
    return ddt


def differential_uniformity(f: FuncTable, acknowledge_convention: bool = False) -> int:
    if f.group.order == 1:
        return 1
    return int(difference_table(f, acknowledge_convention).max())


def is_planar(f: FuncTable, acknowledge_convention: bool = False) -> bool:
    return differential_uniformity(f, acknowledge_convention) == 1


def imbalance(f: FuncTable) -> int:
    counts = f.counts()
    return int(((counts - 1) ** 2).sum())


def derivative_imbalance(f: FuncTable, acknowledge_convention: bool = False) -> int:
    ddt = difference_table(f, acknowledge_convention)
    return int(((ddt - 1) ** 2).sum())


def ambiguity(f: FuncTable, acknowledge_convention: bool = False) -> AmbiguityReport:
    ddt = difference_table(f, acknowledge_convention)
    pairs = ddt * (ddt - 1) // 2
    rows = pairs.sum(axis=1).tolist()
    values, freq = np.unique(ddt, return_counts=True)
    alpha = {int(i): int(n) for i, n in zip(values, freq)}
    total = sum(n * comb(i, 2) for i, n in alpha.items())
    ensure(total == sum(rows), "ambiguity disagrees with the sum of its rows")
    return AmbiguityReport(ambiguity=total, alpha=alpha, rows=rows)


def m0_from_ns(f: FuncTable) -> M0Report:
    """M_0 recovered from the alternating sum of N_s / s!, with truncation bounds."""
    dist = preimage_distribution(f)
    u = dist.u
    ns = {s: _n_s_from_m(dist.m, s) for s in range(2, u + 1)}

    partial = Fraction(0)
    truncations = []
    for s in range(2, u + 1):
        partial += Fraction((-1) ** s * ns[s], factorial(s))
        # ending on even s overestimates, ending on odd s underestimates
        direction = "upper" if s % 2 == 0 else "lower"
        truncations.append(Truncation(cutoff=s, value=partial, direction=direction))
    m0 = partial
    ensure(m0.denominator == 1 and int(m0) == dist.m[0],
           f"alternating sum {m0} differs from M_0 = {dist.m[0]}")
    for t in truncations:
        ok = t.value >= m0 if t.direction == "upper" else t.value <= m0
        ensure(ok, f"truncation at s={t.cutoff} lies on the wrong side of M_0")

    n2, n3 = ns.get(2, 0), ns.get(3, 0)
    upper = Fraction(n2, 2)
    lower = upper - Fraction(n3, 6)
    tail = dist.m[3:]
    return M0Report(
        m0=int(m0), lower=lower, upper=upper,
        lower_tight=not any(dist.m[4:]), upper_tight=not any(tail),
        truncations=truncations,
    )


def generating_poly_eval(f: FuncTable, z) -> Fraction:
    """P_f(z) = sum M_r z^r, checked against its expansion around z = 1."""
    z = Fraction(z)
    dist = preimage_distribution(f)
    q = dist.q
    direct = sum(Fraction(mr) * z ** r for r, mr in enumerate(dist.m))
    expanded = q + q * (z - 1) + sum(
        Fraction(_n_s_from_m(dist.m, s), factorial(s)) * (z - 1) ** s
        for s in range(2, dist.u + 1)
    )
    ensure(direct == expanded, f"P_f({z}) expansions disagree: {direct} != {expanded}")
    return direct


def generating_poly_derivative_at_one(f: FuncTable) -> int:
    dist = preimage_distribution(f)
    return sum(r * mr for r, mr in enumerate(dist.m))


def pres_bounds(f: FuncTable) -> BoundsReport:
    counts = f.counts()
    q = f.group.order
    u = int(counts.max())
    v = int((counts > 0).sum())
    lower, upper = u, q - v + 1
    lb_eq_ub = lower == upper
    multi = int((counts > 1).sum())
    char_holds = u == 1 or multi == 1
    ensure(lb_eq_ub == char_holds,
           f"bounds ({lower}, {upper}) contradict the single-collision characterization")
    return BoundsReport(lower=lower, upper=upper, lb_eq_ub=lb_eq_ub, char_holds=char_holds)


def pres_upper_from_ns(f: FuncTable) -> list[NsUpperBound]:
    """pres <= 1 + sum_{s=2}^{c} (-1)^s N_s/s! for every even cutoff c."""
    dist = preimage_distribution(f)
    out = []
    partial = Fraction(0)
    for s in range(2, dist.u + 1):
        partial += Fraction((-1) ** s * _n_s_from_m(dist.m, s), factorial(s))
        if s % 2 == 0:
            out.append(NsUpperBound(cutoff=s, value=1 + partial))
    return out


def difference_set_size(g: FuncTable) -> int:
    """#{g1 - g2 : g1, g2 in im g}, at most V(g)(V(g)-1)+1."""
    G = g.group
    img = np.array(g.image())
    return int(np.unique(G.add[img[:, None], G.neg[img][None, :]]).shape[0])


def du_bound_holds(f: FuncTable, g: FuncTable) -> bool:
    """delta_{g+f} <= delta_f * (V(g)^2 - V(g) + 1)."""
    v = g.image_size()
    return differential_uniformity(g + f) <= differential_uniformity(f) * (v * v - v + 1)


def function_stats(f: FuncTable, acknowledge_convention: bool = False) -> StatsReport:
    G = f.group
    dist = preimage_distribution(f)
    ns = [_n_s_from_m(dist.m, s) for s in range(2, dist.u + 1)]
    nb = imbalance(f)
    ensure(nb == (ns[0] if ns else 0), f"Nb_f = {nb} differs from N_2 = {ns[0] if ns else 0}")
    ensure(2 * dist.v >= 2 * G.order - (ns[0] if ns else 0), "V(f) < q - N_2/2")

    report = StatsReport(
        group=G.spec, q=G.order, v=dist.v, u=dist.u, m=dist.m, n_s=ns, nb=nb,
        bounds=pres_bounds(f), m0=m0_from_ns(f), ns_upper=pres_upper_from_ns(f),
    )
    if (G.is_abelian or acknowledge_convention) and G.order > 1:
        ddt = difference_table(f, acknowledge_convention)
        amb = ambiguity(f, acknowledge_convention)
        nbb = int(((ddt - 1) ** 2).sum())
        ensure(2 * amb.ambiguity == nbb, f"A(f) = {amb.ambiguity} but NB_f = {nbb}")
        delta = int(ddt.max())
        report.delta = delta
        report.planar = delta == 1
        report.nbb = nbb
        report.ambiguity = amb.ambiguity
        report.alpha = amb.alpha
        report.row_ambiguity = amb.rows
    else:
        log.info("%s is nonabelian, skipping difference statistics", G.spec)
    return report
