from fractions import Fraction

import pytest

from permres.algebra import FuncTable, all_tables, eval_poly, make_cyclic_product, make_field, parse_poly
from permres.errors import ConventionError, DomainError
from permres.functions import (
    ambiguity, derivative_imbalance, difference_operator, difference_set_size, difference_table,
    differential_uniformity, du_bound_holds, function_stats, generating_poly_derivative_at_one,
    generating_poly_eval, imbalance, is_planar, m0_from_ns, n_s, n_s_enumerated,
    preimage_distribution, pres_bounds, pres_upper_from_ns, resemblance, uniformity,
)


def test_distribution_two_pairs(two_pairs):
    dist = preimage_distribution(two_pairs)
    assert dist.m == [3, 1, 3]
    assert preimage_distribution(two_pairs, length=4).m == [3, 1, 3, 0]
    assert (dist.u, dist.v) == (2, 4)
    assert uniformity(two_pairs) == 2
    assert n_s(two_pairs, 2) == 6


def test_distribution_one_triple(one_triple):
    dist = preimage_distribution(one_triple)
    assert dist.m == [2, 4, 0, 1]
    assert preimage_distribution(one_triple, length=4).m == [2, 4, 0, 1]
    with pytest.raises(DomainError):
        preimage_distribution(one_triple, length=3)
    assert n_s(one_triple, 2) == 6
    assert n_s(one_triple, 3) == 6


def test_n_s_agrees_with_enumeration(two_pairs, one_triple, square7):
    for f in (two_pairs, one_triple, square7):
        for s in range(2, uniformity(f) + 1):
            assert n_s(f, s) == n_s_enumerated(f, s)


def test_n_s_rejects_small_s(two_pairs):
    with pytest.raises(DomainError):
        n_s(two_pairs, 1)


def test_bounds(two_pairs, one_triple, square7):
    b = pres_bounds(two_pairs)
    assert (b.lower, b.upper, b.lb_eq_ub, b.char_holds) == (2, 4, False, False)
    b = pres_bounds(one_triple)
    assert (b.lower, b.upper, b.lb_eq_ub, b.char_holds) == (3, 3, True, True)
    b = pres_bounds(square7)
    assert (b.lower, b.upper) == (2, 4)


def test_bounds_of_a_permutation(gf7):
    b = pres_bounds(FuncTable.identity(gf7))
    assert (b.lower, b.upper, b.lb_eq_ub) == (1, 1, True)


def test_bounds_characterization_exhaustive_z4():
    for f in all_tables(make_cyclic_product([4])):
        pres_bounds(f)


def test_difference_operator(square7):
    assert difference_operator(square7, 1).tolist() == [1, 3, 5, 0, 2, 4, 6]
    with pytest.raises(DomainError):
        difference_operator(square7, 0)
    with pytest.raises(DomainError):
        difference_operator(square7, 7)


def test_square_is_planar_in_odd_characteristic(square7):
    assert is_planar(square7)
    amb = ambiguity(square7)
    assert amb.ambiguity == 0
    assert amb.alpha == {1: 42}


def test_x3_over_gf8_is_apn(gf8):
    f = eval_poly(gf8, parse_poly("x^3", gf8))
    assert differential_uniformity(f) == 2
    assert not is_planar(f)


def test_constant_function_statistics(gf5):
    f = FuncTable.constant(gf5, 0)
    stats = function_stats(f)
    assert stats.n_s[0] == 20
    assert stats.nb == 20
    assert stats.nbb == 80
    assert stats.ambiguity == 40
    assert stats.m0.m0 == 4
    assert stats.delta == 5
    assert (stats.bounds.lower, stats.bounds.upper) == (5, 5)


def test_imbalance_and_derivative_imbalance(two_pairs):
    assert imbalance(two_pairs) == n_s(two_pairs, 2)
    assert derivative_imbalance(two_pairs) == 2 * ambiguity(two_pairs).ambiguity


def test_difference_table_shape(square7):
    ddt = difference_table(square7)
    assert ddt.shape == (6, 7)
    assert (ddt.sum(axis=1) == 7).all()


def test_m0_truncations(one_triple):
    report = m0_from_ns(one_triple)
    assert report.m0 == 2
    assert report.upper == Fraction(3)
    assert report.lower == Fraction(2)
    assert not report.upper_tight
    assert report.lower_tight
    assert [t.direction for t in report.truncations] == ["upper", "lower"]


def test_m0_upper_tight_for_pairs(two_pairs):
    report = m0_from_ns(two_pairs)
    assert report.upper == report.m0 == 3
    assert report.upper_tight


def test_generating_polynomial(one_triple):
    assert generating_poly_eval(one_triple, 1) == 7
    assert generating_poly_eval(one_triple, 0) == 2
    assert generating_poly_eval(one_triple, Fraction(1, 2)) == Fraction(2 + 2 + 0 + Fraction(1, 8))
    assert generating_poly_derivative_at_one(one_triple) == 7


def test_ns_upper_bound_dominates_pres(two_pairs):
    bounds = pres_upper_from_ns(two_pairs)
    assert [b.cutoff for b in bounds] == [2]
    assert bounds[0].value == 4


def test_resemblance(square7, gf7):
    assert resemblance(square7, square7) == 1
    assert resemblance(square7, FuncTable.constant(gf7, 0)) == 4


def test_du_bound_and_difference_set(square7, gf7):
    g = FuncTable(gf7, [0, 0, 0, 1, 1, 1, 1])
    assert difference_set_size(g) == 3
    assert du_bound_holds(square7, g)


def test_difference_statistics_on_nonabelian_group(s3):
    f = FuncTable.identity(s3)
    with pytest.raises(ConventionError):
        difference_table(f)
    ddt = difference_table(f, acknowledge_convention=True)
    assert ddt.shape == (5, 6)
    stats = function_stats(f)
    assert stats.delta is None
    assert stats.bounds.lower == 1


@pytest.mark.parametrize("p,e", [(2, 3), (3, 2), (5, 1)])
def test_stats_identities_hold_for_random_tables(p, e, rng):
    G = make_field(p, e)
    for _ in range(20):
        f = FuncTable(G, rng.integers(0, G.order, size=G.order))
        stats = function_stats(f)
        assert stats.nb == (stats.n_s[0] if stats.n_s else 0)
        assert 2 * stats.ambiguity == stats.nbb
