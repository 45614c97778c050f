import pytest

from permres.algebra import FuncTable, make_field, trace_table
from permres.equivalence import (
    AffineMap, affine_from_coeffs, affine_transform, compose_left, compose_right, ea_transform,
    is_additive, parse_cycles, parse_permutation, random_affine_permutation, random_permutation,
)
from permres.errors import DomainError, ParseError, SpecError
from permres.solver import pres_exact


def test_parse_cycles_digit_runs():
    assert parse_cycles("(0)(1)(2345)(6)", 7) == [0, 1, 3, 4, 5, 2, 6]
    assert parse_cycles("(2345)", 7) == [0, 1, 3, 4, 5, 2, 6]


def test_parse_cycles_separators():
    assert parse_cycles("(2 3 4 5)", 7) == parse_cycles("(2,3,4,5)", 7)
    assert parse_cycles("(10, 0)", 11)[:1] == [10]
    assert parse_cycles("", 3) == [0, 1, 2]


@pytest.mark.parametrize("text,q", [
    ("(12)", 11), ("(1 1)", 7), ("(9)", 7), ("x(12)", 7), ("(12)(3", 7), ("()", 7), ("(1 a)", 7),
])
def test_parse_cycles_rejects(text, q):
    with pytest.raises(ParseError):
        parse_cycles(text, q)


def test_parse_permutation(gf7):
    assert parse_permutation("[1,0,2,3,4,5,6]", gf7).tolist() == [1, 0, 2, 3, 4, 5, 6]
    assert parse_permutation("(01)", gf7).tolist() == [1, 0, 2, 3, 4, 5, 6]
    with pytest.raises(SpecError):
        parse_permutation("[0,0,1,2,3,4,5]", gf7)
    with pytest.raises(ParseError):
        parse_permutation("[0,1", gf7)


def test_left_composition_counterexample(square7, gf7):
    phi = parse_permutation("(0)(1)(2345)(6)", gf7)
    composed = compose_left(phi, square7)
    assert composed.tolist() == [0, 1, 5, 3, 3, 5, 1]
    assert pres_exact(composed).pres == 2
    assert pres_exact(square7).pres == 3
    assert not is_additive(phi)


def test_compose_needs_a_permutation(square7):
    with pytest.raises(DomainError):
        compose_right(square7, square7)
    with pytest.raises(DomainError):
        compose_left(square7, square7)


def test_right_composition_keeps_pres(square7, rng):
    expected = pres_exact(square7).pres
    for _ in range(5):
        phi = random_permutation(square7.group, rng)
        assert pres_exact(compose_right(square7, phi)).pres == expected


def test_affine_map_validation(gf7):
    with pytest.raises(DomainError):
        AffineMap(FuncTable.constant(gf7, 1))
    with pytest.raises(DomainError):
        AffineMap(FuncTable.identity(gf7), 7)
    assert AffineMap.identity(gf7).table() == FuncTable.identity(gf7)
    assert not AffineMap.zero(gf7).is_permutation()


def test_affine_transform_keeps_pres(square7, gf7):
    A1 = affine_from_coeffs(gf7, [3], 1)
    A2 = affine_from_coeffs(gf7, [2], 5)
    assert A1.table().tolist() == [1, 4, 0, 3, 6, 2, 5]
    transformed = affine_transform(square7, A1, A2)
    assert pres_exact(transformed).pres == pres_exact(square7).pres


def test_affine_transform_needs_permutations(square7, gf7):
    with pytest.raises(DomainError):
        affine_transform(square7, AffineMap.zero(gf7), AffineMap.identity(gf7))


def test_ea_counterexample(gf8):
    ident = FuncTable.identity(gf8)
    A = AffineMap.identity(gf8)
    trace = ea_transform(ident, A, A, affine_from_coeffs(gf8, [0, 1, 1]))
    assert trace == trace_table(gf8)
    assert pres_exact(ident).pres == 1
    assert pres_exact(trace).pres == 4


def test_random_affine_permutation(gf9, rng):
    for _ in range(10):
        A = random_affine_permutation(gf9, rng)
        assert A.is_permutation()
        assert is_additive(A.linear)


def test_is_additive_on_trace():
    G = make_field(2, 4)
    assert is_additive(trace_table(G))


@pytest.mark.slow
@pytest.mark.parametrize("p,e", [(7, 1), (3, 2)])
def test_affine_invariance_sweep(p, e, rng):
    G = make_field(p, e)
    f = FuncTable(G, [int(v) for v in (rng.integers(0, G.order, size=G.order))])
    expected = pres_exact(f).pres
    for _ in range(50):
        A1 = random_affine_permutation(G, rng)
        A2 = random_affine_permutation(G, rng)
        assert pres_exact(affine_transform(f, A1, A2)).pres == expected
