import pytest

from permres.algebra import (
    FuncTable, check_field, check_group, default_irreducible, eval_poly, field_inv, field_mul,
    field_pow, make_cayley, make_cyclic_product, make_field, make_poly, parse_poly, trace_table,
)
from permres.errors import DomainError, GroupError, ParseError
from permres.functions import function_stats


def test_prime_field_addition(gf7):
    assert gf7.order == 7
    assert gf7.plus(3, 5) == 1
    assert gf7.neg.tolist() == [0, 6, 5, 4, 3, 2, 1]


def test_prime_field_mul(gf7):
    assert field_mul(gf7, 3, 5) == 1
    assert field_mul(gf7, 4, 0) == 0
    assert field_inv(gf7, 3) == 5


def test_gf8_default_modulus_and_mul(gf8):
    assert gf8.modulus == (1, 1, 0, 1)    # x^3 + x + 1
    assert gf8.encode((1, 1, 0)) == 3     # x + 1
    assert field_mul(gf8, 2, 4) == 3      # x * x^2 = x + 1


def test_gf9_digitwise_addition(gf9):
    assert gf9.order == 9
    assert gf9.modulus == (1, 0, 1)       # x^2 + 1
    # (1 + 2x) + (2 + 2x) = 0 + x
    assert gf9.plus(gf9.encode((1, 2)), gf9.encode((2, 2))) == gf9.encode((0, 1))


def test_default_irreducibles():
    assert default_irreducible(2, 4) == (1, 1, 0, 0, 1)
    assert default_irreducible(3, 3) == (1, 2, 0, 1)


@pytest.mark.parametrize("p,e", [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)])
def test_fields_pass_their_checks(p, e):
    G = make_field(p, e)
    check_group(G)
    check_field(G)
    nonzero = {field_pow(G, G.generator, k) for k in range(G.order - 1)}
    assert nonzero == set(range(1, G.order))


def test_cyclic_products():
    z5 = make_cyclic_product([5])
    assert z5.plus(2, 4) == 1
    klein = make_cyclic_product([2, 2])
    assert klein.neg.tolist() == [0, 1, 2, 3]
    z2z3 = make_cyclic_product([2, 3])
    a = z2z3.encode((1, 2))
    assert z2z3.plus(a, a) == z2z3.encode((0, 1))
    assert z2z3.spec == "zn:2x3"


@pytest.mark.parametrize("digits", [(1,), (1, 2, 0), (2, 0)])
def test_encode_rejects_bad_digit_vectors(digits):
    with pytest.raises(DomainError):
        make_cyclic_product([2, 3]).encode(digits)


@pytest.mark.parametrize("factors", [[], [1], [0, 3]])
def test_bad_cyclic_factors(factors):
    with pytest.raises(GroupError):
        make_cyclic_product(factors)


def test_field_errors():
    with pytest.raises(GroupError):
        make_field(6)
    with pytest.raises(GroupError):
        make_field(2, 3, (1, 1, 1, 1))    # (x + 1)(x^2 + 1)
    with pytest.raises(GroupError):
        make_field(2, 13)                 # past the order limit
    with pytest.raises(GroupError):
        field_mul(make_cyclic_product([4]), 2, 2)


def test_explicit_modulus_gives_new_codes_same_field():
    G = make_field(2, 3, (1, 0, 1, 1))    # x^3 + x^2 + 1
    assert G.spec == "gf:2^3:1,0,1,1"
    check_field(G)
    assert field_mul(G, 2, 4) == 5        # x^3 = x^2 + 1


def test_eval_poly_examples(gf7, gf5):
    assert eval_poly(gf7, parse_poly("x^2", gf7)).tolist() == [0, 1, 4, 2, 2, 4, 1]
    assert eval_poly(gf5, parse_poly("x^2 - x^3", gf5)).tolist() == [0, 0, 1, 2, 2]
    assert eval_poly(gf7, parse_poly("3", gf7)).tolist() == [3] * 7


@pytest.mark.parametrize("p,e", [(7, 1), (2, 3), (3, 2), (2, 4), (2, 6)])
def test_x_to_the_q_minus_x_vanishes(p, e):
    G = make_field(p, e)
    q = G.order
    poly = make_poly(G, {q: 1, 1: int(G.neg[1])}, reduce=False)
    assert eval_poly(G, poly).tolist() == [0] * q


def test_parse_poly(gf7, gf5):
    assert parse_poly("x^2 + 3*x", gf7).terms == {1: 3, 2: 1}
    assert parse_poly("x^2 - x^3", gf5).terms == {2: 1, 3: 4}
    assert parse_poly("-x + x", gf7).terms == {}
    assert parse_poly("x^3", gf7).terms == {3: 1}
    assert parse_poly("x^9", gf7).terms == {3: 1}
    assert parse_poly("x^9", gf7, reduce=False).terms == {9: 1}


def test_parse_poly_generator(gf9):
    g = gf9.generator
    assert parse_poly("g^2*x", gf9).terms == {1: field_pow(gf9, g, 2)}
    assert parse_poly("g*x^2 + 1", gf9).terms == {0: 1, 2: g}


@pytest.mark.parametrize("text", ["x^(p-1)/2", "x^", "3*", "x ++ 1", "x^2 $ 1", "7*x"])
def test_parse_poly_rejects(gf7, text):
    with pytest.raises(ParseError):
        parse_poly(text, gf7)


def test_parse_poly_reports_position(gf7):
    with pytest.raises(ParseError) as exc:
        parse_poly("x^2 + y", gf7)
    assert exc.value.position == 6


def test_generator_over_prime_field_needs_declaration(gf7):
    with pytest.raises(ParseError):
        parse_poly("g*x", gf7)
    assert parse_poly("g*x", gf7, generator=3).terms == {1: 3}


def test_functable_validation(gf7):
    with pytest.raises(DomainError):
        FuncTable(gf7, [0, 1, 2])
    with pytest.raises(DomainError):
        FuncTable(gf7, [0, 1, 2, 3, 4, 5, 7])
    f = FuncTable(gf7, [1] * 7)
    with pytest.raises(ValueError):
        f.values[0] = 2


def test_functable_arithmetic(gf7, square7):
    ident = FuncTable.identity(gf7)
    assert (square7 + ident).tolist() == [0, 2, 6, 5, 6, 2, 0]
    assert (square7 - square7).tolist() == [0] * 7
    assert (-ident).tolist() == [0, 6, 5, 4, 3, 2, 1]
    assert square7.image() == [0, 1, 2, 4]
    assert square7.preimages()[4] == [2, 5]


def test_trace_gf8(gf8):
    tr = trace_table(gf8)
    assert sorted(tr.image()) == [0, 1]
    assert tr.counts().tolist()[:2] == [4, 4]


def test_cayley_nonabelian(s3):
    assert s3.order == 6
    assert not s3.is_abelian
    check_group(s3)
    assert all(s3.plus(x, int(s3.neg[x])) == 0 for x in range(6))


def test_cayley_rejects_non_latin():
    with pytest.raises(GroupError):
        make_cayley([[0, 1], [1, 1]])
    with pytest.raises(GroupError):
        make_cayley([[1, 0], [0, 1]])


def test_statistics_do_not_depend_on_the_modulus():
    a = make_field(2, 4, (1, 1, 0, 0, 1))
    b = make_field(2, 4, (1, 0, 0, 1, 1))
    for k in (3, 5, 7):
        fa = eval_poly(a, make_poly(a, {k: 1}))
        fb = eval_poly(b, make_poly(b, {k: 1}))
        sa = function_stats(fa)
        sb = function_stats(fb)
        assert (sa.m, sa.delta, sa.ambiguity, sa.alpha) == (sb.m, sb.delta, sb.ambiguity, sb.alpha)
