import itertools
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from valgen import ParseError, RadicalBasis, Value, parse_value
from valgen.values import combination, value_add, value_scale, value_sign

B = RadicalBasis((1, 2, 51))


def decimal_eval(v, digits=80):
    """Independent sign oracle: evaluate with 80-digit decimal arithmetic."""
    getcontext().prec = digits
    total = Decimal(0)
    for c, r in zip(v.coeffs, v.basis.radicands):
        term = Decimal(c.numerator) / Decimal(c.denominator)
        total += term * Decimal(r).sqrt()
    return total


small_fraction = st.fractions(
    min_value=-50, max_value=50, max_denominator=40
)
coeff_vectors = st.tuples(small_fraction, small_fraction, small_fraction)


def test_basis_validation():
    with pytest.raises(ValueError):
        RadicalBasis((2, 3))
    with pytest.raises(ValueError):
        RadicalBasis((1, 3, 2))
    with pytest.raises(ValueError):
        RadicalBasis((1, 12))
    with pytest.raises(ValueError):
        RadicalBasis(())
    assert RadicalBasis((1,)).dim == 1
    assert B.index_of(51) == 2
    with pytest.raises(ValueError):
        B.index_of(7)


def test_constructors():
    assert B.zero().is_zero()
    assert not B.zero()
    assert B.rational(Fraction(3, 2)).as_fraction() == Fraction(3, 2)
    r = B.root(2, Fraction(5))
    assert r.coeffs == (Fraction(0), Fraction(5), Fraction(0))
    with pytest.raises(ValueError):
        B.from_coeffs((1, 2))
    with pytest.raises(ValueError):
        B.root(7)


def test_arithmetic():
    a = parse_value("2*sqrt(2) - 1", B)
    b = parse_value("1 + sqrt(51)", B)
    assert (a + b).coeffs == (Fraction(0), Fraction(2), Fraction(1))
    assert (a - a).is_zero()
    assert (-a).coeffs == (Fraction(1), Fraction(-2), Fraction(0))
    assert a * 3 == 3 * a
    assert (a * Fraction(1, 2)).coeffs == (
        Fraction(-1, 2),
        Fraction(1),
        Fraction(0),
    )
    other = RadicalBasis((1, 2))
    with pytest.raises(ValueError):
        a + other.rational(1)


def test_sign_known_cases():
    assert parse_value("2*sqrt(2) - 1", B).sign() == 1
    assert parse_value("sqrt(2) - 2", B).sign() == -1
    assert B.zero().sign() == 0
    assert parse_value("sqrt(51) - 5 - 2*sqrt(2)", B).sign() == -1


def test_sign_near_cancellation():
    # continued-fraction convergents land on alternating sides of the
    # root, so these force the enclosure to refine past its starting
    # precision; expected signs double-checked against the decimal oracle
    cases = [
        (B.root(2) - B.rational(Fraction(99, 70)), -1),
        (B.root(2) - B.rational(Fraction(239, 169)), 1),
        (B.root(2) - B.rational(Fraction(114243, 80782)), -1),
        (B.root(51) - B.rational(Fraction(707, 99)), 1),
        (B.root(51) - B.rational(Fraction(4999, 700)), -1),
        (B.root(51) - B.root(2, Fraction(101, 20)), -1),
    ]
    for value, expected in cases:
        assert int(decimal_eval(value).compare(Decimal(0))) == expected
        assert value.sign() == expected


def test_rationality():
    assert B.rational(7).is_rational()
    assert not B.root(2).is_rational()
    with pytest.raises(ValueError):
        B.root(2).as_fraction()


@given(coeff_vectors)
def test_sign_matches_decimal_oracle(coeffs):
    v = B.from_coeffs(coeffs)
    approx = decimal_eval(v)
    if approx == 0:
        assert v.sign() == 0
    else:
        assert v.sign() == (1 if approx > 0 else -1)


@given(coeff_vectors)
def test_sign_zero_iff_zero_coeffs(coeffs):
    v = B.from_coeffs(coeffs)
    assert (v.sign() == 0) == all(c == 0 for c in coeffs)
    assert (-v).sign() == -v.sign()


@given(coeff_vectors, coeff_vectors, coeff_vectors)
def test_order_is_total_and_transitive(ca, cb, cc):
    a, b, c = (B.from_coeffs(x) for x in (ca, cb, cc))
    assert (a < b) or (b < a) or (a == b)
    assert not (a < b and b < a)
    if a < b and b < c:
        assert a < c
    assert (a <= b) == (a < b or a == b)
    assert (a > b) == (b < a)


@given(coeff_vectors, coeff_vectors)
def test_floor_ratio_bounds(ca, cb):
    a = B.from_coeffs(ca)
    b = B.from_coeffs(cb)
    if b.sign() <= 0 or a.sign() < 0:
        return
    q = a.floor_ratio(b)
    assert q >= 0
    assert b * q <= a
    assert a < b * (q + 1)


def test_floor_ratio_known():
    assert B.rational(7).floor_ratio(B.rational(2)) == 3
    assert B.root(51).floor_ratio(B.root(2)) == 5
    assert (B.root(2) * 2).floor_ratio(B.root(2)) == 2
    assert B.rational(0).floor_ratio(B.root(51)) == 0
    with pytest.raises(ValueError):
        B.rational(-1).floor_ratio(B.rational(2))
    with pytest.raises(ValueError):
        B.rational(1).floor_ratio(B.zero())


@given(coeff_vectors)
def test_exact_text_round_trip(coeffs):
    v = B.from_coeffs(coeffs)
    assert parse_value(v.exact_str(), B) == v


def test_text_forms():
    assert parse_value("2*sqrt(2) - 1", B).exact_str() == "2*sqrt(2) - 1"
    assert parse_value("1 - sqrt(2)", B).exact_str() == "-sqrt(2) + 1"
    assert B.zero().exact_str() == "0"
    assert parse_value("2*sqrt(2) - 1", B).approx_str() == "1.82842712475"
    assert parse_value("2*sqrt(2) - 1", B).approx_str(4) == "1.828"
    assert str(B.rational(Fraction(1, 3))) == "1/3"


def test_parse_accepts_flexible_forms():
    assert parse_value("- 1", B) == B.rational(-1)
    assert parse_value("7/2", B) == B.rational(Fraction(7, 2))
    assert parse_value("sqrt(2)", B) == B.root(2)
    assert parse_value("1/2*sqrt(51)", B) == B.root(51, Fraction(1, 2))
    assert parse_value("  3 + 0*sqrt(2) ", B) == B.rational(3)


@pytest.mark.parametrize(
    "text,pos",
    [
        ("", 0),
        ("   ", 3),
        ("sqrt(7)", 5),
        ("1 + ", 4),
        ("2*x", 2),
        ("sqrt(2", 6),
        ("sqrt 2", 5),
        ("1 ++ 2", 3),
        ("7/0", 1),
    ],
)
def test_parse_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_value(text, B)
    assert exc.value.pos == pos
    assert f"position {pos}" in str(exc.value)


def test_module_level_helpers():
    a = B.rational(1)
    b = B.root(2)
    assert value_add(a, b) == a + b
    assert value_scale(b, 3) == b * 3
    assert value_sign(a - a) == 0
    assert combination((2, 1), [a, b], B) == B.rational(2) + b
    assert combination((), [], B).is_zero()
