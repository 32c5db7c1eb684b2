from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from valgen import LaurentPoly, NonInvertibleSubstitution, ParseError
from valgen.laurent import parse_polynomial, poly_arith, substitute

XY = ("x", "y")
XYZ = ("x", "y", "z")


def P(text, vars_=XYZ):
    return parse_polynomial(text, vars_)


@st.composite
def polys(draw, vars_=XY, max_terms=4):
    n = draw(st.integers(min_value=0, max_value=max_terms))
    terms = []
    for _ in range(n):
        exp = tuple(
            draw(st.integers(min_value=-3, max_value=3)) for _ in vars_
        )
        c = draw(
            st.fractions(min_value=-5, max_value=5, max_denominator=3)
        )
        terms.append((exp, c))
    return LaurentPoly(vars_, tuple(terms))


def test_canonical_form():
    # duplicate exponents merge, zero coefficients vanish
    f = LaurentPoly(XY, (((1, 0), Fraction(2)), ((1, 0), Fraction(-2))))
    assert f.is_zero()
    assert f.terms == ()
    g = LaurentPoly(XY, (((0, 1), Fraction(1)), ((0, 1), Fraction(2))))
    assert g == LaurentPoly.monomial(XY, (0, 1), 3)
    assert LaurentPoly.zero(XY).total_degree() is None


def test_constructors_and_accessors():
    x = LaurentPoly.variable(XYZ, "x")
    assert x.is_monomial()
    assert x.coefficient((1, 0, 0)) == 1
    assert x.coefficient((0, 1, 0)) == 0
    one = LaurentPoly.constant(XYZ, 1)
    assert one.total_degree() == 0
    with pytest.raises(ValueError):
        LaurentPoly.variable(XYZ, "w")
    m = LaurentPoly.monomial(XYZ, (-1, 2, 0), Fraction(1, 2))
    assert m.total_degree() == 1
    assert not LaurentPoly.zero(XYZ).is_monomial()


def test_basic_arithmetic():
    assert P("x*z - y^2") == P("x*z") - P("y^2")
    assert P("(x + y)^2") == P("x^2 + 2*x*y + y^2")
    assert P("x") * P("y") == P("x*y")
    assert -P("x - y") == P("y - x")
    f = P("x^2*y*z - x*y^3 - z^3")
    assert f - f == LaurentPoly.zero(XYZ)
    assert P("x") ** 0 == LaurentPoly.constant(XYZ, 1)
    mixed = LaurentPoly.variable(XY, "x")
    with pytest.raises(ValueError):
        P("x") + mixed


def test_negative_powers():
    m = LaurentPoly.monomial(XYZ, (1, 2, 0), Fraction(2))
    inv = m ** -1
    assert m * inv == LaurentPoly.constant(XYZ, 1)
    assert inv.coefficient((-1, -2, 0)) == Fraction(1, 2)
    with pytest.raises(NonInvertibleSubstitution):
        P("x + y") ** -1


def test_text_is_descending_lex():
    f = P("-1*z^5 + 2*x^2*y*z^3 - x^3*y^4")
    assert f.text() == "-1*x^3*y^4 + 2*x^2*y*z^3 - 1*z^5"
    assert P("x*z - y^2").text() == "1*x*z - 1*y^2"
    assert LaurentPoly.zero(XYZ).text() == "0"
    assert str(P("x")) == "1*x"


def test_parse_single_atom():
    # a bare variable must parse; EOF after one atom once tripped the parser
    assert parse_polynomial("x", XY) == LaurentPoly.variable(XY, "x")
    assert parse_polynomial("7", XY) == LaurentPoly.constant(XY, 7)
    assert parse_polynomial("x^-3", XY) == LaurentPoly.monomial(
        XY, (-3, 0), 1
    )


def test_parse_apostrophe_names():
    vars_ = ("x", "y", "z'")
    f = parse_polynomial("x^-1*y^2 + x^-5*y^5 + z'", vars_)
    assert f.coefficient((-1, 2, 0)) == 1
    assert f.coefficient((0, 0, 1)) == 1
    assert parse_polynomial(f.text(), vars_) == f


def test_parse_matches_hand_expansion():
    f = P("(x*z - y^2)^2 - x*(x^2*z - x*y^2 - y*z^2)")
    g = (P("x*z") - P("y^2")) ** 2 - P("x") * (
        P("x^2*z") - P("x*y^2") - P("y*z^2")
    )
    assert f == g
    assert P("2*(x + y)*(x - y)") == P("2*x^2 - 2*y^2")
    assert P("1/2*x + 1/2*x") == P("x")


@pytest.mark.parametrize(
    "text",
    ["", "x +", "x^", "(x", "w", "x^^2", "x*", "2x", "x y"],
)
def test_parse_errors_have_positions(text):
    with pytest.raises(ParseError) as exc:
        parse_polynomial(text, XY)
    assert 0 <= exc.value.pos <= len(text)
    assert "position" in str(exc.value)


@given(polys())
def test_text_round_trip(f):
    assert parse_polynomial(f.text(), XY) == f


@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)


@given(polys(max_terms=3), polys(max_terms=3))
def test_substitution_is_multiplicative(f, g):
    images = {
        "x": parse_polynomial("u + v", ("u", "v")),
        "y": parse_polynomial("u*v", ("u", "v")),
    }
    try:
        fs = f.substitute(images)
        gs = g.substitute(images)
    except NonInvertibleSubstitution:
        return  # negative power of x + v is out of scope here
    assert (f * g).substitute(images) == fs * gs


def test_substitution_rules():
    images = {"x": P("y"), "y": P("x"), "z": P("z")}
    assert P("x^2*y").substitute(images) == P("y^2*x")
    with pytest.raises(NonInvertibleSubstitution):
        parse_polynomial("x^-1", XY).substitute(
            {"x": P("x + y"), "y": P("y")}
        )
    with pytest.raises(ValueError):
        P("x").substitute({})
    with pytest.raises(ValueError):
        parse_polynomial("x*y", XY).substitute({"x": P("x")})
    assert substitute(P("x + z"), images) == P("y + z")


def test_poly_arith_dispatch():
    f, g = P("x"), P("y")
    assert poly_arith("add", f, g) == f + g
    assert poly_arith("sub", f, g) == f - g
    assert poly_arith("mul", f, g) == f * g
    assert poly_arith("pow", f, 3) == f ** 3
    assert poly_arith("negate", f) == -f
    assert poly_arith("scale", f, Fraction(2, 3)) == f.scale(Fraction(2, 3))
    with pytest.raises(ValueError):
        poly_arith("div", f, g)
