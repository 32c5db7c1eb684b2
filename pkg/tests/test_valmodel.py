from fractions import Fraction

import pytest

from valgen import (
    LaurentPoly,
    RadicalBasis,
    UnequalValuesError,
    ValuationModel,
    ValuationOfZeroError,
    validate_model,
)
from valgen.laurent import parse_polynomial
from valgen.valmodel import RING_VARS

from conftest import SECOND_CONFIG, make_second_model


def model_from(config):
    basis = RadicalBasis(tuple(config["basis"]))
    names = tuple(config["ambient_vars"])
    from valgen import parse_value

    values = tuple(parse_value(t, basis) for t in config["ambient_values"])
    images = {
        k: parse_polynomial(v, names) for k, v in config["images"].items()
    }
    return ValuationModel(
        basis=basis, ambient_vars=names, ambient_values=values, images=images
    )


def test_ring_vars():
    assert RING_VARS == ("x", "y", "z")


def test_validate_accepts_good_models(state, second_model):
    assert validate_model(state.model) == []
    assert validate_model(second_model) == []


def test_validate_flags_dependent_values():
    cfg = dict(SECOND_CONFIG, ambient_values=["1", "2", "sqrt(2)"])
    problems = validate_model(model_from(cfg))
    assert any("dependent" in p for p in problems)


def test_validate_flags_bad_images():
    cfg = dict(SECOND_CONFIG, images={"x": "u1", "y": "u2"})
    problems = validate_model(model_from(cfg))
    assert any("missing images" in p and "z" in p for p in problems)

    cfg = dict(
        SECOND_CONFIG,
        images={"x": "u1", "y": "u2", "z": "u3", "w": "u1"},
    )
    problems = validate_model(model_from(cfg))
    assert any("unknown variables" in p for p in problems)

    cfg = dict(SECOND_CONFIG, images={"x": "u1", "y": "u2", "z": "0"})
    problems = validate_model(model_from(cfg))
    assert any("zero" in p for p in problems)


def test_validate_flags_nonpositive_values():
    cfg = dict(
        SECOND_CONFIG, images={"x": "u1^-1", "y": "u2", "z": "u3"}
    )
    problems = validate_model(model_from(cfg))
    assert any("positive value" in p for p in problems)


def test_expansion_and_values(state):
    model = state.model
    x, y, z = (model.ring_poly(v) for v in RING_VARS)
    assert model.expand(x) == model.images["x"]
    assert model.nu(x).exact_str() == "1"
    assert model.nu(y).exact_str() == "sqrt(2)"
    assert model.nu(z).exact_str() == "2*sqrt(2) - 1"
    t2 = model.ring_poly("x*z - y^2")
    assert model.nu(t2).exact_str() == "5*sqrt(2) - 4"
    assert model.expand(t2).text() == "1*x*z' + 1*x^-4*y^5"
    with pytest.raises(ValuationOfZeroError):
        model.nu(t2 - t2)


def test_expansion_is_multiplicative(state):
    model = state.model
    f = model.ring_poly("x*z - y^2")
    g = model.ring_poly("x^2 + y*z")
    assert model.expand(f * g) == model.expand(f) * model.expand(g)
    assert model.nu(f * g) == model.nu(f) + model.nu(g)


def test_initial_term(state):
    model = state.model
    z = model.ring_poly("z")
    assert model.initial_term(z).text() == "1*x^-1*y^2"
    t2 = model.ring_poly("x*z - y^2")
    assert model.initial_term(t2).text() == "1*x^-4*y^5"
    # a sum where the smaller value wins outright
    f = model.ring_poly("y + x^3")
    assert model.initial_term(f).text() == "1*y"


def test_monomial_value(second_model):
    v = second_model.monomial_value((2, 1, 0))
    assert v == second_model.basis.rational(2) + second_model.basis.root(2)


def test_residue_ratio(state):
    model = state.model
    y2 = model.ring_poly("y^2")
    xz = model.ring_poly("x*z")
    assert model.residue_ratio(y2, xz) == 1
    assert model.residue_ratio(y2.scale(3), xz) == 3
    assert model.residue_ratio(y2, xz.scale(2)) == Fraction(1, 2)
    with pytest.raises(UnequalValuesError):
        model.residue_ratio(model.ring_poly("x"), model.ring_poly("y"))


def test_residue_ratio_is_multiplicative(state):
    model = state.model
    pairs = [
        (model.ring_poly("y^2"), model.ring_poly("x*z")),
        (model.ring_poly("3*y^2"), model.ring_poly("2*x*z")),
        (model.ring_poly("x^2"), model.ring_poly("x^2")),
    ]
    for f1, g1 in pairs:
        for f2, g2 in pairs:
            assert model.residue_ratio(f1 * f2, g1 * g2) == model.residue_ratio(
                f1, g1
            ) * model.residue_ratio(f2, g2)


def test_second_model_shape():
    model = make_second_model()
    assert model.nu(model.ring_poly("y")) == model.basis.rational(1)
    assert model.nu(model.ring_poly("y - x")) == model.basis.root(2)
    assert model.initial_term(model.ring_poly("y")).text() == "1*u1"
