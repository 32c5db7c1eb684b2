import json

import pytest
from hypothesis import settings

from valgen import (
    RadicalBasis,
    ValuationModel,
    build_state,
    generating_sequence_detail,
    parse_polynomial,
    redundancy_survey,
)
from valgen._golden import CONFIG, example_state

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def state():
    """The fully built bundled worked example; shared, treat as read-only."""
    return example_state()


@pytest.fixture(scope="session")
def survey(state):
    return redundancy_survey(state)


@pytest.fixture(scope="session")
def detail(state, survey):
    return generating_sequence_detail(state, survey=survey)


def make_second_model():
    basis = RadicalBasis((1, 2, 3))
    names = ("u1", "u2", "u3")
    values = (basis.rational(1), basis.root(2), basis.root(3))
    images = {
        "x": parse_polynomial("u1", names),
        "y": parse_polynomial("u1 + u2", names),
        "z": parse_polynomial("u3", names),
    }
    return ValuationModel(
        basis=basis, ambient_vars=names, ambient_values=values, images=images
    )


SECOND_CONFIG = {
    "basis": [1, 2, 3],
    "ambient_vars": ["u1", "u2", "u3"],
    "ambient_values": ["1", "sqrt(2)", "sqrt(3)"],
    "images": {"x": "u1", "y": "u1 + u2", "z": "u3"},
}


@pytest.fixture(scope="session")
def second_model():
    return make_second_model()


@pytest.fixture(scope="session")
def second_state(second_model):
    return build_state(second_model)


@pytest.fixture(scope="session")
def example_config(tmp_path_factory):
    path = tmp_path_factory.mktemp("cfg") / "example.json"
    path.write_text(json.dumps(CONFIG, indent=2))
    return str(path)


@pytest.fixture(scope="session")
def second_config(tmp_path_factory):
    path = tmp_path_factory.mktemp("cfg") / "second.json"
    path.write_text(json.dumps(SECOND_CONFIG, indent=2))
    return str(path)
