"""Exact construction of generating sequences for rational valuations
centered in a three-variable regular local ring.

The pieces: ``values`` holds exact arithmetic in a fixed real radical
field, ``laurent`` sparse Laurent polynomials, ``valmodel`` the
valuation given by monomial images, ``grouplat`` the group, lattice and
semigroup solvers, ``jumpseq`` the chain construction itself, and
``outputs`` everything derived from a finished chain.
"""
from .errors import (
    InternalConsistencyError,
    NonInvertibleSubstitution,
    NotInGroupError,
    NotInSemigroupError,
    ParseError,
    UnequalValuesError,
    ValgenError,
    ValuationOfZeroError,
)
from .grouplat import (
    ObstacleSet,
    PairVec,
    PushingSearch,
    SemigroupSolver,
    graded_key,
    irreducible_decompose,
    is_commensurable,
    lattice_solve,
    min_multiple_in_group,
    minimal_pushing_set,
    minimal_semigroup_generators,
    permissible_decompose,
    semigroup_contains,
    smith_normal_form,
    solver_for,
)
from .jumpseq import (
    Flags,
    JumpState,
    PJump,
    SearchBounds,
    TJump,
    build_p_chain,
    build_state,
    build_t_chain,
    is_successor,
    step_t_chain,
    successors,
)
from .laurent import LaurentPoly, parse_polynomial, poly_arith, substitute
from .outputs import (
    GeneratorSet,
    GrRelation,
    RedundancyCertificate,
    SemigroupSlice,
    SequenceReport,
    generating_sequence,
    generating_sequence_detail,
    gr_presentation,
    ideal_generators,
    redundancy_certificate,
    redundancy_survey,
    semigroup_values_up_to,
)
from .valmodel import RING_VARS, ValuationModel, validate_model
from .values import RadicalBasis, Value, combination, parse_value

__version__ = "0.1.0"

__all__ = [
    "Flags",
    "GeneratorSet",
    "GrRelation",
    "InternalConsistencyError",
    "JumpState",
    "LaurentPoly",
    "NonInvertibleSubstitution",
    "NotInGroupError",
    "NotInSemigroupError",
    "ObstacleSet",
    "PJump",
    "PairVec",
    "ParseError",
    "PushingSearch",
    "RING_VARS",
    "RadicalBasis",
    "RedundancyCertificate",
    "SearchBounds",
    "SemigroupSlice",
    "SemigroupSolver",
    "SequenceReport",
    "TJump",
    "UnequalValuesError",
    "ValgenError",
    "ValuationModel",
    "ValuationOfZeroError",
    "Value",
    "build_p_chain",
    "build_state",
    "build_t_chain",
    "combination",
    "generating_sequence",
    "generating_sequence_detail",
    "gr_presentation",
    "graded_key",
    "ideal_generators",
    "irreducible_decompose",
    "is_commensurable",
    "is_successor",
    "lattice_solve",
    "min_multiple_in_group",
    "minimal_pushing_set",
    "minimal_semigroup_generators",
    "parse_polynomial",
    "parse_value",
    "permissible_decompose",
    "poly_arith",
    "redundancy_certificate",
    "redundancy_survey",
    "semigroup_contains",
    "semigroup_values_up_to",
    "smith_normal_form",
    "solver_for",
    "step_t_chain",
    "substitute",
    "successors",
    "validate_model",
]
