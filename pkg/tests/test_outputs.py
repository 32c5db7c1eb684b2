import random
from fractions import Fraction

import pytest

from valgen import PairVec, parse_value
from valgen.jumpseq import SearchBounds, build_state
from valgen.outputs import (
    generating_sequence,
    generating_sequence_detail,
    gr_presentation,
    ideal_generators,
    redundancy_certificate,
    semigroup_values_up_to,
)
from valgen._golden import GOLDEN, example_model

import oracles


# -- valuation ideals ----------------------------------------------------------


def test_threshold_zero_gives_the_unit(state):
    for sigma in (state.basis.zero(), state.basis.rational(-3)):
        gens = ideal_generators(state, sigma)
        assert gens.members == (PairVec((), ()),)
        assert gens.complete


def test_known_threshold_members(state):
    sigma = parse_value("2*sqrt(2)", state.basis)
    gens = ideal_generators(state, sigma)
    assert PairVec((0, 2), ()) in gens.members  # y^2
    assert PairVec((1,), (1,)) in gens.members  # x*z
    assert gens.members[0] == PairVec((0, 2), ())
    values = [state.value_of(v) for v in gens.members]
    assert all(v >= sigma for v in values)
    assert values == sorted(values)


def test_generators_form_minimal_antichain(state):
    sigma = parse_value("2*sqrt(2)", state.basis)
    members = ideal_generators(state, sigma).members
    for v in members:
        for w in members:
            assert v == w or not v.dominates(w)
    # dropping any single variable from a member falls below the threshold
    rows = {("p", r.index): r.beta for r in state.p_chain}
    rows.update({("t", r.index): r.gamma for r in state.t_chain})
    for v in members:
        total = state.value_of(v)
        for pos, c in enumerate(v.p):
            if c:
                assert total - rows[("p", pos + 1)] < sigma
        for pos, c in enumerate(v.t):
            if c:
                assert total - rows[("t", pos + 1)] < sigma


def test_generators_match_brute_force(state):
    basis = state.basis
    for text in ("1", "sqrt(2)", "2*sqrt(2) - 1", "3"):
        sigma = parse_value(text, basis)
        cap = sigma + basis.rational(4)
        everything = oracles.vectors_up_to(state, cap)
        reaching = [(v, val) for v, val in everything if val >= sigma]
        want = sorted(
            oracles.minimal_vectors(reaching),
            key=lambda v: (state.value_of(v), v.p, v.t),
        )
        got = sorted(
            [
                v
                for v in ideal_generators(state, sigma).members
                if state.value_of(v) <= cap
            ],
            key=lambda v: (state.value_of(v), v.p, v.t),
        )
        assert got == want


def test_truncated_chain_marks_incomplete():
    basis = example_model().basis
    st = build_state(
        example_model(),
        bounds=SearchBounds.for_basis(basis, max_t_index=3),
    )
    gens = ideal_generators(st, basis.rational(1))
    assert not gens.complete


# -- redundancy certificates -----------------------------------------------------


def test_certificate_statuses(survey):
    by_status = {}
    for j, cert in survey.items():
        by_status.setdefault(cert.status, []).append(j)
    assert by_status["not_eligible"] == [1, 2, 3, 4, 8]
    assert by_status["zero"] == [11, 12, 18, 19, 23, 24, 26]
    assert "undecided" not in by_status
    assert set(by_status["certified"]) == set(range(1, 27)) - {
        1, 2, 3, 4, 8, 11, 12, 18, 19, 23, 24, 26,
    }


def test_certificates_reverify_as_identities(state, survey):
    # each combination literally rebuilds the member polynomial
    for j, cert in survey.items():
        if cert.status != "certified":
            continue
        rec = state.t_chain[j - 1]
        total = None
        for mu, vec in cert.combo:
            part = state.poly_of(vec).scale(mu)
            total = part if total is None else total + part
        assert total == rec.poly, f"member {j}"


def test_certificate_combos_are_triangular(state, survey):
    for j, cert in survey.items():
        if cert.status != "certified":
            continue
        vecs = [vec for _, vec in cert.combo]
        assert len(set(vecs)) == len(vecs)
        values = [state.value_of(v) for v in vecs]
        assert len(set(values)) == len(values)
        assert min(values) == state.t_chain[j - 1].gamma
        for v in vecs:
            assert state.T_set.irreducible(v)
        for mu, _ in cert.combo:
            assert mu != 0


def test_single_certificates_match_survey(state, survey):
    assert redundancy_certificate(state, 5).status == "certified"
    assert redundancy_certificate(state, 5).combo == survey[5].combo
    assert redundancy_certificate(state, 11).status == "zero"
    assert redundancy_certificate(state, 3).status == "not_eligible"
    with pytest.raises(ValueError):
        redundancy_certificate(state, 99)


def test_tight_window_reports_undecided(state):
    # a slack of zero leaves no room above the member's own value
    cert = redundancy_certificate(state, 5, value_slack=state.basis.zero())
    assert cert.status == "undecided"


# -- the trimmed sequence --------------------------------------------------------


def test_sequence_detail(state, detail):
    assert detail.kept_p == (1, 2)
    assert detail.kept_t == (1, 2, 3, 4, 8)
    assert detail.certified
    polys = detail.polynomials(state)
    assert len(polys) == 7
    assert [p.text() for p in polys] == list(GOLDEN["minimal_polys"])


def test_generating_sequence_variants(state, detail):
    trimmed = generating_sequence(state)
    assert trimmed == detail.polynomials(state)
    full = generating_sequence(state, minimal=False)
    nonzero = [r for r in state.t_chain if not r.poly.is_zero()]
    assert len(full) == len(state.p_chain) + len(nonzero)


def test_detail_reuses_a_provided_survey(state, survey, detail):
    again = generating_sequence_detail(state, survey=survey)
    assert again == detail


def test_second_state_sequence(second_state):
    det = generating_sequence_detail(second_state)
    assert det.kept_p == (1, 2, 3)
    assert det.kept_t == (1,)
    # the two equal first-chain values make the kept set provably
    # non-minimal, so certification must refuse
    assert not det.certified


# -- graded ring relations -------------------------------------------------------


def test_relations_on_example(state):
    rels = gr_presentation(state)
    assert len(rels) == 25
    created = {r.parent[1] for r in state.t_chain if r.parent is not None}
    assert {r.lhs for r in rels} == created
    for rel in rels:
        assert state.value_of(rel.lhs) == state.value_of(rel.rhs)
        assert rel.scalar != 0


def test_relations_hold_between_initial_forms(state):
    for rel in gr_presentation(state):
        lhs = state.model.initial_term(state.poly_of(rel.lhs))
        rhs = state.model.initial_term(state.poly_of(rel.rhs))
        assert lhs == rhs.scale(rel.scalar)


def test_relations_on_second_state(second_state):
    rels = gr_presentation(second_state)
    assert len(rels) == 1
    rel = rels[0]
    assert rel.lhs == PairVec((0, 1), ())
    assert rel.rhs == PairVec((1,), ())
    assert rel.scalar == Fraction(1)


# -- semigroup slices ------------------------------------------------------------


def test_semigroup_slice_known(state):
    sl = semigroup_values_up_to(state, state.basis.rational(2))
    assert [v.exact_str() for v in sl.values] == [
        "0",
        "1",
        "sqrt(2)",
        "2*sqrt(2) - 1",
        "2",
    ]
    assert sl.complete


def test_semigroup_slice_matches_brute_force(state):
    cap = state.basis.rational(4)
    sl = semigroup_values_up_to(state, cap)
    gens = [val for _, _, val in oracles.chain_rows(state)]
    assert list(sl.values) == oracles.sums_up_to(
        gens, cap, state.basis.zero()
    )


def test_semigroup_slice_negative_cap(state):
    sl = semigroup_values_up_to(state, state.basis.rational(-1))
    assert sl.values == ()
