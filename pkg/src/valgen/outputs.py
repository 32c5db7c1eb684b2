"""Derived artifacts computed from a finished chain state.

Everything here is read-only over the state: valuation ideal generators
at a threshold, redundancy certificates for chain members, the trimmed
generating sequence, the binomial relations of the associated graded
ring, and slices of the value semigroup.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InternalConsistencyError
from .grouplat import PairVec, graded_key, minimal_semigroup_generators
from .jumpseq import JumpState
from .laurent import LaurentPoly
from .values import Value


def _coordinates(state: JumpState, skip_t: Optional[int] = None):
    """Usable exponent positions: every first-chain member plus every
    second-chain member of nonzero value, as (kind, index, value) rows."""
    rows = []
    for rec in state.p_chain:
        rows.append(("p", rec.index, rec.beta))
    for rec in state.t_chain:
        if rec.index != skip_t and not rec.gamma.is_zero():
            rows.append(("t", rec.index, rec.gamma))
    return rows


def _vec_of(state: JumpState, counts: dict) -> PairVec:
    p = [0] * len(state.p_chain)
    t = [0] * len(state.t_chain)
    for (kind, idx), c in counts.items():
        if kind == "p":
            p[idx - 1] = c
        else:
            t[idx - 1] = c
    return PairVec(tuple(p), tuple(t))


# -- valuation ideals ---------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSet:
    """Monomials in the chain members generating a valuation ideal.

    complete is False when a truncated chain may hide further members."""

    threshold: Value
    members: tuple[PairVec, ...]
    complete: bool


def ideal_generators(state: JumpState, sigma: Value) -> GeneratorSet:
    """Minimal monomial exponents whose value reaches sigma.

    Every monomial in the chain members of value at least sigma is
    divisible by one of these.  For sigma <= 0 the unit monomial alone
    qualifies.
    """
    complete = not (state.flags.t_truncated or state.flags.p_truncated)
    if sigma.sign() <= 0:
        return GeneratorSet(sigma, (PairVec((), ()),), complete)
    rows = _coordinates(state)
    found: list[tuple[PairVec, Value]] = []

    def walk(k: int, counts: dict, acc: Value) -> None:
        if acc >= sigma:
            found.append((_vec_of(state, counts), acc))
            return
        if k == len(rows):
            return
        kind, idx, val = rows[k]
        walk(k + 1, counts, acc)
        c = 0
        total = acc
        while True:
            c += 1
            total = total + val
            counts[(kind, idx)] = c
            if total >= sigma:
                found.append((_vec_of(state, counts), total))
                del counts[(kind, idx)]
                return
            walk(k + 1, counts, total)
        # not reached

    walk(0, {}, state.basis.zero())
    values = {("p", r.index): r.beta for r in state.p_chain}
    values.update({("t", r.index): r.gamma for r in state.t_chain})
    minimal = []
    for vec, total in found:
        keep = True
        for pos, c in enumerate(vec.p):
            if c and not total - values[("p", pos + 1)] < sigma:
                keep = False
                break
        if keep:
            for pos, c in enumerate(vec.t):
                if c and not total - values[("t", pos + 1)] < sigma:
                    keep = False
                    break
        if keep:
            minimal.append((vec, total))
    minimal.sort(
        key=lambda pair: (
            pair[1],
            graded_key(pair[0], len(state.p_chain), len(state.t_chain)),
        )
    )
    return GeneratorSet(sigma, tuple(vec for vec, _ in minimal), complete)


# -- redundancy ---------------------------------------------------------------


@dataclass(frozen=True)
class RedundancyCertificate:
    """Outcome of trying to rewrite one second-chain member over the rest.

    status: "zero" for vanished members, "not_eligible" when the value
    itself rules out a rewrite, "certified" with the combination when one
    was found, "undecided" when the bounded search gave out.
    """

    target: int
    status: str
    combo: Optional[tuple[tuple[Fraction, PairVec], ...]] = None


def _mine_pool(
    state: JumpState,
    skip_t: int,
    lo: Value,
    hi: Value,
    degree_cap: int,
) -> dict[Value, PairVec]:
    """Irreducible monomials with value in [lo, hi], cheapest per value."""
    rows = _coordinates(state, skip_t=skip_t)
    # a weight-one blocking vector kills its position outright, and with
    # it every blocking vector that needs that position
    killed: set[int] = set()
    supports = []
    for vec in state.T_set.vectors():
        rows_of = [("p", pos + 1, c) for pos, c in enumerate(vec.p) if c]
        rows_of += [("t", pos + 1, c) for pos, c in enumerate(vec.t) if c]
        if len(rows_of) == 1 and rows_of[0][0] == "t" and rows_of[0][2] == 1:
            killed.add(rows_of[0][1])
        supports.append(rows_of)
    rows = [
        r for r in rows if not (r[0] == "t" and r[1] in killed)
    ]
    blockers = [
        tuple(((kind, idx), c) for kind, idx, c in sup)
        for sup in supports
        if not any(kind == "t" and idx in killed for kind, idx, _ in sup)
    ]

    def reducible(counts: dict) -> bool:
        for sup in blockers:
            if all(counts.get(key, 0) >= c for key, c in sup):
                return True
        return False

    degs = []
    for kind, idx, _ in rows:
        rec = (
            state.p_chain[idx - 1] if kind == "p" else state.t_chain[idx - 1]
        )
        d = rec.poly.total_degree()
        if d is None:
            raise InternalConsistencyError("zero member in coordinate rows")
        degs.append(d)
    plen = len(state.p_chain)
    tlen = len(state.t_chain)
    pool: dict[Value, PairVec] = {}

    def record(counts: dict, val: Value) -> None:
        if not lo <= val:
            return
        vec = _vec_of(state, counts)
        old = pool.get(val)
        if old is None or graded_key(vec, plen, tlen) < graded_key(
            old, plen, tlen
        ):
            pool[val] = vec

    def walk(k: int, counts: dict, val: Value, deg: int) -> None:
        record(counts, val)
        if k == len(rows):
            return
        kind, idx, coordval = rows[k]
        walk(k + 1, counts, val, deg)
        c = 0
        total, dtotal = val, deg
        while True:
            c += 1
            total = total + coordval
            dtotal += degs[k]
            if total > hi or dtotal > degree_cap:
                break
            counts[(kind, idx)] = c
            if reducible(counts):
                break
            walk(k + 1, counts, total, dtotal)
        counts.pop((kind, idx), None)

    walk(0, {}, state.basis.zero(), 0)
    return pool


def redundancy_certificate(
    state: JumpState,
    target: int,
    value_slack: Optional[Value] = None,
    degree_cap: int = 40,
) -> RedundancyCertificate:
    """Try to express second-chain member `target` through the others.

    The search window reaches value_slack above the member's own value
    (five times the first chain value when not given) and ignores
    rewrite monomials of larger polynomial degree than degree_cap.
    """
    if not 1 <= target <= len(state.t_chain):
        raise ValueError(f"no second-chain member {target}")
    rec = state.t_chain[target - 1]
    if rec.poly.is_zero():
        return RedundancyCertificate(target, "zero")
    solver = state.semigroup_solver(state.m_at(target), target - 1)
    if solver.contains(rec.gamma) is None:
        return RedundancyCertificate(target, "not_eligible")
    if value_slack is None:
        value_slack = 5 * state.p_chain[0].beta
    lo = rec.gamma
    hi = rec.gamma + value_slack
    pool = _mine_pool(state, target, lo, hi, degree_cap)
    combo: list[tuple[Fraction, PairVec]] = []
    f = rec.poly
    prev = None
    while not f.is_zero():
        val = state.model.nu(f)
        if prev is not None and not val > prev:
            raise InternalConsistencyError("rewrite failed to raise the value")
        prev = val
        if val > hi:
            return RedundancyCertificate(target, "undecided")
        pick = pool.get(val)
        if pick is None:
            return RedundancyCertificate(target, "undecided")
        mu = state.model.residue_ratio(f, state.poly_of(pick))
        f = f - state.poly_of(pick).scale(mu)
        combo.append((mu, pick))
    return RedundancyCertificate(target, "certified", tuple(combo))


def redundancy_survey(
    state: JumpState,
    value_slack: Optional[Value] = None,
    degree_cap: int = 40,
) -> dict[int, RedundancyCertificate]:
    """One certificate per second-chain member, in chain order."""
    return {
        j: redundancy_certificate(
            state, j, value_slack=value_slack, degree_cap=degree_cap
        )
        for j in range(1, len(state.t_chain) + 1)
    }


# -- generating sequences -----------------------------------------------------


@dataclass(frozen=True)
class SequenceReport:
    """The trimmed generating sequence with its audit trail.

    kept_p and kept_t list the surviving chain indices; certificates
    holds the per-member outcomes that justified each removal; certified
    is True only when the kept set is provably minimal.
    """

    kept_p: tuple[int, ...]
    kept_t: tuple[int, ...]
    certificates: dict[int, RedundancyCertificate]
    certified: bool

    def polynomials(self, state: JumpState) -> tuple[LaurentPoly, ...]:
        polys = [state.p_chain[i - 1].poly for i in self.kept_p]
        polys.extend(state.t_chain[j - 1].poly for j in self.kept_t)
        return tuple(polys)


def generating_sequence_detail(
    state: JumpState,
    value_slack: Optional[Value] = None,
    degree_cap: int = 40,
    survey: Optional[dict[int, RedundancyCertificate]] = None,
) -> SequenceReport:
    """Drop provably redundant members and certify minimality if possible."""
    certs = survey if survey is not None else redundancy_survey(
        state, value_slack=value_slack, degree_cap=degree_cap
    )
    kept_p = tuple(r.index for r in state.p_chain)
    kept_t = tuple(
        j
        for j, cert in certs.items()
        if cert.status in ("not_eligible", "undecided")
    )
    certified = not (state.flags.t_truncated or state.flags.p_truncated)
    if any(cert.status == "undecided" for cert in certs.values()):
        certified = False
    kept_values = [state.p_chain[i - 1].beta for i in kept_p]
    kept_values.extend(state.t_chain[j - 1].gamma for j in kept_t)
    if certified:
        minimal = minimal_semigroup_generators(kept_values)
        if sorted(kept_values) != list(minimal):
            certified = False
    if certified:
        # a rewrite leaning on a dropped member would leave the kept set
        # short of generating, so insist every combination stays inside it
        kept = set(kept_t)
        for cert in certs.values():
            if cert.status != "certified":
                continue
            for _, vec in cert.combo:
                for pos, c in enumerate(vec.t):
                    if c and pos + 1 not in kept:
                        certified = False
    return SequenceReport(kept_p, kept_t, certs, certified)


def generating_sequence(
    state: JumpState, minimal: bool = True
) -> tuple[LaurentPoly, ...]:
    """The chain members as polynomials, trimmed when minimal is True."""
    if not minimal:
        polys = [r.poly for r in state.p_chain]
        polys.extend(r.poly for r in state.t_chain if not r.poly.is_zero())
        return tuple(polys)
    return generating_sequence_detail(state).polynomials(state)


# -- associated graded ring ---------------------------------------------------


@dataclass(frozen=True)
class GrRelation:
    """One binomial relation between initial forms: lhs = scalar * rhs."""

    lhs: PairVec
    rhs: PairVec
    scalar: Fraction


def gr_presentation(state: JumpState) -> tuple[GrRelation, ...]:
    """The defining relations of the graded ring of the valuation.

    One relation per jump of the first chain and one per creation of the
    second, including creations whose member vanished.
    """
    out: list[GrRelation] = []
    for rec in state.p_chain:
        if rec.q is None:
            continue
        lhs = PairVec((0,) * (rec.index - 1) + (rec.q,), ())
        rhs = PairVec(rec.L_vec, ())
        if state.value_of(lhs) != state.value_of(rhs):
            raise InternalConsistencyError("relation sides disagree in value")
        if rec.lam == 0:
            raise InternalConsistencyError("vanishing scalar in a relation")
        out.append(GrRelation(lhs, rhs, rec.lam))
    for rec in state.t_chain:
        if rec.parent is None:
            continue
        _, vec = rec.parent
        if state.value_of(vec) != state.value_of(rec.LN):
            raise InternalConsistencyError("relation sides disagree in value")
        if rec.mu == 0:
            raise InternalConsistencyError("vanishing scalar in a relation")
        out.append(GrRelation(vec, rec.LN, rec.mu))
    return tuple(out)


# -- semigroup slices ---------------------------------------------------------


@dataclass(frozen=True)
class SemigroupSlice:
    """All semigroup values up to a cap, with a completeness marker."""

    cap: Value
    values: tuple[Value, ...]
    complete: bool


def semigroup_values_up_to(state: JumpState, cap: Value) -> SemigroupSlice:
    """Every value of the semigroup of chain values that is at most cap."""
    complete = not (state.flags.t_truncated or state.flags.p_truncated)
    if cap.sign() < 0:
        return SemigroupSlice(cap, (), complete)
    rows = _coordinates(state)
    seen: set[Value] = set()

    def walk(k: int, acc: Value) -> None:
        seen.add(acc)
        for kk in range(k, len(rows)):
            total = acc + rows[kk][2]
            if total <= cap:
                walk(kk, total)

    walk(0, state.basis.zero())
    return SemigroupSlice(cap, tuple(sorted(seen)), complete)
