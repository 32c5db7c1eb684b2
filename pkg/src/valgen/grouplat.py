"""Integer lattice and semigroup computations over exact values.

Everything here works with finitely many positive Values (the images of
chain polynomials) and answers questions about the group and the
semigroup they generate:

  * least positive multiple of a value lying in a group,
  * integer solutions of one linear equation over the generators,
  * nonnegative solutions (semigroup membership) with witnesses,
  * canonical decompositions of a value into bounded exponent vectors,
  * the minimal vectors whose value pushes into a smaller semigroup.

Several functions take a chain state argument.  They only use a small
surface of it: ``p_chain`` records with ``beta``/``q``/``L_vec``,
``t_chain`` records with ``gamma``/``s``/``m``/``status``, the obstacle
set ``T_set``, plus the helper methods ``m_at``, ``value_of``,
``semigroup_solver`` and ``push_witness``.  The concrete class lives in
jumpseq; keeping these functions here keeps all lattice reasoning in
one place.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from math import gcd, lcm
from typing import Optional, Sequence

from .errors import (
    InternalConsistencyError,
    NotInGroupError,
    NotInSemigroupError,
)
from .values import Value, combination, _sqrt_floor_scaled

# -- exponent vector pairs ---------------------------------------------


@dataclass(frozen=True)
class PairVec:
    """A pair of nonnegative exponent vectors, one per chain.

    ``p`` indexes the first chain, ``t`` the second, both 1-based through
    the ``p_at``/``t_at`` accessors, which return 0 beyond the stored
    length.  Trailing zeros are trimmed so equality and hashing ignore
    padding.
    """

    p: tuple[int, ...]
    t: tuple[int, ...]

    def __post_init__(self) -> None:
        p = tuple(int(a) for a in self.p)
        t = tuple(int(a) for a in self.t)
        if any(a < 0 for a in p) or any(a < 0 for a in t):
            raise ValueError("PairVec entries must be nonnegative")
        while p and p[-1] == 0:
            p = p[:-1]
        while t and t[-1] == 0:
            t = t[:-1]
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "t", t)

    def p_at(self, j: int) -> int:
        return self.p[j - 1] if 1 <= j <= len(self.p) else 0

    def t_at(self, j: int) -> int:
        return self.t[j - 1] if 1 <= j <= len(self.t) else 0

    def is_zero(self) -> bool:
        return not self.p and not self.t

    def weight(self) -> int:
        return sum(self.p) + sum(self.t)

    def dominates(self, other: "PairVec") -> bool:
        """Componentwise >= against ``other`` (padded with zeros)."""
        if len(other.p) > len(self.p) or len(other.t) > len(self.t):
            return False
        return all(
            a >= b for a, b in zip(self.p, other.p)
        ) and all(a >= b for a, b in zip(self.t, other.t))

    def __str__(self) -> str:
        return f"({','.join(map(str, self.p))}|{','.join(map(str, self.t))})"


def graded_key(pv: PairVec, p_len: int, t_len: int) -> tuple:
    """Total weight, then lexicographic on the padded concatenation."""
    padded = tuple(pv.p_at(j) for j in range(1, p_len + 1)) + tuple(
        pv.t_at(j) for j in range(1, t_len + 1)
    )
    return (pv.weight(), padded)


@dataclass
class ObstacleSet:
    """Vectors that disqualify anything componentwise above them.

    Each entry remembers the chain step that contributed it, so checks
    can be made against the set as it existed before a given step
    (``before``); by default the whole set is used.
    """

    entries: list[tuple[int, PairVec]]

    def __init__(self, entries: Optional[list[tuple[int, PairVec]]] = None):
        self.entries = list(entries) if entries else []

    def add(self, source: int, vec: PairVec) -> None:
        self.entries.append((source, vec))

    def vectors(self, before: Optional[int] = None) -> list[PairVec]:
        if before is None:
            return [v for _, v in self.entries]
        return [v for s, v in self.entries if s < before]

    def irreducible(self, vec: PairVec, before: Optional[int] = None) -> bool:
        """True when no recorded obstacle sits componentwise below vec."""
        for source, obs in self.entries:
            if before is not None and source >= before:
                continue
            if vec.dominates(obs):
                return False
        return True

    def __len__(self) -> int:
        return len(self.entries)


# -- integer sign and enclosure helpers --------------------------------
#
# The semigroup search works on integer coordinate vectors (coefficients
# scaled by a common denominator).  Signs and magnitude bounds come from
# the same enclosure idea as Value.sign, kept in plain integers here to
# stay cheap inside the search loop.


def _int_vec_bounds(
    vec: Sequence[int], radicands: Sequence[int], bits: int
) -> tuple[int, int]:
    """Integer lo/hi with lo <= 2^bits * value(vec) <= hi."""
    lo = 0
    hi = 0
    for c, r in zip(vec, radicands):
        if c == 0:
            continue
        if r == 1:
            lo += c << bits
            hi += c << bits
            continue
        f = _sqrt_floor_scaled(r, bits)
        if c > 0:
            lo += c * f
            hi += c * (f + 1)
        else:
            lo += c * (f + 1)
            hi += c * f
    return lo, hi


def _int_vec_sign(vec: Sequence[int], radicands: Sequence[int]) -> int:
    if not any(vec):
        return 0
    if all(c == 0 for c in vec[1:]):
        return 1 if vec[0] > 0 else -1
    bits = 64
    while True:
        lo, hi = _int_vec_bounds(vec, radicands, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2


# -- Smith normal form ---------------------------------------------------


def smith_normal_form(
    matrix: Sequence[Sequence[int]],
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Diagonalize an integer matrix: returns (S, U, V) with U*A*V = S.

    S is diagonal with nonnegative entries, each dividing the next; U and
    V are unimodular.  Plain elementary-operation elimination, fine for
    the small matrices that show up here (rows = radical count, columns =
    generator count).
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    A = [[int(x) for x in row] for row in matrix]
    for row in A:
        if len(row) != n:
            raise ValueError("ragged matrix")
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i: int, j: int) -> None:
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for r in range(m):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    def row_sub(i: int, j: int, c: int) -> None:  # row_i -= c * row_j
        A[i] = [x - c * y for x, y in zip(A[i], A[j])]
        U[i] = [x - c * y for x, y in zip(U[i], U[j])]

    def col_sub(i: int, j: int, c: int) -> None:  # col_i -= c * col_j
        for r in range(m):
            A[r][i] -= c * A[r][j]
        for r in range(n):
            V[r][i] -= c * V[r][j]

    t = 0
    while t < min(m, n):
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < best):
                    piv = (i, j)
                    best = abs(A[i][j])
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    c = A[i][t] // A[t][t]
                    row_sub(i, t, c)
                    if A[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    c = A[t][j] // A[t][t]
                    col_sub(j, t, c)
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
        # divisibility: the pivot must divide the rest of the submatrix
        offender = None
        for i in range(t + 1, m):
            if any(A[i][j] % A[t][t] for j in range(t + 1, n)):
                offender = i
                break
        if offender is not None:
            row_sub(t, offender, -1)
            continue
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


def _scaled_system(
    alpha: Value, gens: Sequence[Value]
) -> tuple[list[list[int]], list[int]]:
    """Columns of generator coordinates and the target, scaled integral."""
    basis = alpha.basis
    for g in gens:
        if g.basis != basis:
            raise ValueError("generators carry a different radical basis")
    denoms = [c.denominator for c in alpha.coeffs]
    for g in gens:
        denoms.extend(c.denominator for c in g.coeffs)
    D = lcm(*denoms) if denoms else 1
    d = basis.dim
    A = [[int(g.coeffs[r] * D) for g in gens] for r in range(d)]
    b = [int(alpha.coeffs[r] * D) for r in range(d)]
    return A, b


def min_multiple_in_group(alpha: Value, gens: Sequence[Value]) -> Optional[int]:
    """Least q >= 1 with q*alpha in the group generated by gens, else None."""
    gens = list(gens)
    if not gens:
        return 1 if alpha.is_zero() else None
    A, b = _scaled_system(alpha, gens)
    S, U, _ = smith_normal_form(A)
    d = len(b)
    n = len(gens)
    c = [sum(U[i][j] * b[j] for j in range(d)) for i in range(d)]
    q = 1
    for i in range(d):
        s = S[i][i] if i < min(d, n) else 0
        if s:
            q = lcm(q, s // gcd(s, c[i]))
        elif c[i]:
            return None
    return q


def is_commensurable(alpha: Value, gens: Sequence[Value]) -> bool:
    return min_multiple_in_group(alpha, gens) is not None


def lattice_solve(
    alpha: Value, gens: Sequence[Value]
) -> Optional[tuple[int, ...]]:
    """Integers x with sum(x_k * gens_k) == alpha, or None.

    Any solution will do; the result is verified exactly before being
    returned.
    """
    gens = list(gens)
    if not gens:
        return () if alpha.is_zero() else None
    A, b = _scaled_system(alpha, gens)
    S, U, V = smith_normal_form(A)
    d = len(b)
    n = len(gens)
    c = [sum(U[i][j] * b[j] for j in range(d)) for i in range(d)]
    y = [0] * n
    for i in range(d):
        s = S[i][i] if i < min(d, n) else 0
        if s:
            if c[i] % s:
                return None
            y[i] = c[i] // s
        elif c[i]:
            return None
    x = tuple(
        sum(V[j][i] * y[i] for i in range(n)) for j in range(n)
    )
    if combination(x, gens, alpha.basis) != alpha:
        raise InternalConsistencyError("lattice solution failed verification")
    return x


# -- semigroup membership -------------------------------------------------


class SemigroupSolver:
    """Decides membership in the semigroup generated by positive values.

    One instance per generator tuple; failed subproblems are memoized, so
    repeated queries against the same generators get cheaper over time.
    Instances are shared through ``solver_for`` below.
    """

    def __init__(self, gens: Sequence[Value]):
        gens = tuple(gens)
        if not gens:
            raise ValueError("need at least one generator")
        basis = gens[0].basis
        for g in gens:
            if g.basis != basis:
                raise ValueError("generators carry different radical bases")
            if g.sign() <= 0:
                raise ValueError("semigroup generators must be positive")
        self.basis = basis
        self.radicands = basis.radicands
        self.dim = basis.dim
        denoms = [c.denominator for g in gens for c in g.coeffs]
        self.scale = lcm(*denoms)
        vecs = {
            k: tuple(
                int(gens[k].coeffs[r] * self.scale) for r in range(basis.dim)
            )
            for k in range(len(gens))
        }
        # spend scarce coordinates first: generators carrying a later
        # radical sort ahead, so their counts are pinned by small integer
        # budgets instead of loose value estimates
        self.order = sorted(
            range(len(gens)),
            key=lambda k: (tuple(reversed(vecs[k])), gens[k]),
            reverse=True,
        )
        self.gvecs = [vecs[k] for k in self.order]
        self.count = len(gens)
        # suffix profiles: from each position on, is a coordinate left
        # untouched by all remaining generators, or only ever lowered
        untouched = [(True,) * self.dim] * (self.count + 1)
        lowered_only = [(True,) * self.dim] * (self.count + 1)
        for j in range(self.count - 1, -1, -1):
            g = self.gvecs[j]
            untouched[j] = tuple(
                untouched[j + 1][r] and g[r] == 0 for r in range(self.dim)
            )
            lowered_only[j] = tuple(
                lowered_only[j + 1][r] and g[r] >= 0 for r in range(self.dim)
            )
        self.suff_zero = untouched
        self.suff_nonneg = lowered_only
        self._fail: set[tuple[int, tuple[int, ...]]] = set()
        self._lock = threading.Lock()

    def contains(self, alpha: Value) -> Optional[tuple[int, ...]]:
        """A witness exponent tuple over the original generator order, or None."""
        if alpha.basis != self.basis:
            raise ValueError("value carries a different radical basis")
        vec = []
        for c in alpha.coeffs:
            scaled = c * self.scale
            if scaled.denominator != 1:
                # every semigroup element has coordinates in (1/scale)Z
                return None
            vec.append(int(scaled))
        with self._lock:
            got = self._search(0, tuple(vec))
        if got is None:
            return None
        out = [0] * self.count
        for pos, k in enumerate(self.order):
            out[k] = got[pos]
        return tuple(out)

    def _search(
        self, j: int, rem: tuple[int, ...]
    ) -> Optional[tuple[int, ...]]:
        if not any(rem):
            return (0,) * (self.count - j)
        if j >= self.count:
            return None
        has_negative = False
        szero = self.suff_zero[j]
        snonneg = self.suff_nonneg[j]
        for r in range(self.dim):
            c = rem[r]
            if c == 0:
                continue
            if szero[r]:
                return None
            if c < 0:
                if snonneg[r]:
                    return None
                has_negative = True
        if has_negative and _int_vec_sign(rem, self.radicands) < 0:
            return None
        g = self.gvecs[j]
        if j == self.count - 1:
            # rem must be an exact nonnegative multiple of the last generator
            n = None
            for a, b in zip(rem, g):
                if b == 0:
                    if a != 0:
                        return None
                elif a % b:
                    return None
                else:
                    k = a // b
                    if n is None:
                        n = k
                    elif k != n:
                        return None
            if n is None or n < 0:
                return None
            return (n,)
        key = (j, rem)
        if key in self._fail:
            return None
        nxt_zero = self.suff_zero[j + 1]
        nxt_nonneg = self.suff_nonneg[j + 1]
        lo = 0
        hi: Optional[int] = None
        for r in range(self.dim):
            b = g[r]
            if b == 0:
                continue
            if nxt_zero[r]:
                # the last generator to touch this coordinate, so its
                # count is forced exactly
                if rem[r] % b:
                    self._fail.add(key)
                    return None
                n = rem[r] // b
                if n < 0:
                    self._fail.add(key)
                    return None
                lo = hi = n
                break
            if b > 0 and nxt_nonneg[r]:
                top = rem[r] // b
                hi = top if hi is None else min(hi, top)
        if hi is None:
            hi = self._max_count(rem, g)
        if hi < lo:
            self._fail.add(key)
            return None
        for n in range(hi, lo - 1, -1):
            nxt = tuple(a - n * b for a, b in zip(rem, g))
            got = self._search(j + 1, nxt)
            if got is not None:
                return (n,) + got
        self._fail.add(key)
        return None

    def _max_count(self, rem: Sequence[int], g: Sequence[int]) -> int:
        bits = 64
        while True:
            glo, _ = _int_vec_bounds(g, self.radicands, bits)
            if glo > 0:
                break
            bits *= 2
        _, rhi = _int_vec_bounds(rem, self.radicands, bits)
        if rhi <= 0:
            return 0
        return rhi // glo


_SOLVERS: dict[tuple[Value, ...], SemigroupSolver] = {}
_SOLVERS_LOCK = threading.Lock()


def solver_for(gens: Sequence[Value]) -> SemigroupSolver:
    key = tuple(gens)
    with _SOLVERS_LOCK:
        got = _SOLVERS.get(key)
    if got is None:
        got = SemigroupSolver(key)
        with _SOLVERS_LOCK:
            got = _SOLVERS.setdefault(key, got)
    return got


def semigroup_contains(
    alpha: Value, gens: Sequence[Value]
) -> Optional[tuple[int, ...]]:
    """Nonnegative integers x with sum(x_k*gens_k) == alpha, or None.

    Raises ValueError when a generator is not strictly positive.  The
    witness, when one exists, is verified exactly.
    """
    gens = tuple(gens)
    if not gens:
        return () if alpha.is_zero() else None
    wit = solver_for(gens).contains(alpha)
    if wit is not None and combination(wit, gens, alpha.basis) != alpha:
        raise InternalConsistencyError("semigroup witness failed verification")
    return wit


def minimal_semigroup_generators(values: Sequence[Value]) -> tuple[Value, ...]:
    """The unique minimal generating set of the semigroup the values generate.

    A value is dropped exactly when the others already produce it.  Every
    representation of a value uses strictly smaller values, so dropping
    works independently of order.
    """
    vals = sorted(set(values))
    for v in vals:
        if v.sign() <= 0:
            raise ValueError("semigroup values must be positive")
    keep = []
    for idx, g in enumerate(vals):
        others = vals[:idx] + vals[idx + 1 :]
        if not others or semigroup_contains(g, others) is None:
            keep.append(g)
    return tuple(keep)


# -- canonical decompositions against a chain state -----------------------


def _chain_generators(state, k: int, i: int) -> tuple[list[Value], list[int]]:
    """Values of the first k p-members plus the nonzero gammas among t_1..t_i.

    Returns (values, t_positions) where t_positions maps the trailing
    entries of values back to 0-based t-chain indices.
    """
    vals = [state.p_chain[j].beta for j in range(k)]
    tpos = []
    for j in range(i):
        g = state.t_chain[j].gamma
        if not g.is_zero():
            vals.append(g)
            tpos.append(j)
    return vals, tpos


def permissible_decompose(
    alpha: Value, state, k: int, i: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Write alpha over the chain values with all bounded slots in range.

    Returns integer vectors (L, N) with

        alpha == sum L_j * beta_j + sum N_t * gamma_t,

    where 0 <= L_j < q_j whenever q_j is finite (j >= 2), 0 <= N_t < s_t
    whenever s_t is finite, N_t == 0 at zero gammas, and the remaining
    slots are unrestricted integers (they may be negative).  Such a
    rewrite exists exactly when alpha lies in the group generated by the
    values; otherwise NotInGroupError is raised.
    """
    if k < 1 or k > len(state.p_chain):
        raise ValueError(f"p-index {k} out of range")
    if i < 0 or i > len(state.t_chain):
        raise ValueError(f"t-index {i} out of range")
    p = state.p_chain
    t = state.t_chain
    m = max(k, state.m_at(i))
    gens, tpos = _chain_generators(state, m, i)
    wit = lattice_solve(alpha, gens)
    if wit is None:
        raise NotInGroupError(
            f"{alpha} is not in the group generated by the chain values"
        )
    L = list(wit[:m])
    N = [0] * i
    for pos, j in enumerate(tpos):
        N[j] = wit[m + pos]
    # fold t-slots into range, top index first; each fold only touches
    # strictly lower positions, so one pass suffices
    for j in range(i, 0, -1):
        rec = t[j - 1]
        if rec.gamma.is_zero():
            if N[j - 1]:
                raise InternalConsistencyError(
                    "weight appeared at a zero chain position"
                )
            continue
        s = rec.s
        if s is None:
            continue  # no finite multiple: the slot is unrestricted
        r = N[j - 1] % s
        c = (N[j - 1] - r) // s
        N[j - 1] = r
        if c:
            wp, wt = state.push_witness(j)
            for a, v in enumerate(wp):
                L[a] += c * v
            for a, v in enumerate(wt):
                N[a] += c * v
    # fold p-slots, top index first
    for j in range(m, 1, -1):
        q = p[j - 1].q
        if q is None:
            continue
        r = L[j - 1] % q
        c = (L[j - 1] - r) // q
        L[j - 1] = r
        if c:
            for a, v in enumerate(p[j - 1].L_vec):
                L[a] += c * v
    got = state.value_of_raw(L, N)
    if got != alpha:
        raise InternalConsistencyError("permissible rewrite changed the value")
    for j in range(2, m + 1):
        q = p[j - 1].q
        if q is not None and not 0 <= L[j - 1] < q:
            raise InternalConsistencyError("bounded p-slot out of range")
    for j in range(1, i + 1):
        s = t[j - 1].s
        if s is not None and not 0 <= N[j - 1] < s:
            raise InternalConsistencyError("bounded t-slot out of range")
    return tuple(L), tuple(N)


def irreducible_decompose(alpha: Value, state, k: int, i: int) -> PairVec:
    """The canonical nonnegative rewrite of alpha over the chain values.

    Peels generators from the top: at a p-position above the active
    t-depth the exponent is the bounded residue of any semigroup witness,
    at a t-position it is the least shift that keeps the remainder
    representable.  The result is independent of witness choices and is
    irreducible against the obstacle set; both facts are asserted.
    Raises NotInSemigroupError when alpha has no nonnegative rewrite.
    """
    sgn = alpha.sign()
    if sgn < 0:
        raise NotInSemigroupError("negative values have no rewrite")
    if i < 0 or i > len(state.t_chain):
        raise ValueError(f"t-index {i} out of range")
    kk = max(k, state.m_at(i), 1)
    if kk > len(state.p_chain):
        raise ValueError(f"p-index {kk} out of range")
    if sgn == 0:
        return PairVec((), ())
    p = state.p_chain
    t = state.t_chain
    L = [0] * kk
    N = [0] * i
    ii = i
    rem = alpha
    while True:
        if ii == 0 and kk == 1:
            n = rem.floor_ratio(p[0].beta)
            if n * p[0].beta != rem:
                raise NotInSemigroupError(
                    f"{alpha} has no nonnegative rewrite over the chain values"
                )
            L[0] = n
            break
        m_ii = state.m_at(ii)
        if kk > m_ii:
            wit = state.semigroup_solver(kk, ii).contains(rem)
            if wit is None:
                raise NotInSemigroupError(
                    f"{alpha} has no nonnegative rewrite over the chain values"
                )
            q = p[kk - 1].q
            b = wit[kk - 1]
            l = b if q is None else b % q
            L[kk - 1] = l
            if l:
                rem = rem - l * p[kk - 1].beta
            kk -= 1
        else:
            g = t[ii - 1].gamma
            if g.is_zero():
                n = 0
            else:
                sub = state.semigroup_solver(m_ii, ii - 1)
                n = 0
                cur = rem
                while sub.contains(cur) is None:
                    n += 1
                    cur = cur - g
                    if cur.sign() < 0:
                        raise NotInSemigroupError(
                            f"{alpha} has no nonnegative rewrite over the "
                            "chain values"
                        )
                rem = cur
            N[ii - 1] = n
            ii -= 1
    pv = PairVec(tuple(L), tuple(N))
    if state.value_of(pv) != alpha:
        raise InternalConsistencyError("canonical rewrite changed the value")
    if not state.T_set.irreducible(pv):
        raise InternalConsistencyError("canonical rewrite is reducible")
    return pv


# -- minimal pushing vectors ----------------------------------------------


@dataclass(frozen=True)
class PushingSearch:
    """Result of a minimal-vector search: the members found, in order,
    and whether the search provably saw everything."""

    members: tuple[PairVec, ...]
    complete: bool


def _max_boxes(boxes: set[tuple[int, ...]]) -> list[tuple[int, ...]]:
    out = []
    for b in boxes:
        dominated = False
        for c in boxes:
            if b != c and all(x <= y for x, y in zip(b, c)):
                dominated = True
                break
        if not dominated:
            out.append(b)
    out.sort(reverse=True)
    return out


def _split_boxes(
    caps: tuple[int, ...], minima: Sequence[tuple[int, ...]]
) -> list[tuple[int, ...]]:
    """Cover of the region below caps avoiding everything above any minimum.

    Boxes are given by their top corner.  For each found minimum, a box
    containing points above it splits into one box per coordinate where
    that minimum is positive, capped just below it; the union of the
    splits is exactly the part of the box not dominating the minimum.
    """
    boxes = {caps}
    for mem in minima:
        nxt: set[tuple[int, ...]] = set()
        for b in boxes:
            if any(b[j] < mem[j] for j in range(len(b))):
                nxt.add(b)
                continue
            for j in range(len(b)):
                if mem[j] > 0:
                    bb = list(b)
                    bb[j] = mem[j] - 1
                    nxt.add(tuple(bb))
        boxes = nxt
        if not boxes:
            return []
    return _max_boxes(boxes)


def minimal_pushing_set(state, i: int) -> PushingSearch:
    """All minimal vectors ending at chain position i whose value drops
    into the semigroup of the earlier members.

    A vector here is (exponents over p_1..p_m, exponents over the live
    t-positions below i, then a positive last exponent at i, necessarily
    a multiple t*s of the least group multiple s).  Within one layer
    (fixed t) the solution set is upward closed, so the layer's minimal
    points are mined by splitting the box into faces, testing each face
    at its top corner with one membership query, and binary-searching a
    hit down to a minimal point.  Layers are processed in increasing t;
    a minimal point whose free part is all zero closes every later
    layer.  The result is flagged incomplete unless every layer was
    provably closed within the exploration caps.
    """
    rec = state.t_chain[i - 1]
    s, m = rec.s, rec.m
    if s is None or m is None:
        raise ValueError(f"position {i} has no finite group multiple")
    gamma = rec.gamma
    if gamma.is_zero():
        raise ValueError(f"position {i} is a zero position")
    bounds = state.bounds
    coords: list[tuple[str, int]] = [("p", j) for j in range(m)]
    for j in range(i - 1):
        tr = state.t_chain[j]
        if tr.status == "ok" and not tr.gamma.is_zero():
            coords.append(("t", j))
    vals = [
        state.p_chain[j].beta if kind == "p" else state.t_chain[j].gamma
        for kind, j in coords
    ]
    n = len(coords)
    caps = (bounds.d_coord_cap,) * n
    solver = state.semigroup_solver(m, i - 1)
    basis = state.basis
    step_value = s * gamma
    memo: dict[tuple[tuple[int, ...], int], bool] = {}

    def member(fvec: tuple[int, ...], layer: int) -> bool:
        key = (fvec, layer)
        got = memo.get(key)
        if got is None:
            total = layer * step_value
            for c, v in zip(fvec, vals):
                if c:
                    total = total + c * v
            got = solver.contains(total) is not None
            memo[key] = got
        return got

    def descend(corner: tuple[int, ...], layer: int) -> tuple[int, ...]:
        cur = list(corner)
        for j in range(n):
            lo, hi = 0, cur[j]
            while lo < hi:
                mid = (lo + hi) // 2
                cur[j] = mid
                if member(tuple(cur), layer):
                    hi = mid
                else:
                    lo = mid + 1
            cur[j] = lo
        return tuple(cur)

    found: list[tuple[tuple[int, ...], int]] = []
    closed_after_zero = False
    complete = True
    for layer in range(1, bounds.d_layer_cap + 1):
        if any(t0 <= layer and not any(f) for f, t0 in found):
            closed_after_zero = True
            break
        visible = [f for f, t0 in found if t0 <= layer]
        while True:
            faces = _split_boxes(caps, visible)
            hit = None
            cap_bounded_miss = False
            for b in faces:
                if member(b, layer):
                    hit = b
                    break
                if any(b[j] >= caps[j] for j in range(n)):
                    cap_bounded_miss = True
            if hit is None:
                if cap_bounded_miss:
                    complete = False
                break
            z = descend(hit, layer)
            found.append((z, layer))
            visible.append(z)
    if not closed_after_zero:
        complete = False

    members = []
    for f, layer in found:
        p_part = [0] * m
        t_part = [0] * i
        for (kind, j), c in zip(coords, f):
            if kind == "p":
                p_part[j] = c
            else:
                t_part[j] = c
        t_part[i - 1] = layer * s
        pv = PairVec(tuple(p_part), tuple(t_part))
        if state.T_set.irreducible(pv, before=i):
            members.append(pv)
    members.sort(key=lambda pv: graded_key(pv, m, i))
    members.sort(key=state.value_of)
    return PushingSearch(tuple(members), complete)
