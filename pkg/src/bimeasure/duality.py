"""Finite duals as universal measuring objects over ``A = k``.

A candidate ``(M, theta)`` is universal for ``B`` when every measuring
``psi: C (x) B -> A`` is ``theta (f (x) 1)`` for exactly one coalgebra map
``f: C -> M``.  At ``A = k`` the finite dual with the evaluation pairing is
such an object; other candidates can only be tested, which is what
:func:`universality_check` does.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg as la
from .algebra import (
    Algebra,
    Bialgebra,
    BilinearPairing,
    Counterexample,
    LinMap,
    check_algebra_map,
    check_bialgebra_map,
    check_coalgebra_map,
    dual,
    tensor_product,
)
from .catalog import ground_field
from .errors import BimeasureError, BudgetExceeded, DoesNotFactor, InconsistentSystem, ValidationError
from .linalg import Matrix
from .measuring import check_bimeasuring, check_measuring, enumerate_bimeasurings, enumerate_measurings
from .polysolve import DEFAULT_BUDGET, Poly, PolynomialSystem
from .structure import cocommutative_part, subcarrier

log = logging.getLogger(__name__)


@dataclass
class UniversalCandidate:
    """A carrier ``M`` with a pairing ``theta: M (x) B -> A``."""

    carrier: object
    theta: BilinearPairing
    bimeasuring: bool = False

    @property
    def base(self):
        return self.theta.right

    @property
    def target(self) -> Algebra:
        return self.theta.target

    def check(self) -> Counterexample | None:
        w = check_bimeasuring(self.theta) if self.bimeasuring else check_measuring(self.theta)
        return w.counterexample


def _scalar_field(F) -> Algebra:
    return ground_field(F).algebra_part()


def evaluation_pairing(B) -> BilinearPairing:
    """``theta(e*_i, e_j) = delta_ij`` on ``dual(B) (x) B``."""
    F = B.field
    M = dual(B)
    k = _scalar_field(F)
    return BilinearPairing.scalar(M, B, k, la.identity(F, B.dim))


def finite_dual_universal(B) -> UniversalCandidate:
    theta = evaluation_pairing(B)
    cand = UniversalCandidate(theta.left, theta, isinstance(B, Bialgebra))
    cx = cand.check()
    if cx is not None:
        raise ValidationError(cx)
    return cand


def trivial_candidate(B) -> UniversalCandidate:
    """``M = k`` paired with ``B`` through the counit; universal only when ``B = k``."""
    F = B.field
    k = ground_field(F)
    theta = BilinearPairing.scalar(k, B, _scalar_field(F), [list(B.counit)])
    return UniversalCandidate(k, theta, False)


def restrict_candidate(cand: UniversalCandidate, basis: Sequence[Sequence]) -> UniversalCandidate:
    """Restrict ``theta`` to the subcoalgebra of ``M`` spanned by ``basis``."""
    sub, incl = subcarrier(cand.carrier, basis)
    B = cand.base
    table = [
        [cand.theta.evaluate([row[i] for row in incl], B.basis_vector(b)) for b in range(B.dim)] for i in range(sub.dim)
    ]
    return UniversalCandidate(sub, BilinearPairing(sub, B, cand.target, table), cand.bimeasuring and isinstance(sub, Bialgebra))


def cocommutative_candidate(B) -> UniversalCandidate:
    """The cocommutative part of the finite dual, with the restricted evaluation pairing."""
    cand = finite_dual_universal(B)
    pres = cocommutative_part(cand.carrier)
    return restrict_candidate(cand, pres.subspace.vectors())


# -- factorization --------------------------------------------------------------

@dataclass
class Factorization:
    map: LinMap
    unique: bool
    kernel_dim: int
    checked: int = 1


def _factor_system(psi: BilinearPairing, cand: UniversalCandidate) -> tuple[Matrix, list]:
    """Linear conditions ``theta(F c, b) = psi(c, b)`` and ``eps_M F = eps_C``; unknown ``F[m][c]`` at ``m*dC + c``."""
    C, B, A = psi.left, psi.right, psi.target
    M, theta = cand.carrier, cand.theta
    F = A.field
    dM, dC = M.dim, C.dim
    rows, rhs = [], []
    for c in range(C.dim):
        for b in range(B.dim):
            for a in range(A.dim):
                row = [F.zero] * (dM * dC)
                for m in range(dM):
                    row[m * dC + c] = theta.table[m][b][a]
                rows.append(row)
                rhs.append(psi.table[c][b][a])
        row = [F.zero] * (dM * dC)
        for m in range(dM):
            row[m * dC + c] = M.counit[m]
        rows.append(row)
        rhs.append(C.counit[c])
    return rows, rhs


def _as_matrix(x: Sequence, dM: int, dC: int) -> Matrix:
    return [list(x[m * dC:(m + 1) * dC]) for m in range(dM)]


def _map_ok(Fm: Matrix, C, cand: UniversalCandidate, algebra_too: bool) -> bool:
    if check_coalgebra_map(Fm, C, cand.carrier) is not None:
        return False
    return not algebra_too or check_algebra_map(Fm, C, cand.carrier) is None


def factor_measuring(
    psi: BilinearPairing, cand: UniversalCandidate, as_bialgebra_map: bool = False, budget: int = DEFAULT_BUDGET
) -> Factorization:
    """The coalgebra map ``f: C -> M`` with ``theta (f (x) 1) = psi``.

    The linear part pins an affine space; when it is a single point only the
    comultiplicativity check remains, otherwise (over F_p) the affine space is
    exhausted and the number of coalgebra maps found decides uniqueness.
    Raises :class:`DoesNotFactor` when no such map exists.
    """
    C = psi.left
    F = psi.field
    if psi.right is not cand.base and psi.right.dim != cand.base.dim:
        raise BimeasureError("pairing and candidate are over different algebras")
    dM, dC = cand.carrier.dim, C.dim
    rows, rhs = _factor_system(psi, cand)
    try:
        x, ker = la.solve_linear(F, rows, rhs)
    except InconsistentSystem:
        raise DoesNotFactor("no linear map C -> M reproduces psi through theta") from None
    algebra_too = as_bialgebra_map and isinstance(C, Algebra) and isinstance(cand.carrier, Algebra)
    if not ker:
        Fm = _as_matrix(x, dM, dC)
        if not _map_ok(Fm, C, cand, algebra_too):
            raise DoesNotFactor("the unique linear solution is not a coalgebra map")
        return Factorization(LinMap(F, Fm, C, cand.carrier), True, 0)
    if not F.is_finite:
        raise BimeasureError(f"factorization has a {len(ker)}-dimensional linear ambiguity over Q")
    if F.size ** len(ker) > budget:
        raise BudgetExceeded(f"{F.size}^{len(ker)} linear solutions exceed budget {budget}")
    found = []
    for coeffs in itertools.product(range(F.size), repeat=len(ker)):
        v = list(x)
        for c, k in zip(coeffs, ker):
            if c:
                v = la.vadd(F, v, la.vscale(F, c, k))
        Fm = _as_matrix(v, dM, dC)
        if _map_ok(Fm, C, cand, algebra_too):
            found.append(Fm)
    if not found:
        raise DoesNotFactor("no coalgebra map in the affine solution space")
    return Factorization(LinMap(F, found[0], C, cand.carrier), len(found) == 1, len(ker), F.size ** len(ker))


def lemma1_operator(cand: UniversalCandidate, C) -> Matrix:
    """Matrix of ``f -> theta (f (x) 1)`` from ``Hom(C, M)`` to ``Hom(C (x) B, A)``."""
    psi0 = BilinearPairing(C, cand.base, cand.target, [[[0] * cand.target.dim for _ in range(cand.base.dim)] for _ in range(C.dim)])
    rows, _ = _factor_system(psi0, cand)
    # drop the counit rows, keep only theta-compatibility
    per_c = cand.base.dim * cand.target.dim + 1
    return [r for i, r in enumerate(rows) if i % per_c != per_c - 1]


def lemma1_injective(cand: UniversalCandidate, C) -> bool:
    """Uniqueness of factorizations: the induced operator on all linear maps has zero kernel."""
    op = lemma1_operator(cand, C)
    return not la.kernel(cand.theta.field, op, cand.carrier.dim * C.dim)


# -- bialgebra maps and the self-adjunction ------------------------------------

def _map_equations(T, S, system: PolynomialSystem) -> None:
    """Polynomial equations for ``F: T -> S`` being a bialgebra map; ``F[s][t]`` is unknown ``t*dS + s``."""
    F = T.field
    dT, dS = T.dim, S.dim

    def col(t):
        return [Poly.var(F, t * dS + s) for s in range(dS)]

    def image(vec):
        out = [Poly(F) for _ in range(dS)]
        for t, c in enumerate(vec):
            if c != 0:
                out = [o + p * c for o, p in zip(out, col(t))]
        return out

    def sprod(u, w):
        out = [Poly(F) for _ in range(dS)]
        for (r, s, t), c in S.mult.entries.items():
            out[t] = out[t] + (u[r] * w[s]) * c
        return out

    for i in range(dT):
        for j in range(dT):
            lhs = image(T.product(T.basis_vector(i), T.basis_vector(j)))
            for l_, r_ in zip(lhs, sprod(col(i), col(j))):
                system.add(l_ - r_)
    for l_, u in zip(image(T.one), S.one):
        system.add(l_ - Poly.const(F, u))
    for t in range(dT):
        ct = col(t)
        # Delta_S F(e_t) - (F (x) F) Delta_T(e_t)
        eqs: dict = {}
        for (s, a, b), c in S.comult.entries.items():
            eqs[(a, b)] = eqs.get((a, b), Poly(F)) + ct[s] * c
        for t1, t2, c in T.basis_coproduct(t):
            c1, c2 = col(t1), col(t2)
            for a in range(dS):
                for b in range(dS):
                    eqs[(a, b)] = eqs.get((a, b), Poly(F)) - (c1[a] * c2[b]) * c
        for e in eqs.values():
            system.add(e)
        lhs = Poly(F)
        for s in range(dS):
            lhs = lhs + ct[s] * S.counit[s]
        system.add(lhs - Poly.const(F, T.counit[t]))


def enumerate_bialgebra_maps(T, S, budget: int = DEFAULT_BUDGET) -> list[LinMap]:
    """All bialgebra maps ``T -> S``, sorted by matrix entries."""
    F = T.field
    dT, dS = T.dim, S.dim
    system = PolynomialSystem(F, dT * dS)
    _map_equations(T, S, system)
    out = []
    for sol in system.solve(budget=budget):
        m = [[sol[t * dS + s] for t in range(dT)] for s in range(dS)]
        out.append(LinMap(F, m, T, S))
    out.sort(key=lambda f: tuple(map(tuple, f.matrix)))
    return out


def adjunction_transpose(f: LinMap, T, N) -> LinMap:
    """``psi_{T,N}``: a bialgebra map ``T -> dual(N)`` becomes ``N -> dual(T)``.

    Under the evaluation identification of ``dual(dual(N))`` with ``N`` this is
    the matrix transpose; the defining identity is checked before returning.
    """
    F = T.field
    NO, TO = dual(N), dual(T)
    cx = check_bialgebra_map(f.matrix, T, NO)
    if cx is not None:
        raise ValidationError(cx)
    log.debug("forming transpose %dx%d under the double-dual identification", *la.shape(f.matrix))
    g = LinMap(F, la.transpose(f.matrix) if f.matrix else la.zeros(F, T.dim, N.dim), N, TO)
    cx = adjunction_identity(f, g, T, N)
    if cx is not None:
        raise BimeasureError(f"transpose failed the adjunction identity: {cx}")
    return g


def adjunction_inverse(g: LinMap, T, N) -> LinMap:
    """``xi``: the inverse direction, ``N -> dual(T)`` back to ``T -> dual(N)``."""
    return adjunction_transpose(g, N, T)


def adjunction_identity(f: LinMap, g: LinMap, T, N) -> Counterexample | None:
    """``theta_T(g(n), t) = theta_N(f(t), n)`` on all basis pairs."""
    F = T.field
    for n in range(N.dim):
        for t in range(T.dim):
            lhs, rhs = g.matrix[t][n], f.matrix[n][t]
            if lhs != rhs:
                return Counterexample("theta_T(g(n), t) = theta_N(f(t), n)", (n, t), (lhs,), (rhs,), F)
    return None


def naturality_check(f: LinMap, alpha: LinMap, R, T, N) -> Counterexample | None:
    """``psi_{R,N}(f alpha) = dual(alpha) psi_{T,N}(f)`` for ``alpha: R -> T``."""
    F = T.field
    lhs = adjunction_transpose(f.compose(alpha), R, N).matrix
    rhs = la.matmul(F, la.transpose(alpha.matrix), adjunction_transpose(f, T, N).matrix)
    if lhs != rhs:
        for i, (a, b) in enumerate(zip(lhs, rhs)):
            if a != b:
                return Counterexample("psi(f alpha) = dual(alpha) psi(f)", (i,), tuple(a), tuple(b), F)
    return None


@dataclass
class AdjunctionReport:
    left_count: int
    right_count: int
    round_trips: bool
    bijective: bool

    @property
    def ok(self) -> bool:
        return self.left_count == self.right_count and self.round_trips and self.bijective


def adjunction_check(T, N, budget: int = DEFAULT_BUDGET) -> AdjunctionReport:
    """Enumerate both hom-sets and confirm the transpose is a bijection between them."""
    left = enumerate_bialgebra_maps(T, dual(N), budget)
    right = enumerate_bialgebra_maps(N, dual(T), budget)
    images = [adjunction_transpose(f, T, N) for f in left]
    back = [adjunction_inverse(g, T, N) for g in images]
    round_trips = all(b.matrix == f.matrix for b, f in zip(back, left))
    right_keys = {tuple(map(tuple, g.matrix)) for g in right}
    image_keys = {tuple(map(tuple, g.matrix)) for g in images}
    return AdjunctionReport(len(left), len(right), round_trips, image_keys == right_keys and len(image_keys) == len(left))


# -- tensor comparison ---------------------------------------------------------

@dataclass
class TensorComparison:
    alpha: LinMap
    retraction: LinMap
    square_ok: bool
    composite_identity: bool
    bijective: bool
    details: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.square_ok and self.composite_identity and self.bijective


def _dual_map(f: Matrix) -> Matrix:
    return la.transpose(f)


def tensor_comparison_alpha(T, S) -> TensorComparison:
    """``alpha: dual(T) (x) dual(S) -> dual(T (x) S)`` with the square and retraction checks."""
    F = T.field
    TO, SO = dual(T), dual(S)
    TS = tensor_product(T, S)
    src = tensor_product(TO, SO)
    dT, dS = T.dim, S.dim
    k = _scalar_field(F)
    # psi(f (x) g, t (x) s) = f(t) g(s)
    values = [[F.one if (fg // dS == ts // dS and fg % dS == ts % dS) else F.zero for ts in range(dT * dS)]
              for fg in range(dT * dS)]
    psi = BilinearPairing.scalar(src, TS, k, values)
    cand = finite_dual_universal(TS)
    fac = factor_measuring(psi, cand)
    alpha = LinMap(F, fac.map.matrix, src, cand.carrier)
    details = []

    eta_S, eps_S = S.one, S.counit
    iota1 = la.from_columns(F, [la.vkron(F, T.basis_vector(t), eta_S) for t in range(dT)])  # T -> T(x)S
    pi1 = la.from_columns(F, [la.vscale(F, eps_S[j % dS], T.basis_vector(j // dS)) for j in range(dT * dS)])
    iota1_bar = _dual_map(iota1)  # dual(T(x)S) -> dual(T)
    pi1_bar = _dual_map(pi1)  # dual(T) -> dual(T(x)S)
    # 1 (x) eta on duals: f -> f (x) eps_S ; 1 (x) eps on duals: f (x) g -> f g(1)
    one_eta = la.from_columns(F, [la.vkron(F, TO.basis_vector(t), SO.one) for t in range(dT)])
    one_eps = la.from_columns(
        F, [la.vscale(F, SO.counit[j % dS], TO.basis_vector(j // dS)) for j in range(dT * dS)]
    )
    sq1 = la.matmul(F, alpha.matrix, one_eta) == pi1_bar
    sq2 = la.matmul(F, iota1_bar, alpha.matrix) == one_eps
    if not sq1:
        details.append("alpha (1 (x) eta) != dual(1 (x) eps)")
    if not sq2:
        details.append("dual(1 (x) eta) alpha != 1 (x) eps")

    # retraction: x -> iota1_bar(x_1) (x) iota2_bar(x_2) using the coproduct of dual(T (x) S)
    iota2 = la.from_columns(F, [la.vkron(F, T.one, S.basis_vector(s)) for s in range(dS)])
    iota2_bar = _dual_map(iota2)
    M = cand.carrier
    cols = []
    for x in range(M.dim):
        acc = [F.zero] * (dT * dS)
        for x1, x2, c in M.basis_coproduct(x):
            u = [row[x1] for row in iota1_bar]
            w = [row[x2] for row in iota2_bar]
            acc = la.vadd(F, acc, la.vscale(F, c, la.vkron(F, u, w)))
        cols.append(acc)
    retraction = LinMap(F, la.from_columns(F, cols), M, src)
    composite = la.matmul(F, retraction.matrix, alpha.matrix)
    comp_ok = composite == la.identity(F, dT * dS)
    if not comp_ok:
        details.append("(iota1_bar * iota2_bar) alpha is not the identity")
    bij = la.rank(F, alpha.matrix) == M.dim == src.dim
    return TensorComparison(alpha, retraction, sq1 and sq2, comp_ok, bij, details)


# -- universality ---------------------------------------------------------------

@dataclass
class UniversalityFailure:
    test: str
    index: int
    reason: str

    def to_json(self) -> dict:
        return {"test": self.test, "index": self.index, "reason": self.reason}


@dataclass
class UniversalityReport:
    counts: dict
    failures: list
    unique: bool

    @property
    def ok(self) -> bool:
        return not self.failures and self.unique

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "counts": self.counts,
            "unique": self.unique,
            "failures": [f.to_json() for f in self.failures],
        }


def universality_check(
    cand: UniversalCandidate, tests: Sequence[tuple[str, object]], budget: int = DEFAULT_BUDGET
) -> UniversalityReport:
    """Factor every measuring ``C_i (x) B -> A`` (and bimeasuring, for bialgebra tests) through ``cand``."""
    B, A = cand.base, cand.target
    counts: dict = {}
    failures: list = []
    unique = True
    for name, C in tests:
        kinds = [("measuring", enumerate_measurings(C, B, A, budget=budget), False)]
        if cand.bimeasuring and isinstance(C, Bialgebra) and isinstance(B, Bialgebra):
            kinds.append(("bimeasuring", enumerate_bimeasurings(C, B, A, budget=budget), True))
        for kind, psis, as_bi in kinds:
            counts[f"{name}:{kind}"] = len(psis)
            for i, psi in enumerate(psis):
                try:
                    fac = factor_measuring(psi, cand, as_bialgebra_map=as_bi, budget=budget)
                except DoesNotFactor as e:
                    failures.append(UniversalityFailure(f"{name}:{kind}", i, str(e)))
                    continue
                if not fac.unique:
                    unique = False
                    failures.append(UniversalityFailure(f"{name}:{kind}", i, "factorization is not unique"))
    return UniversalityReport(counts, failures, unique)
