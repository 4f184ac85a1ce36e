"""Abelian matched pairs, the bismash product and skew bimeasurings.

Actions are typed by how they are used: ``n(t)`` lies in ``T`` and ``n^t``
lies in ``N``.  The bismash product ``H = T # N`` has basis ``t (x) n`` at index
``t * dim N + n`` with

    (t # n)(s # m) = t n_1(s_1) # n_2^{s_2} m

and the tensor coalgebra structure.  The element ``nt`` of ``H`` means
``(1 # n)(t # 1)``; the map ``D: n (x) t -> nt`` relabels ``N (x) T`` inside ``H``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from . import linalg as la
from .algebra import (
    Algebra,
    BilinearPairing,
    Counterexample,
    HopfAlgebra,
    _acc,
    _clean,
    convolution_inverse,
    convolution_unit,
    convolve,
    is_cocommutative,
    is_commutative,
    tensor_product,
    validate,
)
from .catalog import GroupTable, group_algebra
from .errors import BimeasureError, BudgetExceeded, ValidationError
from .field import Field
from .linalg import Matrix, Tensor3, Vector
from .measuring import _linear, _poly_product, _table_from_values, _var_vector
from .polysolve import DEFAULT_BUDGET, Poly, PolynomialSystem


class MatchedPair:
    """``N`` acting on ``T`` by ``n(t)`` and ``T`` acting on ``N`` by ``n^t``.

    ``act_on_t`` has entries ``(n, t, t', c)``; ``act_on_n`` has ``(n, t, n', c)``.
    """

    def __init__(self, N: HopfAlgebra, T: HopfAlgebra, act_on_t: Tensor3, act_on_n: Tensor3, name: str = "pair"):
        if N.field != T.field:
            raise BimeasureError("N and T live over different fields")
        if act_on_t.dims != (N.dim, T.dim, T.dim) or act_on_n.dims != (N.dim, T.dim, N.dim):
            raise BimeasureError("action tables have the wrong shape")
        self.N, self.T = N, T
        self.field = N.field
        self.act_on_t = act_on_t
        self.act_on_n = act_on_n
        self.name = name

    def __repr__(self) -> str:
        return f"MatchedPair({self.name}, dim N={self.N.dim}, dim T={self.T.dim})"

    @classmethod
    def trivial(cls, N: HopfAlgebra, T: HopfAlgebra) -> MatchedPair:
        """``n(t) = eps(n) t`` and ``n^t = eps(t) n``."""
        F = N.field
        on_t = [(n, t, t, N.counit[n]) for n in range(N.dim) for t in range(T.dim)]
        on_n = [(n, t, n, T.counit[t]) for n in range(N.dim) for t in range(T.dim)]
        return cls(N, T, Tensor3(F, (N.dim, T.dim, T.dim), on_t), Tensor3(F, (N.dim, T.dim, N.dim), on_n), "trivial")

    # bilinear extensions
    def mu(self, n: Sequence, t: Sequence) -> Vector:
        """``n(t)`` in ``T``."""
        return _bilinear(self.field, self.act_on_t, n, t, self.T.dim)

    def nu(self, n: Sequence, t: Sequence) -> Vector:
        """``n^t`` in ``N``."""
        return _bilinear(self.field, self.act_on_n, n, t, self.N.dim)

    def mu_basis(self, n: int, t: int) -> Vector:
        return _column(self.field, self.act_on_t, n, t, self.T.dim)

    def nu_basis(self, n: int, t: int) -> Vector:
        return _column(self.field, self.act_on_n, n, t, self.N.dim)


def _column(F: Field, table: Tensor3, i: int, j: int, d: int) -> Vector:
    v = [F.zero] * d
    for k, c in table.pair(i, j):
        v[k] = c
    return v


def _bilinear(F: Field, table: Tensor3, x: Sequence, y: Sequence, d: int) -> Vector:
    acc = [F.zero] * d
    for i, a in enumerate(x):
        if a == 0:
            continue
        for j, b in enumerate(y):
            if b == 0:
                continue
            ab = F.mul(a, b)
            for k, c in table.pair(i, j):
                acc[k] = F.add(acc[k], F.mul(ab, c))
    return acc


def _outer(F: Field, u: Sequence, v: Sequence, c=1) -> dict:
    return {(p, q): F.mul(F(c), F.mul(x, y)) for p, x in enumerate(u) if x != 0 for q, y in enumerate(v) if y != 0}


def _add_into(F: Field, acc: dict, d: dict) -> None:
    for k, c in d.items():
        _acc(F, acc, k, c)


def _vec_cx(axiom: str, idx: tuple, lhs, rhs, F: Field) -> Counterexample:
    return Counterexample(axiom, idx, tuple(lhs), tuple(rhs), F)


def _dict_cx(axiom: str, idx: tuple, lhs: dict, rhs: dict, F: Field) -> Counterexample:
    keys = sorted(set(lhs) | set(rhs))
    return Counterexample(axiom, idx, tuple(lhs.get(k, F.zero) for k in keys), tuple(rhs.get(k, F.zero) for k in keys), F)


# -- validation ------------------------------------------------------------------

def validate_matched_pair(mp: MatchedPair, check_bismash: bool = True) -> Counterexample | None:
    """The adopted axiom list on basis triples, then the bismash cross-check."""
    N, T, F = mp.N, mp.T, mp.field
    dN, dT = N.dim, T.dim
    if not (is_cocommutative(N) and is_cocommutative(T)):
        return Counterexample("N and T cocommutative", (), (), (), F)
    eN = [N.basis_vector(i) for i in range(dN)]
    eT = [T.basis_vector(i) for i in range(dT)]

    # module laws
    for t in range(dT):
        if mp.mu(N.one, eT[t]) != eT[t]:
            return _vec_cx("1(t) = t", (t,), mp.mu(N.one, eT[t]), eT[t], F)
    for n in range(dN):
        if mp.nu(eN[n], T.one) != eN[n]:
            return _vec_cx("n^1 = n", (n,), mp.nu(eN[n], T.one), eN[n], F)
        if mp.mu(eN[n], T.one) != la.vscale(F, N.counit[n], T.one):
            return _vec_cx("n(1) = eps(n) 1", (n,), mp.mu(eN[n], T.one), la.vscale(F, N.counit[n], T.one), F)
    for t in range(dT):
        if mp.nu(N.one, eT[t]) != la.vscale(F, T.counit[t], N.one):
            return _vec_cx("1^t = eps(t) 1", (t,), mp.nu(N.one, eT[t]), la.vscale(F, T.counit[t], N.one), F)
    for n in range(dN):
        for m in range(dN):
            nm = N.product(eN[n], eN[m])
            for t in range(dT):
                lhs = mp.mu(nm, eT[t])
                rhs = mp.mu(eN[n], mp.mu_basis(m, t))
                if lhs != rhs:
                    return _vec_cx("(nm)(t) = n(m(t))", (n, m, t), lhs, rhs, F)
    for n in range(dN):
        for t in range(dT):
            for s in range(dT):
                lhs = mp.nu(eN[n], T.product(eT[t], eT[s]))
                rhs = mp.nu(mp.nu_basis(n, t), eT[s])
                if lhs != rhs:
                    return _vec_cx("n^(ts) = (n^t)^s", (n, t, s), lhs, rhs, F)

    # module coalgebra laws
    for n in range(dN):
        for t in range(dT):
            nt_t, nt_n = mp.mu_basis(n, t), mp.nu_basis(n, t)
            e = F.mul(N.counit[n], T.counit[t])
            if T.apply_counit(nt_t) != e:
                return _vec_cx("eps(n(t)) = eps(n) eps(t)", (n, t), (T.apply_counit(nt_t),), (e,), F)
            if N.apply_counit(nt_n) != e:
                return _vec_cx("eps(n^t) = eps(n) eps(t)", (n, t), (N.apply_counit(nt_n),), (e,), F)
            rt: dict = {}
            rn: dict = {}
            mixed_l: dict = {}
            mixed_r: dict = {}
            for n1, n2, a in N.basis_coproduct(n):
                for t1, t2, b in T.basis_coproduct(t):
                    ab = F.mul(a, b)
                    _add_into(F, rt, _outer(F, mp.mu_basis(n1, t1), mp.mu_basis(n2, t2), ab))
                    _add_into(F, rn, _outer(F, mp.nu_basis(n1, t1), mp.nu_basis(n2, t2), ab))
                    _add_into(F, mixed_l, _outer(F, mp.nu_basis(n1, t1), mp.mu_basis(n2, t2), ab))
                    _add_into(F, mixed_r, _outer(F, mp.nu_basis(n2, t2), mp.mu_basis(n1, t1), ab))
            lt = _clean(T.coproduct(nt_t))
            if lt != _clean(rt):
                return _dict_cx("Delta(n(t)) = n1(t1) (x) n2(t2)", (n, t), lt, _clean(rt), F)
            ln = _clean(N.coproduct(nt_n))
            if ln != _clean(rn):
                return _dict_cx("Delta(n^t) = n1^t1 (x) n2^t2", (n, t), ln, _clean(rn), F)
            if _clean(mixed_l) != _clean(mixed_r):
                return _dict_cx("n1^t1 (x) n2(t2) = n2^t2 (x) n1(t1)", (n, t), _clean(mixed_l), _clean(mixed_r), F)

    # compatibility
    for n in range(dN):
        for t in range(dT):
            for s in range(dT):
                lhs = mp.mu(eN[n], T.product(eT[t], eT[s]))
                rhs = [F.zero] * dT
                for n1, n2, a in N.basis_coproduct(n):
                    for t1, t2, b in T.basis_coproduct(t):
                        term = T.product(mp.mu_basis(n1, t1), mp.mu(mp.nu_basis(n2, t2), eT[s]))
                        rhs = la.vadd(F, rhs, la.vscale(F, F.mul(a, b), term))
                if lhs != rhs:
                    return _vec_cx("n(ts) = n1(t1) (n2^t2)(s)", (n, t, s), lhs, rhs, F)
    for n in range(dN):
        for m in range(dN):
            for t in range(dT):
                lhs = mp.nu(N.product(eN[n], eN[m]), eT[t])
                rhs = [F.zero] * dN
                for m1, m2, a in N.basis_coproduct(m):
                    for t1, t2, b in T.basis_coproduct(t):
                        term = N.product(mp.nu(eN[n], mp.mu_basis(m1, t1)), mp.nu_basis(m2, t2))
                        rhs = la.vadd(F, rhs, la.vscale(F, F.mul(a, b), term))
                if lhs != rhs:
                    return _vec_cx("(nm)^t = n^(m1(t1)) m2^t2", (n, m, t), lhs, rhs, F)

    if check_bismash:
        try:
            bismash(mp, validate_result=False)
        except BimeasureError as e:
            return Counterexample(f"bismash construction: {e}", (), (), (), F)
        cx = validate(bismash(mp, validate_result=False))
        if cx is not None:
            return Counterexample(f"bismash is a Hopf algebra: {cx.axiom}", cx.indices, cx.lhs, cx.rhs, F)
    return None


def validated_pair(mp: MatchedPair) -> MatchedPair:
    cx = validate_matched_pair(mp)
    if cx is not None:
        raise ValidationError(cx)
    return mp


def _subgroup(G: GroupTable, elems: Sequence[int], name: str) -> GroupTable:
    elems = list(elems)
    for a in elems:
        for b in elems:
            if G.mul(a, b) not in elems:
                raise BimeasureError(f"{name} is not closed under the group law")
    return GroupTable.from_elements(elems, G.mul, [G.names[e] for e in elems], name)


def from_group_factorization(G: GroupTable, Fs: Sequence[int], Ks: Sequence[int], field: Field) -> MatchedPair:
    """Read a matched pair off an exact factorization ``G = F K``.

    ``T = k[F]`` and ``N = k[K]``; for ``k`` in ``K`` and ``f`` in ``F`` the
    product ``k f`` is written uniquely as ``(k(f)) (k^f)``.
    """
    Fg, Kg = _subgroup(G, Fs, "F"), _subgroup(G, Ks, "K")
    Fs, Ks = list(Fs), list(Ks)
    factor = {}
    for i, f in enumerate(Fs):
        for j, k in enumerate(Ks):
            g = G.mul(f, k)
            if g in factor:
                raise BimeasureError("not an exact factorization: some element factors twice")
            factor[g] = (i, j)
    if len(factor) != G.order:
        raise BimeasureError(f"not an exact factorization: |F||K| = {len(factor)} but |G| = {G.order}")
    T, N = group_algebra(Fg, field), group_algebra(Kg, field)
    on_t, on_n = [], []
    for j, k in enumerate(Ks):
        for i, f in enumerate(Fs):
            fi, kj = factor[G.mul(k, f)]
            on_t.append((j, i, fi, 1))
            on_n.append((j, i, kj, 1))
    mp = MatchedPair(
        N, T, Tensor3(field, (N.dim, T.dim, T.dim), on_t), Tensor3(field, (N.dim, T.dim, N.dim), on_n), G.name
    )
    return validated_pair(mp)


# -- bismash product ---------------------------------------------------------------

def bismash(mp: MatchedPair, validate_result: bool = True) -> HopfAlgebra:
    N, T, F = mp.N, mp.T, mp.field
    dN, dT = N.dim, T.dim
    d = dN * dT
    entries = []
    for t in range(dT):
        et = T.basis_vector(t)
        for n in range(dN):
            for s in range(dT):
                for m in range(dN):
                    em = N.basis_vector(m)
                    acc: dict = {}
                    for n1, n2, a in N.basis_coproduct(n):
                        for s1, s2, b in T.basis_coproduct(s):
                            left = T.product(et, mp.mu_basis(n1, s1))
                            right = N.product(mp.nu_basis(n2, s2), em)
                            _add_into(F, acc, _outer(F, left, right, F.mul(a, b)))
                    for (p, q), c in _clean(acc).items():
                        entries.append((t * dN + n, s * dN + m, p * dN + q, c))
    mult = Tensor3(F, (d, d, d), entries)
    co = tensor_product(T.coalgebra_part(), N.coalgebra_part())
    names = [f"{a}#{b}" for a in T.names for b in N.names]
    unit = la.vkron(F, T.one, N.one)
    # S(t # n) = (1 # S n)(S t # 1)
    pre = HopfAlgebra(F, mult, unit, co.comult, co.counit, la.identity(F, d), names)
    cols = []
    for t in range(dT):
        for n in range(dN):
            a = la.vkron(F, T.one, N.antipode_of(n))
            b = la.vkron(F, T.antipode_of(t), N.one)
            cols.append(pre.product(a, b))
    H = HopfAlgebra(F, mult, unit, co.comult, co.counit, la.from_columns(F, cols), names)
    if validate_result:
        cx = validate(H)
        if cx is not None:
            raise ValidationError(cx)
    return H


def embed_t(mp: MatchedPair, t: Sequence) -> Vector:
    return la.vkron(mp.field, list(t), mp.N.one)


def embed_n(mp: MatchedPair, n: Sequence) -> Vector:
    return la.vkron(mp.field, mp.T.one, list(n))


def relabel_matrix(mp: MatchedPair, H: HopfAlgebra | None = None) -> Matrix:
    """``D: N (x) T -> H``, ``n (x) t -> (1 # n)(t # 1)``; column ``n * dim T + t``."""
    H = H or bismash(mp)
    N, T = mp.N, mp.T
    cols = [H.product(embed_n(mp, N.basis_vector(n)), embed_t(mp, T.basis_vector(t))) for n in range(N.dim) for t in range(T.dim)]
    return la.from_columns(mp.field, cols)


def group_basis_map(mp: MatchedPair, G: GroupTable, Fs: Sequence[int], Ks: Sequence[int]) -> list[int]:
    """Index in ``G`` of each bismash basis vector ``f # k`` (i.e. the product ``f k``)."""
    return [G.mul(f, k) for f in Fs for k in Ks]


def distributive_law(mp: MatchedPair, H: HopfAlgebra | None = None) -> Counterexample | None:
    """``(1 # n)(t # 1) = n1(t1) # n2^t2`` in ``H``."""
    H = H or bismash(mp)
    N, T, F = mp.N, mp.T, mp.field
    for n in range(N.dim):
        for t in range(T.dim):
            lhs = H.product(embed_n(mp, N.basis_vector(n)), embed_t(mp, T.basis_vector(t)))
            rhs = [F.zero] * H.dim
            for n1, n2, a in N.basis_coproduct(n):
                for t1, t2, b in T.basis_coproduct(t):
                    rhs = la.vadd(F, rhs, la.vscale(F, F.mul(a, b), la.vkron(F, mp.mu_basis(n1, t1), mp.nu_basis(n2, t2))))
            if lhs != rhs:
                return _vec_cx("nt = n1(t1) n2^t2", (n, t), lhs, rhs, F)
    return None


# -- derived actions -----------------------------------------------------------------

@dataclass
class DerivedActions:
    """``bracket[t][n] = t[n]`` in ``N`` and ``hat[t][n] = t^n`` in ``T``."""

    bracket: list
    hat: list


def derived_actions(mp: MatchedPair) -> DerivedActions:
    N, T = mp.N, mp.T
    bracket, hat = [], []
    for t in range(T.dim):
        St = T.antipode_of(t)
        brow, hrow = [], []
        for n in range(N.dim):
            Sn = N.antipode_of(n)
            brow.append(N.apply_antipode(mp.nu(Sn, St)))
            hrow.append(T.apply_antipode(mp.mu(Sn, St)))
        bracket.append(brow)
        hat.append(hrow)
    return DerivedActions(bracket, hat)


def derived_identities(mp: MatchedPair, H: HopfAlgebra | None = None) -> Counterexample | None:
    """``t1[n1](t2^n2) = eps(n) t``, ``(t1[n1])^(t2^n2) = n eps(t)`` and ``t # n = (1 # t1[n1])(t2^n2 # 1)``."""
    N, T, F = mp.N, mp.T, mp.field
    H = H or bismash(mp)
    da = derived_actions(mp)
    for t in range(T.dim):
        for n in range(N.dim):
            first = [F.zero] * T.dim
            second = [F.zero] * N.dim
            third = [F.zero] * H.dim
            for t1, t2, a in T.basis_coproduct(t):
                for n1, n2, b in N.basis_coproduct(n):
                    ab = F.mul(a, b)
                    x, y = da.bracket[t1][n1], da.hat[t2][n2]
                    first = la.vadd(F, first, la.vscale(F, ab, mp.mu(x, y)))
                    second = la.vadd(F, second, la.vscale(F, ab, mp.nu(x, y)))
                    third = la.vadd(F, third, la.vscale(F, ab, H.product(embed_n(mp, x), embed_t(mp, y))))
            want = la.vscale(F, N.counit[n], T.basis_vector(t))
            if first != want:
                return _vec_cx("t1[n1](t2^n2) = eps(n) t", (t, n), first, want, F)
            want = la.vscale(F, T.counit[t], N.basis_vector(n))
            if second != want:
                return _vec_cx("(t1[n1])^(t2^n2) = n eps(t)", (t, n), second, want, F)
            want = H.basis_vector(t * N.dim + n)
            if third != want:
                return _vec_cx("t # n = (1 # t1[n1])(t2^n2 # 1)", (t, n), third, want, F)
    return None


# -- skew bimeasurings ---------------------------------------------------------------

SKEW_LABELS = (
    "psi(nm, t) = psi(n, m1(t1)) psi(m2, t2)",
    "psi(1, t) = eps(t)",
    "psi(n, ts) = psi(n1^t1, s) psi(n2, t)",
    "psi(n, 1) = eps(n)",
)


def check_skew_bimeasuring(mp: MatchedPair, psi: BilinearPairing) -> Counterexample | None:
    """The four skew equations on basis elements; ``psi.target`` must be commutative."""
    N, T, A = mp.N, mp.T, psi.target
    F = mp.field
    if psi.left.dim != N.dim or psi.right.dim != T.dim:
        raise BimeasureError("pairing shape does not match the matched pair")
    if not is_commutative(A):
        raise BimeasureError("skew bimeasurings need a commutative target")
    eN = [N.basis_vector(i) for i in range(N.dim)]
    eT = [T.basis_vector(i) for i in range(T.dim)]
    for n in range(N.dim):
        for m in range(N.dim):
            for t in range(T.dim):
                lhs = psi.evaluate(N.product(eN[n], eN[m]), eT[t])
                rhs = [F.zero] * A.dim
                for m1, m2, a in N.basis_coproduct(m):
                    for t1, t2, b in T.basis_coproduct(t):
                        term = A.product(psi.evaluate(eN[n], mp.mu_basis(m1, t1)), psi(m2, t2))
                        rhs = la.vadd(F, rhs, la.vscale(F, F.mul(a, b), term))
                if lhs != rhs:
                    return _vec_cx(SKEW_LABELS[0], (n, m, t), lhs, rhs, F)
    for t in range(T.dim):
        lhs = psi.evaluate(N.one, eT[t])
        rhs = la.vscale(F, T.counit[t], A.one)
        if lhs != rhs:
            return _vec_cx(SKEW_LABELS[1], (t,), lhs, rhs, F)
    for n in range(N.dim):
        for t in range(T.dim):
            for s in range(T.dim):
                lhs = psi.evaluate(eN[n], T.product(eT[t], eT[s]))
                rhs = [F.zero] * A.dim
                for n1, n2, a in N.basis_coproduct(n):
                    for t1, t2, b in T.basis_coproduct(t):
                        term = A.product(psi.evaluate(mp.nu_basis(n1, t1), eT[s]), psi(n2, t))
                        rhs = la.vadd(F, rhs, la.vscale(F, F.mul(a, b), term))
                if lhs != rhs:
                    return _vec_cx(SKEW_LABELS[2], (n, t, s), lhs, rhs, F)
    for n in range(N.dim):
        lhs = psi.evaluate(eN[n], T.one)
        rhs = la.vscale(F, N.counit[n], A.one)
        if lhs != rhs:
            return _vec_cx(SKEW_LABELS[3], (n,), lhs, rhs, F)
    return None


def pairing_matrix(psi: BilinearPairing) -> Matrix:
    """``psi`` as a linear map ``left (x) right -> A``."""
    dR = psi.right.dim
    cols = [list(psi.table[i][j]) for i in range(psi.left.dim) for j in range(dR)]
    return la.from_columns(psi.field, cols)


def product_form(mp: MatchedPair, psi: BilinearPairing, H: HopfAlgebra | None = None) -> Matrix:
    """``Psi = psi D^{-1}`` as a map ``H -> A``."""
    H = H or bismash(mp)
    D = relabel_matrix(mp, H)
    return la.matmul(mp.field, pairing_matrix(psi), la.inverse(mp.field, D))


def check_product_form(mp: MatchedPair, psi: BilinearPairing, H: HopfAlgebra | None = None) -> Counterexample | None:
    """``Psi(ntm) = Psi(nt1) Psi(t2m)``, ``Psi(t) = eps(t)``, ``Psi(tns) = Psi(tn1) Psi(n2s)``, ``Psi(n) = eps(n)``."""
    H = H or bismash(mp)
    N, T, A, F = mp.N, mp.T, psi.target, mp.field
    Psi = product_form(mp, psi, H)

    def P(h):
        return la.matvec(F, Psi, h)

    iN = [embed_n(mp, N.basis_vector(i)) for i in range(N.dim)]
    iT = [embed_t(mp, T.basis_vector(i)) for i in range(T.dim)]
    for n in range(N.dim):
        for t in range(T.dim):
            nt = H.product(iN[n], iT[t])
            for m in range(N.dim):
                lhs = P(H.product(nt, iN[m]))
                rhs = [F.zero] * A.dim
                for t1, t2, c in T.basis_coproduct(t):
                    term = A.product(P(H.product(iN[n], iT[t1])), P(H.product(iT[t2], iN[m])))
                    rhs = la.vadd(F, rhs, la.vscale(F, c, term))
                if lhs != rhs:
                    return _vec_cx("Psi(ntm) = Psi(nt1) Psi(t2m)", (n, t, m), lhs, rhs, F)
    for t in range(T.dim):
        if P(iT[t]) != la.vscale(F, T.counit[t], A.one):
            return _vec_cx("Psi(t) = eps(t)", (t,), P(iT[t]), la.vscale(F, T.counit[t], A.one), F)
    for t in range(T.dim):
        for n in range(N.dim):
            tn = H.product(iT[t], iN[n])
            for s in range(T.dim):
                lhs = P(H.product(tn, iT[s]))
                rhs = [F.zero] * A.dim
                for n1, n2, c in N.basis_coproduct(n):
                    term = A.product(P(H.product(iT[t], iN[n1])), P(H.product(iN[n2], iT[s])))
                    rhs = la.vadd(F, rhs, la.vscale(F, c, term))
                if lhs != rhs:
                    return _vec_cx("Psi(tns) = Psi(tn1) Psi(n2s)", (t, n, s), lhs, rhs, F)
    for n in range(N.dim):
        if P(iN[n]) != la.vscale(F, N.counit[n], A.one):
            return _vec_cx("Psi(n) = eps(n)", (n,), P(iN[n]), la.vscale(F, N.counit[n], A.one), F)
    return None


def _pairing_from_matrix(m: Matrix, N, T, A) -> BilinearPairing:
    cols = la.columns(m)
    return BilinearPairing(N, T, A, [[cols[n * T.dim + t] for t in range(T.dim)] for n in range(N.dim)])


def skew_convolve(mp: MatchedPair, psi: BilinearPairing, phi: BilinearPairing) -> BilinearPairing:
    """``(psi * phi)(n (x) t) = psi(n1, t1) phi(n2, t2)``."""
    C = tensor_product(mp.N.coalgebra_part(), mp.T.coalgebra_part())
    m = convolve(pairing_matrix(psi), pairing_matrix(phi), C, psi.target)
    return _pairing_from_matrix(m, mp.N, mp.T, psi.target)


def skew_unit(mp: MatchedPair, A: Algebra) -> BilinearPairing:
    C = tensor_product(mp.N.coalgebra_part(), mp.T.coalgebra_part())
    return _pairing_from_matrix(convolution_unit(C, A), mp.N, mp.T, A)


def skew_inverse(mp: MatchedPair, psi: BilinearPairing) -> BilinearPairing:
    C = tensor_product(mp.N.coalgebra_part(), mp.T.coalgebra_part())
    inv = convolution_inverse(pairing_matrix(psi), C, psi.target)
    out = _pairing_from_matrix(inv, mp.N, mp.T, psi.target)
    cx = check_skew_bimeasuring(mp, out)
    if cx is not None:
        raise BimeasureError(f"inverse is not skew: {cx}")
    return out


def skew_equations(mp: MatchedPair, A: Algebra, system: PolynomialSystem) -> None:
    """Polynomial form of the skew equations; unknown ``(n * dim T + t) * dim A + a``."""
    N, T, F = mp.N, mp.T, mp.field
    dT, dA = T.dim, A.dim
    V = [[_var_vector(F, (n * dT + t) * dA, dA) for t in range(dT)] for n in range(N.dim)]

    def at(nvec, tvec):
        terms, vecs = [], []
        for i, a in enumerate(nvec):
            for j, b in enumerate(tvec):
                if a != 0 and b != 0:
                    terms.append(F.mul(a, b))
                    vecs.append(V[i][j])
        return _linear(F, terms, vecs, dA)

    eN = [N.basis_vector(i) for i in range(N.dim)]
    eT = [T.basis_vector(i) for i in range(T.dim)]
    for n in range(N.dim):
        for m in range(N.dim):
            for t in range(dT):
                lhs = at(N.product(eN[n], eN[m]), eT[t])
                rhs = [Poly(F) for _ in range(dA)]
                for m1, m2, a in N.basis_coproduct(m):
                    for t1, t2, b in T.basis_coproduct(t):
                        prod = _poly_product(A, at(eN[n], mp.mu_basis(m1, t1)), V[m2][t2])
                        rhs = [r + p * F.mul(a, b) for r, p in zip(rhs, prod)]
                for l_, r_ in zip(lhs, rhs):
                    system.add(l_ - r_)
    for t in range(dT):
        for a, p in enumerate(at(N.one, eT[t])):
            system.add(p - Poly.const(F, F.mul(T.counit[t], A.unit[a])))
    for n in range(N.dim):
        for t in range(dT):
            for s in range(dT):
                lhs = at(eN[n], T.product(eT[t], eT[s]))
                rhs = [Poly(F) for _ in range(dA)]
                for n1, n2, a in N.basis_coproduct(n):
                    for t1, t2, b in T.basis_coproduct(t):
                        prod = _poly_product(A, at(mp.nu_basis(n1, t1), eT[s]), V[n2][t])
                        rhs = [r + p * F.mul(a, b) for r, p in zip(rhs, prod)]
                for l_, r_ in zip(lhs, rhs):
                    system.add(l_ - r_)
    for n in range(N.dim):
        for a, p in enumerate(at(eN[n], T.one)):
            system.add(p - Poly.const(F, F.mul(N.counit[n], A.unit[a])))


def enumerate_skew_bimeasurings(
    mp: MatchedPair, A: Algebra, mode: str = "solver", budget: int = DEFAULT_BUDGET
) -> list[BilinearPairing]:
    N, T, F = mp.N, mp.T, mp.field
    n = N.dim * T.dim * A.dim
    if mode == "raw":
        if not F.is_finite:
            raise BimeasureError("raw enumeration needs a finite field")
        if F.size**n > budget:
            raise BudgetExceeded(f"{F.size}^{n} candidate tables exceed budget {budget}")
        out = []
        for values in itertools.product(range(F.size), repeat=n):
            psi = BilinearPairing(N, T, A, _table_from_values(values, N.dim, T.dim, A.dim))
            if check_skew_bimeasuring(mp, psi) is None:
                out.append(psi)
    else:
        system = PolynomialSystem(F, n)
        skew_equations(mp, A, system)
        out = [BilinearPairing(N, T, A, _table_from_values(s, N.dim, T.dim, A.dim)) for s in system.solve(budget=budget)]
    return sorted(out, key=lambda p: p.key())


# -- finite groups from enumerated sets -------------------------------------------

@dataclass
class FiniteGroup:
    """Elements with an index-valued multiplication table."""

    elements: list
    table: list
    unit: int

    @property
    def order(self) -> int:
        return len(self.elements)

    def inverse(self, i: int) -> int:
        return next(j for j in range(self.order) if self.table[i][j] == self.unit)


def build_group(elements: Sequence, op: Callable, unit, key: Callable = lambda x: x) -> FiniteGroup:
    """Table of ``op`` on ``elements``; raises if the set is not closed or lacks ``unit``."""
    index = {key(e): i for i, e in enumerate(elements)}
    if key(unit) not in index:
        raise BimeasureError("unit is not among the elements")
    table = []
    for a in elements:
        row = []
        for b in elements:
            k = key(op(a, b))
            if k not in index:
                raise BimeasureError("set is not closed under the operation")
            row.append(index[k])
        table.append(row)
    return FiniteGroup(list(elements), table, index[key(unit)])


def check_group_laws(g: FiniteGroup, abelian: bool = False) -> str | None:
    """Associativity, unit and two-sided inverses checked exhaustively; returns a message on failure."""
    t, n, e = g.table, g.order, g.unit
    for a in range(n):
        if t[e][a] != a or t[a][e] != a:
            return f"unit fails at {a}"
        if not any(t[a][b] == e and t[b][a] == e for b in range(n)):
            return f"no inverse for {a}"
        for b in range(n):
            if abelian and t[a][b] != t[b][a]:
                return f"not abelian at {(a, b)}"
            for c in range(n):
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    return f"not associative at {(a, b, c)}"
    return None


def tables_isomorphic_by(g1: FiniteGroup, g2: FiniteGroup, bijection: Sequence[int]) -> bool:
    """True when ``bijection`` (index in g1 -> index in g2) carries one table onto the other."""
    return all(
        bijection[g1.table[a][b]] == g2.table[bijection[a]][bijection[b]] for a in range(g1.order) for b in range(g1.order)
    )


def skew_group(mp: MatchedPair, A: Algebra, budget: int = DEFAULT_BUDGET) -> FiniteGroup:
    """The convolution group of skew bimeasurings, with closure and group laws checked."""
    elems = enumerate_skew_bimeasurings(mp, A, budget=budget)
    g = build_group(elems, lambda x, y: skew_convolve(mp, x, y), skew_unit(mp, A), key=lambda p: p.key())
    msg = check_group_laws(g, abelian=True)
    if msg is not None:
        raise BimeasureError(f"skew bimeasurings: {msg}")
    for i, psi in enumerate(elems):
        if skew_inverse(mp, psi).key() != elems[g.inverse(i)].key():
            raise BimeasureError("convolution inverse disagrees with the table inverse")
    return g
