"""Commutator ideals, abelianization and cocommutative parts."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from . import linalg as la
from .algebra import (
    Algebra,
    Bialgebra,
    Coalgebra,
    Counterexample,
    HopfAlgebra,
    LinMap,
    _acc,
    _clean,
    _dense,
    dual,
    is_cocommutative,
    is_commutative,
    validate,
)
from .errors import BimeasureError, DoesNotFactor, ValidationError
from .linalg import Matrix, Subspace, Vector


def ideal_closure(A: Algebra, generators: Sequence[Vector]) -> Subspace:
    """Smallest two-sided ideal containing ``generators``.

    Worklist fixpoint: every vector entering the span is multiplied on both
    sides by every basis element; terminates after at most ``dim A`` additions.
    """
    F, d = A.field, A.dim
    span = la.EchelonBuilder(F, d)
    queue = deque()
    for g in generators:
        r = span.add(g)
        if r is not None:
            queue.append(r)
    basis = [A.basis_vector(i) for i in range(d)]
    while queue and span.dim < d:
        v = queue.popleft()
        for e in basis:
            for w in (A.product(e, v), A.product(v, e)):
                r = span.add(w)
                if r is not None:
                    queue.append(r)
    return span.subspace()


def subalgebra_closure(A: Algebra, generators: Sequence[Vector]) -> Subspace:
    """Span of all products of generators, including ``1``."""
    F, d = A.field, A.dim
    span = la.EchelonBuilder(F, d)
    members: list[Vector] = []
    for g in [A.one, *generators]:
        r = span.add(g)
        if r is not None:
            members.append(r)
    i = 0
    while i < len(members):
        v = members[i]
        for w in list(members[: i + 1]):
            for prod in (A.product(v, w), A.product(w, v)):
                r = span.add(prod)
                if r is not None:
                    members.append(r)
        i += 1
    return span.subspace()


def commutator(A: Algebra, x: Vector, y: Vector) -> Vector:
    return la.vsub(A.field, A.product(x, y), A.product(y, x))


def commutator_ideal(A: Algebra) -> Subspace:
    d = A.dim
    gens = []
    for i in range(d):
        for j in range(i + 1, d):
            c = commutator(A, A.basis_vector(i), A.basis_vector(j))
            if not la.is_zero(c):
                gens.append(c)
    return ideal_closure(A, gens)


def is_ideal(A: Algebra, I: Subspace) -> bool:
    for v in I.vectors():
        for i in range(A.dim):
            e = A.basis_vector(i)
            if not (I.contains(A.product(e, v)) and I.contains(A.product(v, e))):
                return False
    return True


# -- quotients ----------------------------------------------------------------

@dataclass
class QuotientPresentation:
    original: object
    ideal: Subspace
    quotient: object
    projection: LinMap
    representatives: list[Vector]

    def project(self, v: Sequence) -> Vector:
        return self.projection(v)


def _projection_matrix(I: Subspace) -> Matrix:
    F = I.field
    free = I.complement_indices()
    cols = []
    for j in range(I.ambient):
        r = I.reduce(la.unit_vector(F, I.ambient, j))
        cols.append([r[f] for f in free])
    return la.from_columns(F, cols) if free else []


def _tensor_project(F, P: Matrix, t: dict, q: int) -> dict:
    out: dict = {}
    Pcols = la.columns(P)
    for (j, k), c in t.items():
        for a, x in enumerate(Pcols[j]):
            if x == 0:
                continue
            for b, y in enumerate(Pcols[k]):
                if y != 0:
                    _acc(F, out, (a, b), F.mul(c, F.mul(x, y)))
    return _clean(out)


def verify_biideal(h, I: Subspace) -> Counterexample | None:
    """``eps(I) = 0``, ``Delta(I) in I(x)H + H(x)I`` and, for Hopf input, ``S(I) in I``."""
    F = h.field
    P = _projection_matrix(I)
    q = len(P)
    for n, v in enumerate(I.vectors()):
        if isinstance(h, Coalgebra):
            e = h.apply_counit(v)
            if e != 0:
                return Counterexample("eps(I) = 0", (n,), (e,), (F.zero,), F)
            img = _tensor_project(F, P, h.coproduct(v), q)
            if img:
                return Counterexample(
                    "Delta(I) in I(x)H + H(x)I", (n,), _dense(F, img, (q, q)), tuple([F.zero] * (q * q)), F
                )
        if isinstance(h, HopfAlgebra):
            s = h.apply_antipode(v)
            if not I.contains(s):
                return Counterexample("S(I) in I", (n,), tuple(I.reduce(s)), tuple([F.zero] * h.dim), F)
    return None


def quotient_by(h, I: Subspace) -> QuotientPresentation:
    """Structure on ``h / I`` using standard vectors off the pivots as coset representatives."""
    F = h.field
    free = I.complement_indices()
    q = len(free)
    P = _projection_matrix(I)
    reps = [la.unit_vector(F, h.dim, j) for j in free]
    names = [h.names[j] for j in free]
    mult = unit = comult = counit = antipode = None
    if isinstance(h, Algebra):
        entries = []
        for a in range(q):
            for b in range(q):
                img = la.matvec(F, P, h.product(reps[a], reps[b]))
                entries.extend((a, b, c, x) for c, x in enumerate(img) if x != 0)
        mult = la.Tensor3(F, (q, q, q), entries)
        unit = la.matvec(F, P, h.one)
    if isinstance(h, Coalgebra):
        entries = []
        for a in range(q):
            img = _tensor_project(F, P, h.coproduct(reps[a]), q)
            entries.extend((a, j, k, c) for (j, k), c in img.items())
        comult = la.Tensor3(F, (q, q, q), entries)
        counit = [h.apply_counit(r) for r in reps]
    if isinstance(h, HopfAlgebra):
        antipode = la.from_columns(F, [la.matvec(F, P, h.apply_antipode(r)) for r in reps]) if q else []
        quotient = HopfAlgebra(F, mult, unit, comult, counit, antipode, names)
    elif isinstance(h, Bialgebra):
        quotient = Bialgebra(F, mult, unit, comult, counit, names)
    elif isinstance(h, Algebra):
        quotient = Algebra(F, mult, unit, names)
    else:
        raise TypeError("quotients need an algebra structure")
    return QuotientPresentation(h, I, quotient, LinMap(F, P, h, quotient), reps)


def commutator_coproduct_identity(h: Bialgebra) -> Counterexample | None:
    """``Delta[x,y] = [x1,y1](x)x2y2 + y1x1(x)[x2,y2]`` on all basis pairs."""
    F, d = h.field, h.dim
    for i in range(d):
        for j in range(d):
            x, y = h.basis_vector(i), h.basis_vector(j)
            lhs = h.coproduct(commutator(h, x, y))
            rhs: dict = {}
            for x1, x2, a in h.basis_coproduct(i):
                for y1, y2, b in h.basis_coproduct(j):
                    c = F.mul(a, b)
                    ex1, ex2, ey1, ey2 = (h.basis_vector(t) for t in (x1, x2, y1, y2))
                    for left, right in (
                        (commutator(h, ex1, ey1), h.product(ex2, ey2)),
                        (h.product(ey1, ex1), commutator(h, ex2, ey2)),
                    ):
                        for p, u in enumerate(left):
                            if u == 0:
                                continue
                            for r, w in enumerate(right):
                                if w != 0:
                                    _acc(F, rhs, (p, r), F.mul(c, F.mul(u, w)))
            rhs = _clean(rhs)
            if lhs != rhs:
                return Counterexample(
                    "Delta[x,y] = [x1,y1](x)x2y2 + y1x1(x)[x2,y2]", (i, j), _dense(F, lhs, (d, d)), _dense(F, rhs, (d, d)), F
                )
    return None


def antipode_commutator_identity(h: HopfAlgebra) -> Counterexample | None:
    """``S[x,y] = [S(y),S(x)]`` on all basis pairs."""
    F = h.field
    for i in range(h.dim):
        for j in range(h.dim):
            x, y = h.basis_vector(i), h.basis_vector(j)
            lhs = h.apply_antipode(commutator(h, x, y))
            rhs = commutator(h, h.apply_antipode(y), h.apply_antipode(x))
            if lhs != rhs:
                return Counterexample("S[x,y] = [S(y),S(x)]", (i, j), tuple(lhs), tuple(rhs), F)
    return None


def abelianization(h) -> QuotientPresentation:
    """``h / I`` with ``I`` the commutator ideal, with the biideal property verified."""
    I = commutator_ideal(h)
    if isinstance(h, Bialgebra):
        cx = commutator_coproduct_identity(h) or verify_biideal(h, I)
        if cx is None and isinstance(h, HopfAlgebra):
            cx = antipode_commutator_identity(h)
        if cx is not None:
            raise BimeasureError(f"commutator ideal is not a biideal: {cx}")
    pres = quotient_by(h, I)
    cx = validate(pres.quotient)
    if cx is not None:
        raise ValidationError(cx)
    if not is_commutative(pres.quotient):
        raise BimeasureError("abelianization is not commutative")
    return pres


def factor_through_ab(f: Matrix, pres: QuotientPresentation) -> Matrix:
    """The unique ``fbar`` with ``fbar o pi = f``; raises :class:`DoesNotFactor` if ``f(I) != 0``."""
    F = pres.original.field
    for n, v in enumerate(pres.ideal.vectors()):
        img = la.matvec(F, f, v)
        if not la.is_zero(img):
            raise DoesNotFactor(f"f does not vanish on ideal basis vector {n}: f(v) = {img}")
    fbar = la.from_columns(F, [la.matvec(F, f, r) for r in pres.representatives], len(f))
    if pres.representatives and la.matmul(F, fbar, pres.projection.matrix) != f:
        raise BimeasureError("factorization check failed")
    return fbar


def hopf_ideal_alt_generators(h: HopfAlgebra) -> Subspace:
    """Ideal generated by ``S(x1)S(y1)x2y2 - eps(xy)1`` over basis pairs."""
    F, d = h.field, h.dim
    gens = []
    for i in range(d):
        for j in range(d):
            acc = [F.zero] * d
            for x1, x2, a in h.basis_coproduct(i):
                for y1, y2, b in h.basis_coproduct(j):
                    term = h.product(
                        h.product(h.antipode_of(x1), h.antipode_of(y1)),
                        h.product(h.basis_vector(x2), h.basis_vector(y2)),
                    )
                    acc = la.vadd(F, acc, la.vscale(F, F.mul(a, b), term))
            xy = h.product(h.basis_vector(i), h.basis_vector(j))
            acc = la.vsub(F, acc, la.vscale(F, h.apply_counit(xy), h.one))
            if not la.is_zero(acc):
                gens.append(acc)
    return ideal_closure(h, gens)


# -- subcoalgebras ------------------------------------------------------------

@dataclass
class SubcoalgebraPresentation:
    original: object
    subspace: Subspace
    sub: object
    inclusion: LinMap


def _coords_tensor(S: Subspace, t: dict) -> dict:
    """Coordinates of an element of ``S(x)S`` given in ambient coordinates."""
    F = S.field
    pos = {p: n for n, p in enumerate(S.pivots)}
    out = {}
    for (j, k), c in t.items():
        if j in pos and k in pos:
            out[(pos[j], pos[k])] = c
    back: dict = {}
    for (a, b), c in out.items():
        for j, x in enumerate(S.basis[a]):
            if x == 0:
                continue
            for k, y in enumerate(S.basis[b]):
                if y != 0:
                    _acc(F, back, (j, k), F.mul(c, F.mul(x, y)))
    if _clean(back) != t:
        raise ValueError("tensor not in S(x)S")
    return out


def subcarrier(h, basis: Sequence[Vector], names: Sequence[str] | None = None):
    """Restrict structure to the span of ``basis`` (expressed in that basis).

    Raises ``ValueError`` if the span is not closed under the relevant maps.
    """
    F = h.field
    basis = [list(v) for v in basis]
    n = len(basis)
    M = la.from_columns(F, basis) if basis else la.zeros(F, h.dim, 0)
    span = Subspace(F, h.dim, basis)
    if span.dim != n:
        raise ValueError("basis vectors are linearly dependent")
    # change of basis: coordinates relative to ``basis`` via the canonical one
    C = [span.coordinates(v) for v in basis]  # canonical coords of given basis
    Cinv = la.inverse(F, la.transpose(C)) if n else []

    def coords(v):
        return la.matvec(F, Cinv, span.coordinates(v))

    names = list(names) if names else [f"b{i}" for i in range(n)]
    mult = unit = comult = counit = antipode = None
    if isinstance(h, Coalgebra):
        entries = []
        for a, v in enumerate(basis):
            t = _coords_tensor(span, h.coproduct(v))
            # t is in canonical-basis coordinates; convert both legs
            conv: dict = {}
            for (j, k), c in t.items():
                for p in range(n):
                    x = Cinv[p][j]
                    if x == 0:
                        continue
                    for q in range(n):
                        y = Cinv[q][k]
                        if y != 0:
                            _acc(F, conv, (p, q), F.mul(c, F.mul(x, y)))
            entries.extend((a, p, q, c) for (p, q), c in _clean(conv).items())
        comult = la.Tensor3(F, (n, n, n), entries)
        counit = [h.apply_counit(v) for v in basis]
    if isinstance(h, Algebra):
        entries = []
        for a, u in enumerate(basis):
            for b, v in enumerate(basis):
                entries.extend((a, b, c, x) for c, x in enumerate(coords(h.product(u, v))) if x != 0)
        mult = la.Tensor3(F, (n, n, n), entries)
        unit = coords(h.one)
    if isinstance(h, HopfAlgebra):
        antipode = la.from_columns(F, [coords(h.apply_antipode(v)) for v in basis]) if n else []
        sub = HopfAlgebra(F, mult, unit, comult, counit, antipode, names)
    elif isinstance(h, Bialgebra):
        sub = Bialgebra(F, mult, unit, comult, counit, names)
    elif isinstance(h, Algebra):
        sub = Algebra(F, mult, unit, names)
    else:
        sub = Coalgebra(F, comult, counit, names)
    return sub, M


def cocommutative_part(h) -> SubcoalgebraPresentation:
    """Largest cocommutative subcoalgebra, computed as ``I^perp`` for ``I`` the commutator ideal of ``h*``."""
    F = h.field
    I = commutator_ideal(dual(h.coalgebra_part()) if not isinstance(h, Bialgebra) else dual(h))
    Hc = I.perp()
    vectors = Hc.vectors()
    sub_names = []
    for v in vectors:
        terms = [(h.names[j], x) for j, x in enumerate(v) if x != 0]
        sub_names.append("+".join(n if x == F.one else f"{F.format(x)}{n}" for n, x in terms))
    if isinstance(h, Bialgebra):
        sub, M = subcarrier(h, vectors, sub_names)
    else:
        sub, M = subcarrier(h.coalgebra_part(), vectors, sub_names)
    cx = validate(sub)
    if cx is not None:
        raise ValidationError(cx)
    if not is_cocommutative(sub):
        raise BimeasureError("cocommutative part is not cocommutative")
    return SubcoalgebraPresentation(h, Hc, sub, LinMap(F, M, sub, h))


def corestrict_to_cc(f: Matrix, pres: SubcoalgebraPresentation) -> Matrix:
    """``fbar`` with ``iota o fbar = f``; raises :class:`DoesNotFactor` if the image leaves ``H_c``."""
    F = pres.original.field
    cols = la.columns(f)
    out = []
    for n, c in enumerate(cols):
        if not pres.subspace.contains(c):
            raise DoesNotFactor(f"image of basis vector {n} is not contained in the cocommutative part")
        out.append(pres.subspace.coordinates(c))
    return la.from_columns(F, out) if out else la.zeros(F, pres.subspace.dim, 0)
