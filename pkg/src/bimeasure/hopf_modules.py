"""Hopf modules, coinvariants and the fundamental isomorphism.

A Hopf module over ``H`` is stored as two sparse tables: ``action`` with
entries ``(h, m, m', c)`` meaning ``e_h . e_m = sum c e_m'`` and ``coaction``
with entries ``(m, h, m', c)`` meaning ``delta(e_m) = sum c e_h (x) e_m'``.
``H (x) M`` is flattened as ``h * dim M + m``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg as la
from .algebra import Counterexample, HopfAlgebra, LinMap, _acc, _clean
from .errors import BimeasureError, ValidationError
from .linalg import Matrix, Subspace, Tensor3, Vector


class HopfModule:
    def __init__(self, H: HopfAlgebra, dim: int, action: Tensor3, coaction: Tensor3, name: str = "M"):
        if action.dims != (H.dim, dim, dim) or coaction.dims != (dim, H.dim, dim):
            raise BimeasureError("action/coaction tables have the wrong shape")
        self.H = H
        self.dim = dim
        self.field = H.field
        self.action = action
        self.coaction = coaction
        self.name = name

    def __repr__(self) -> str:
        return f"HopfModule({self.name}, dim={self.dim})"

    def basis_vector(self, i: int) -> Vector:
        return la.unit_vector(self.field, self.dim, i)

    def act(self, h, m) -> Vector:
        F = self.field
        acc = [F.zero] * self.dim
        for i, a in enumerate(h):
            if a == 0:
                continue
            for j, b in enumerate(m):
                if b == 0:
                    continue
                ab = F.mul(a, b)
                for k, c in self.action.pair(i, j):
                    acc[k] = F.add(acc[k], F.mul(ab, c))
        return acc

    def coact(self, m) -> dict:
        """``delta(m)`` as ``{(h, m'): c}``."""
        F = self.field
        out: dict = {}
        for i, a in enumerate(m):
            if a == 0:
                continue
            for h, k, c in self.coaction.by_first[i]:
                _acc(F, out, (h, k), F.mul(a, c))
        return _clean(out)

    def action_matrix(self) -> Matrix:
        """``mu: H (x) M -> M``."""
        F, d = self.field, self.dim
        cols = [self.act(self.H.basis_vector(h), self.basis_vector(m)) for h in range(self.H.dim) for m in range(d)]
        return la.from_columns(F, cols)

    def coaction_matrix(self) -> Matrix:
        """``delta: M -> H (x) M``."""
        F, d = self.field, self.dim
        cols = []
        for m in range(d):
            v = [F.zero] * (self.H.dim * d)
            for (h, k), c in self.coact(self.basis_vector(m)).items():
                v[h * d + k] = c
            cols.append(v)
        return la.from_columns(F, cols)

    @classmethod
    def from_matrices(cls, H: HopfAlgebra, dim: int, action: Matrix, coaction: Matrix, name: str = "M") -> HopfModule:
        a_entries = [(c // dim, c % dim, r, x) for r, row in enumerate(action) for c, x in enumerate(row) if x != 0]
        d_entries = [(c, r // dim, r % dim, x) for r, row in enumerate(coaction) for c, x in enumerate(row) if x != 0]
        F = H.field
        return cls(H, dim, Tensor3(F, (H.dim, dim, dim), a_entries), Tensor3(F, (dim, H.dim, dim), d_entries), name)


# -- constructors -------------------------------------------------------------------

def regular_module(H: HopfAlgebra) -> HopfModule:
    """``M = H`` with multiplication and comultiplication."""
    F, d = H.field, H.dim
    action = Tensor3(F, (d, d, d), [(i, j, k, c) for (i, j, k), c in H.mult.entries.items()])
    coaction = Tensor3(F, (d, d, d), [(i, j, k, c) for (i, j, k), c in H.comult.entries.items()])
    return HopfModule(H, d, action, coaction, "H")


def trivial_module(H: HopfAlgebra, v_dim: int) -> HopfModule:
    """``H (x) V`` with action on the left leg and coaction ``Delta (x) 1``."""
    F, d = H.field, H.dim
    n = d * v_dim
    action = [(h, k * v_dim + v, l * v_dim + v, c) for (h, k, l), c in H.mult.entries.items() for v in range(v_dim)]
    coaction = [(i * v_dim + v, j, k * v_dim + v, c) for (i, j, k), c in H.comult.entries.items() for v in range(v_dim)]
    return HopfModule(H, n, Tensor3(F, (d, n, n), action), Tensor3(F, (n, d, n), coaction), f"H(x)k^{v_dim}")


# -- validation -----------------------------------------------------------------

def _dict_cx(axiom, idx, lhs: dict, rhs: dict, F) -> Counterexample:
    keys = sorted(set(lhs) | set(rhs))
    return Counterexample(axiom, idx, tuple(lhs.get(k, F.zero) for k in keys), tuple(rhs.get(k, F.zero) for k in keys), F)


def validate_hopf_module(hm: HopfModule) -> Counterexample | None:
    """Module, comodule and ``delta(hm) = h1 m_-1 (x) h2 m_0`` on basis pairs."""
    H, F, d = hm.H, hm.field, hm.dim
    eH = [H.basis_vector(i) for i in range(H.dim)]
    eM = [hm.basis_vector(i) for i in range(d)]
    for m in range(d):
        if hm.act(H.one, eM[m]) != eM[m]:
            return Counterexample("1 m = m", (m,), tuple(hm.act(H.one, eM[m])), tuple(eM[m]), F)
    for h in range(H.dim):
        for k in range(H.dim):
            hk = H.product(eH[h], eH[k])
            for m in range(d):
                lhs = hm.act(hk, eM[m])
                rhs = hm.act(eH[h], hm.act(eH[k], eM[m]))
                if lhs != rhs:
                    return Counterexample("(hk)m = h(km)", (h, k, m), tuple(lhs), tuple(rhs), F)
    for m in range(d):
        dm = hm.coact(eM[m])
        lhs: dict = {}
        rhs: dict = {}
        counit = [F.zero] * d
        for (h, k), c in dm.items():
            for h1, h2, x in H.basis_coproduct(h):
                _acc(F, lhs, (h1, h2, k), F.mul(c, x))
            for (h2, k2), y in hm.coact(eM[k]).items():
                _acc(F, rhs, (h, h2, k2), F.mul(c, y))
            counit[k] = F.add(counit[k], F.mul(c, H.counit[h]))
        if _clean(lhs) != _clean(rhs):
            return _dict_cx("(Delta (x) 1) delta = (1 (x) delta) delta", (m,), _clean(lhs), _clean(rhs), F)
        if counit != eM[m]:
            return Counterexample("(eps (x) 1) delta = id", (m,), tuple(counit), tuple(eM[m]), F)
    for h in range(H.dim):
        for m in range(d):
            lhs = hm.coact(hm.act(eH[h], eM[m]))
            rhs: dict = {}
            for h1, h2, x in H.basis_coproduct(h):
                for (k, m0), c in hm.coact(eM[m]).items():
                    left = H.product(eH[h1], eH[k])
                    right = hm.act(eH[h2], eM[m0])
                    xc = F.mul(x, c)
                    for p, u in enumerate(left):
                        if u == 0:
                            continue
                        for q, w in enumerate(right):
                            if w != 0:
                                _acc(F, rhs, (p, q), F.mul(xc, F.mul(u, w)))
            rhs = _clean(rhs)
            if lhs != rhs:
                return _dict_cx("delta(hm) = h1 m_-1 (x) h2 m_0", (h, m), lhs, rhs, F)
    return None


def validated_module(hm: HopfModule) -> HopfModule:
    cx = validate_hopf_module(hm)
    if cx is not None:
        raise ValidationError(cx)
    return hm


# -- coinvariants and the fundamental isomorphism ------------------------------------

@dataclass
class CoinvariantData:
    """``A = M^coH`` with ``rho = kappa rhobar`` and ``theta: M -> H (x) A``."""

    module: HopfModule
    space: Subspace
    image_of_rho: Subspace
    rho: LinMap
    rho_bar: LinMap
    kappa: LinMap

    @property
    def dim(self) -> int:
        return self.space.dim


def equalizer_coinvariants(hm: HopfModule) -> Subspace:
    """``{m : delta(m) = 1 (x) m}`` as a kernel."""
    F, d, H = hm.field, hm.dim, hm.H
    delta = hm.coaction_matrix()
    diff = [list(row) for row in delta]
    for h, u in enumerate(H.one):
        if u != 0:
            for m in range(d):
                diff[h * d + m][m] = F.sub(diff[h * d + m][m], u)
    return Subspace(F, d, la.kernel(F, diff, d))


def rho_matrix(hm: HopfModule) -> Matrix:
    """``rho = mu (S (x) 1) delta``."""
    H, F, d = hm.H, hm.field, hm.dim
    cols = []
    for m in range(d):
        acc = [F.zero] * d
        for (h, k), c in hm.coact(hm.basis_vector(m)).items():
            acc = la.vadd(F, acc, la.vscale(F, c, hm.act(H.antipode_of(h), hm.basis_vector(k))))
        cols.append(acc)
    return la.from_columns(F, cols)


def coinvariants(hm: HopfModule) -> CoinvariantData:
    """Equalizer coinvariants, cross-checked against the image of ``rho``."""
    F = hm.field
    A = equalizer_coinvariants(hm)
    rho = rho_matrix(hm)
    img = Subspace(F, hm.dim, la.columns(rho))
    if img != A:
        raise BimeasureError(f"image of rho (dim {img.dim}) differs from the equalizer (dim {A.dim})")
    basis = A.vectors()
    kappa = la.from_columns(F, basis) if basis else la.zeros(F, hm.dim, 0)
    rho_bar = la.from_columns(F, [A.coordinates(c) for c in la.columns(rho)]) if basis else []
    return CoinvariantData(hm, A, img, LinMap(F, rho), LinMap(F, rho_bar), LinMap(F, kappa))


@dataclass
class FundamentalIso:
    theta: Matrix
    theta_inv: Matrix
    data: CoinvariantData


def fundamental_iso(hm: HopfModule, data: CoinvariantData | None = None) -> FundamentalIso:
    """``theta = (1 (x) rhobar) delta: M -> H (x) A`` with ``theta^-1 = mu (1 (x) kappa)``."""
    data = data or coinvariants(hm)
    H, F, d = hm.H, hm.field, hm.dim
    a = data.dim
    cols = []
    for m in range(d):
        v = [F.zero] * (H.dim * a)
        for (h, k), c in hm.coact(hm.basis_vector(m)).items():
            coords = data.rho_bar.column(k) if a else []
            for j, x in enumerate(coords):
                if x != 0:
                    v[h * a + j] = F.add(v[h * a + j], F.mul(c, x))
        cols.append(v)
    theta = la.from_columns(F, cols)
    inv_cols = [hm.act(H.basis_vector(h), data.kappa.column(j)) for h in range(H.dim) for j in range(a)]
    theta_inv = la.from_columns(F, inv_cols) if inv_cols else la.zeros(F, d, 0)
    return FundamentalIso(theta, theta_inv, data)


def check_fundamental_iso(hm: HopfModule) -> Counterexample | None:
    """Two-sided inverse, ``theta kappa(a) = 1 (x) a``, and ``theta`` a morphism of Hopf modules."""
    F, H, d = hm.field, hm.H, hm.dim
    iso = fundamental_iso(hm)
    a = iso.data.dim
    n = H.dim * a
    if n != d:
        return Counterexample("dim M = dim H * dim A", (), (d,), (n,), F)
    if la.matmul(F, iso.theta_inv, iso.theta) != la.identity(F, d):
        return Counterexample("theta^-1 theta = id", (), (), (), F)
    if la.matmul(F, iso.theta, iso.theta_inv) != la.identity(F, n):
        return Counterexample("theta theta^-1 = id", (), (), (), F)
    for j in range(a):
        lhs = la.matvec(F, iso.theta, iso.data.kappa.column(j))
        rhs = la.vkron(F, H.one, la.unit_vector(F, a, j))
        if lhs != rhs:
            return Counterexample("theta kappa(a) = 1 (x) a", (j,), tuple(lhs), tuple(rhs), F)
    target = trivial_module(H, a)
    for h in range(H.dim):
        for m in range(d):
            lhs = la.matvec(F, iso.theta, hm.act(H.basis_vector(h), hm.basis_vector(m)))
            rhs = target.act(H.basis_vector(h), la.matvec(F, iso.theta, hm.basis_vector(m)))
            if lhs != rhs:
                return Counterexample("theta(hm) = h theta(m)", (h, m), tuple(lhs), tuple(rhs), F)
    for m in range(d):
        lhs: dict = {}
        for (h, k), c in hm.coact(hm.basis_vector(m)).items():
            for q, x in enumerate(la.matvec(F, iso.theta, hm.basis_vector(k))):
                if x != 0:
                    _acc(F, lhs, (h, q), F.mul(c, x))
        rhs = target.coact(la.matvec(F, iso.theta, hm.basis_vector(m)))
        if _clean(lhs) != rhs:
            return _dict_cx("(1 (x) theta) delta = delta theta", (m,), _clean(lhs), rhs, F)
    return None


# -- cotensor product -----------------------------------------------------------------

def cotensor(m1: HopfModule, m2: HopfModule) -> HopfModule:
    """``M1 []^H M2`` with the diagonal action and the coaction of the left factor.

    The carrier is the equalizer of ``m (x) n -> m_0 (x) m_-1 (x) n`` and
    ``m (x) n -> m (x) n_-1 (x) n_0``.  Left coactions are turned into right ones
    by the flip, so ``H`` must be cocommutative.
    """
    from .algebra import is_cocommutative

    H, F = m1.H, m1.field
    if m2.H is not H and m2.H.dim != H.dim:
        raise BimeasureError("modules over different Hopf algebras")
    if not is_cocommutative(H):
        raise BimeasureError("cotensor of left comodules needs a cocommutative H")
    d1, d2, dh = m1.dim, m2.dim, H.dim
    n = d1 * d2
    rows = [[F.zero] * n for _ in range(d1 * dh * d2)]
    for a in range(d1):
        for b in range(d2):
            col = a * d2 + b
            for (h, a0), c in m1.coact(m1.basis_vector(a)).items():
                r = (a0 * dh + h) * d2 + b
                rows[r][col] = F.add(rows[r][col], c)
            for (h, b0), c in m2.coact(m2.basis_vector(b)).items():
                r = (a * dh + h) * d2 + b0
                rows[r][col] = F.sub(rows[r][col], c)
    space = Subspace(F, n, la.kernel(F, rows, n))
    basis = space.vectors()
    k = len(basis)

    def diag_act(h: int, v: Vector) -> Vector:
        out = [F.zero] * n
        for h1, h2, x in H.basis_coproduct(h):
            for idx, c in enumerate(v):
                if c == 0:
                    continue
                a, b = divmod(idx, d2)
                u = m1.act(H.basis_vector(h1), m1.basis_vector(a))
                w = m2.act(H.basis_vector(h2), m2.basis_vector(b))
                out = la.vadd(F, out, la.vscale(F, F.mul(x, c), la.vkron(F, u, w)))
        return out

    action, coaction = [], []
    for j, v in enumerate(basis):
        for h in range(dh):
            img = diag_act(h, v)
            if not space.contains(img):
                raise BimeasureError("cotensor is not closed under the diagonal action")
            action.extend((h, j, i, c) for i, c in enumerate(space.coordinates(img)) if c != 0)
        per_h: dict = {}
        for idx, c in enumerate(v):
            if c == 0:
                continue
            a, b = divmod(idx, d2)
            for (h, a0), x in m1.coact(m1.basis_vector(a)).items():
                vec = per_h.setdefault(h, [F.zero] * n)
                vec[a0 * d2 + b] = F.add(vec[a0 * d2 + b], F.mul(c, x))
        for h, vec in sorted(per_h.items()):
            if not space.contains(vec):
                raise BimeasureError("cotensor is not closed under the coaction")
            coaction.extend((j, h, i, c) for i, c in enumerate(space.coordinates(vec)) if c != 0)
    return HopfModule(H, k, Tensor3(F, (dh, k, k), action), Tensor3(F, (k, dh, k), coaction), f"{m1.name}[]{m2.name}")


# -- the three groups of a free Hopf module H (x) A ------------------------------------
#
# ``H (x) A`` is flattened as ``h * dim A + a``; ``H (x) H (x) A`` as
# ``h * (dim H * dim A) + (h' * dim A + a)``.

def is_normalized(psi: Matrix, H: HopfAlgebra, A) -> bool:
    return la.matvec(H.field, psi, H.one) == list(A.one)


def enumerate_reg_plus(H: HopfAlgebra, A, budget: int = 1 << 16) -> list[Matrix]:
    """Normalized convolution-invertible ``psi: H -> A`` over a prime field, sorted."""
    from .algebra import convolution_inverse
    from .errors import BudgetExceeded, NotInvertible

    F = H.field
    if not F.is_finite:
        raise BimeasureError("Reg+ enumeration needs a finite field")
    dH, dA = H.dim, A.dim
    # unknown psi[a][h] at a * dH + h; constraint psi(1_H) = 1_A
    rows = []
    for a in range(dA):
        row = [F.zero] * (dA * dH)
        for h, u in enumerate(H.one):
            row[a * dH + h] = u
        rows.append(row)
    x, ker = la.solve_linear(F, rows, list(A.one))
    if F.size ** len(ker) > budget:
        raise BudgetExceeded(f"{F.size}^{len(ker)} normalized maps exceed budget {budget}")
    out = []
    for coeffs in _product(F.size, len(ker)):
        v = list(x)
        for c, k in zip(coeffs, ker):
            if c:
                v = la.vadd(F, v, la.vscale(F, c, k))
        psi = [v[a * dH:(a + 1) * dH] for a in range(dA)]
        try:
            convolution_inverse(psi, H, A)
        except NotInvertible:
            continue
        out.append(psi)
    out.sort(key=_key)
    return out


def _product(p: int, n: int):
    import itertools

    return itertools.product(range(p), repeat=n)


def _key(m: Matrix) -> tuple:
    return tuple(tuple(row) for row in m)


def alpha(psi: Matrix, H: HopfAlgebra, A) -> Matrix:
    """``phi(h (x) a) = h1 (x) psi(h2) a``."""
    F = H.field
    dH, dA = H.dim, A.dim
    pcols = la.columns(psi)
    cols = []
    for h in range(dH):
        for a in range(dA):
            v = [F.zero] * (dH * dA)
            for h1, h2, c in H.basis_coproduct(h):
                for b, x in enumerate(A.product(pcols[h2], A.basis_vector(a))):
                    if x != 0:
                        v[h1 * dA + b] = F.add(v[h1 * dA + b], F.mul(c, x))
            cols.append(v)
    return la.from_columns(F, cols)


def alpha_inverse(phi: Matrix, H: HopfAlgebra, A) -> Matrix:
    """``psi(h) = (eps (x) 1) phi(h (x) 1)``."""
    F = H.field
    dH, dA = H.dim, A.dim
    cols = []
    for h in range(dH):
        img = la.matvec(F, phi, la.vkron(F, H.basis_vector(h), A.one))
        v = [F.zero] * dA
        for h2 in range(dH):
            e = H.counit[h2]
            if e != 0:
                for b in range(dA):
                    v[b] = F.add(v[b], F.mul(e, img[h2 * dA + b]))
        cols.append(v)
    return la.from_columns(F, cols)


def check_automorphism(phi: Matrix, H: HopfAlgebra, A) -> Counterexample | None:
    """``phi`` is invertible, right ``A``-linear and an ``H``-comodule map for ``Delta (x) 1``."""
    from .errors import NotInvertible

    F = H.field
    dH, dA = H.dim, A.dim
    try:
        la.inverse(F, phi)
    except NotInvertible:
        return Counterexample("phi invertible", (), (), (), F)
    for h in range(dH):
        for a in range(dA):
            x = la.vkron(F, H.basis_vector(h), A.basis_vector(a))
            for b in range(dA):
                lhs = la.matvec(F, phi, _right_mult(F, x, A.basis_vector(b), dH, A))
                rhs = _right_mult(F, la.matvec(F, phi, x), A.basis_vector(b), dH, A)
                if lhs != rhs:
                    return Counterexample("phi(xb) = phi(x)b", (h, a, b), tuple(lhs), tuple(rhs), F)
    free = trivial_module(H, dA)
    for j in range(dH * dA):
        x = la.unit_vector(F, dH * dA, j)
        lhs: dict = {}
        for (h, k), c in free.coact(x).items():
            for q, y in enumerate([row[k] for row in phi]):
                if y != 0:
                    _acc(F, lhs, (h, q), F.mul(c, y))
        rhs = free.coact(la.matvec(F, phi, x))
        if _clean(lhs) != rhs:
            return _dict_cx("(1 (x) phi) delta = delta phi", (j,), _clean(lhs), rhs, F)
    return None


def _right_mult(F, x: Vector, b: Vector, dH: int, A) -> Vector:
    dA = A.dim
    out = [F.zero] * (dH * dA)
    for h in range(dH):
        part = x[h * dA:(h + 1) * dA]
        if any(c != 0 for c in part):
            out[h * dA:(h + 1) * dA] = A.product(part, b)
    return out


def _free_mult(H: HopfAlgebra, A) -> Matrix:
    """``mu(h (x) h' (x) a) = hh' (x) a``."""
    F = H.field
    dH, dA = H.dim, A.dim
    cols = []
    for h in range(dH):
        for h2 in range(dH):
            prod = H.product(H.basis_vector(h), H.basis_vector(h2))
            for a in range(dA):
                cols.append(la.vkron(F, prod, A.basis_vector(a)))
    return la.from_columns(F, cols)


def beta(phi: Matrix, H: HopfAlgebra, A) -> Matrix:
    """``mubar = phi mu (1 (x) phi^-1)``."""
    F = H.field
    inv = la.inverse(F, phi)
    one_inv = la.kronecker(F, la.identity(F, H.dim), inv)
    return la.matmul(F, phi, la.matmul(F, _free_mult(H, A), one_inv))


def beta_inverse(mubar: Matrix, H: HopfAlgebra, A) -> Matrix:
    """``phi = mubar (1 (x) iota_H (x) 1)``: ``h (x) a -> mubar(h (x) 1 (x) a)``."""
    F = H.field
    dH, dA = H.dim, A.dim
    cols = [la.matvec(F, mubar, la.vkron(F, H.basis_vector(h), la.vkron(F, H.one, A.basis_vector(a))))
            for h in range(dH) for a in range(dA)]
    return la.from_columns(F, cols)


def twisted_module(mubar: Matrix, H: HopfAlgebra, A, name: str = "twisted") -> HopfModule:
    """``(H (x) A, Delta (x) 1, mubar)``."""
    free = trivial_module(H, A.dim)
    return HopfModule.from_matrices(H, H.dim * A.dim, mubar, free.coaction_matrix(), name)


def check_action_a_linear(mubar: Matrix, H: HopfAlgebra, A) -> Counterexample | None:
    F = H.field
    dH, dA = H.dim, A.dim
    for h in range(dH):
        for j in range(dH * dA):
            x = la.unit_vector(F, dH * dA, j)
            for b in range(dA):
                lhs = la.matvec(F, mubar, la.vkron(F, H.basis_vector(h), _right_mult(F, x, A.basis_vector(b), dH, A)))
                rhs = _right_mult(F, la.matvec(F, mubar, la.vkron(F, H.basis_vector(h), x)), A.basis_vector(b), dH, A)
                if lhs != rhs:
                    return Counterexample("mubar(h (x) xb) = mubar(h (x) x)b", (h, j, b), tuple(lhs), tuple(rhs), F)
    return None


@dataclass
class GroupTransport:
    """Outcome of transporting Reg+ through ``alpha`` and ``beta``."""

    order: int
    alpha_round_trip: bool
    beta_round_trip: bool
    actions_valid: bool
    automorphisms_valid: bool
    reg_vs_aut: bool
    aut_vs_actions: bool
    pairs_checked: int
    exhaustive: bool
    failures: list

    @property
    def ok(self) -> bool:
        return (
            self.alpha_round_trip and self.beta_round_trip and self.actions_valid
            and self.automorphisms_valid and self.reg_vs_aut and self.aut_vs_actions
        )

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__} | {"ok": self.ok}


def theorem53_check(
    H: HopfAlgebra, A, reg: list[Matrix] | None = None, full_table_limit: int = 400, action_table_limit: int = 50,
    samples: int = 4000, seed: int = 0, budget: int = 1 << 16,
) -> GroupTransport:
    """Round trips, validity and multiplication-table agreement for the three groups.

    The convolution and composition tables are compared on all pairs when the
    group has at most ``full_table_limit`` elements, the action table (which
    needs a matrix inverse per product) up to ``action_table_limit``; larger
    groups use ``samples`` seeded random pairs.
    """
    import random

    from .algebra import convolve

    F = H.field
    reg = reg if reg is not None else enumerate_reg_plus(H, A, budget)
    n = len(reg)
    failures: list = []
    auts = [alpha(p, H, A) for p in reg]
    alpha_rt = all(alpha_inverse(phi, H, A) == p for phi, p in zip(auts, reg))
    aut_ok = True
    for i, phi in enumerate(auts):
        cx = check_automorphism(phi, H, A)
        if cx is not None:
            aut_ok = False
            failures.append(f"automorphism {i}: {cx}")
            break
    acts = [beta(phi, H, A) for phi in auts]
    beta_rt = all(beta_inverse(mb, H, A) == phi for mb, phi in zip(acts, auts))
    act_ok = True
    for i, mb in enumerate(acts):
        mod = twisted_module(mb, H, A)
        cx = validate_hopf_module(mod) or check_action_a_linear(mb, H, A)
        if cx is None and coinvariants(mod).dim != A.dim:
            cx = Counterexample("dim of coinvariants = dim A", (i,), (coinvariants(mod).dim,), (A.dim,), F)
        if cx is not None:
            act_ok = False
            failures.append(f"action {i}: {cx}")
            break
    reg_index = {_key(p): i for i, p in enumerate(reg)}
    aut_index = {_key(p): i for i, p in enumerate(auts)}
    act_index = {_key(p): i for i, p in enumerate(acts)}
    rng = random.Random(seed)

    def pairs_for(limit: int) -> tuple[list, bool]:
        if n <= limit:
            return [(i, j) for i in range(n) for j in range(n)], True
        return [(rng.randrange(n), rng.randrange(n)) for _ in range(samples)], False

    pairs, exhaustive = pairs_for(full_table_limit)
    reg_vs_aut = aut_vs_act = True
    for i, j in pairs:
        r = reg_index.get(_key(convolve(reg[i], reg[j], H, A)))
        a = aut_index.get(_key(la.matmul(F, auts[i], auts[j])))
        if r is None or r != a:
            reg_vs_aut = False
            failures.append(f"convolution vs composition at {(i, j)}")
            break
    # the action group law is composition transported through beta
    back = [beta_inverse(mb, H, A) for mb in acts]
    act_pairs, act_exhaustive = pairs_for(action_table_limit)
    for i, j in act_pairs:
        c = act_index.get(_key(beta(la.matmul(F, back[i], back[j]), H, A)))
        if c is None or c != aut_index.get(_key(la.matmul(F, auts[i], auts[j]))):
            aut_vs_act = False
            failures.append(f"composition vs action product at {(i, j)}")
            break
    exhaustive = exhaustive and act_exhaustive
    pairs = pairs + act_pairs
    return GroupTransport(n, alpha_rt, beta_rt, act_ok, aut_ok, reg_vs_aut, aut_vs_act, len(pairs), exhaustive, failures)


# -- bimeasurings of a matched pair as automorphisms and actions -----------------------

def bimeasuring_to_automorphism(mp, psi, H=None) -> tuple[Matrix, Matrix]:
    """``Psi = psi D^-1`` on ``H = T # N`` and ``phi = alpha(Psi)`` on ``H (x) A``."""
    from .matched_pair import bismash, product_form

    H = H or bismash(mp)
    Psi = product_form(mp, psi, H)
    return Psi, alpha(Psi, H, psi.target)


def bimeasuring_to_action(mp, psi, H=None) -> Matrix:
    """``beta(alpha(Psi))``: the twisted action of ``H`` on ``H (x) A``."""
    from .matched_pair import bismash

    H = H or bismash(mp)
    _, phi = bimeasuring_to_automorphism(mp, psi, H)
    return beta(phi, H, psi.target)


def fixes_subcomodules(mp, phi: Matrix, H, A) -> Counterexample | None:
    """``phi`` is the identity on ``N (x) A`` and on ``T (x) A`` inside ``H (x) A``."""
    from .matched_pair import embed_n, embed_t

    F = H.field
    for label, dim, embed in (("N", mp.N.dim, embed_n), ("T", mp.T.dim, embed_t)):
        basis = mp.N if label == "N" else mp.T
        for i in range(dim):
            for a in range(A.dim):
                x = la.vkron(F, embed(mp, basis.basis_vector(i)), A.basis_vector(a))
                y = la.matvec(F, phi, x)
                if y != x:
                    return Counterexample(f"phi = id on {label} (x) A", (i, a), tuple(y), tuple(x), F)
    return None


def diagonal_action(mp, mubar: Matrix, H, A) -> Counterexample | None:
    """``mubar`` restricted to ``N (x) (N (x) A)`` and ``T (x) (T (x) A)`` is the untwisted product."""
    from .matched_pair import embed_n, embed_t

    F = H.field
    for label, basis, embed in (("N", mp.N, embed_n), ("T", mp.T, embed_t)):
        for i in range(basis.dim):
            hi = embed(mp, basis.basis_vector(i))
            for j in range(basis.dim):
                hj = embed(mp, basis.basis_vector(j))
                for a in range(A.dim):
                    x = la.vkron(F, hj, A.basis_vector(a))
                    lhs = la.matvec(F, mubar, la.vkron(F, hi, x))
                    rhs = la.vkron(F, H.product(hi, hj), A.basis_vector(a))
                    if lhs != rhs:
                        return Counterexample(f"mubar diagonal in {label}", (i, j, a), tuple(lhs), tuple(rhs), F)
    return None


def product_form_equations(mp, A, H):
    """Polynomial system for ``Psi: H -> A`` obeying the product-form identities; unknown ``h * dim A + a``."""
    from .matched_pair import embed_n, embed_t
    from .measuring import _linear, _poly_product, _var_vector
    from .polysolve import Poly, PolynomialSystem

    F = H.field
    dA = A.dim
    system = PolynomialSystem(F, H.dim * dA)
    V = [_var_vector(F, h * dA, dA) for h in range(H.dim)]

    def P(x):
        return _linear(F, x, V, dA)

    iN = [embed_n(mp, mp.N.basis_vector(i)) for i in range(mp.N.dim)]
    iT = [embed_t(mp, mp.T.basis_vector(i)) for i in range(mp.T.dim)]

    def add_eq(lhs, rhs):
        for l_, r_ in zip(lhs, rhs):
            system.add(l_ - r_)

    for n in range(mp.N.dim):
        for t in range(mp.T.dim):
            nt = H.product(iN[n], iT[t])
            for m in range(mp.N.dim):
                rhs = [Poly(F) for _ in range(dA)]
                for t1, t2, c in mp.T.basis_coproduct(t):
                    prod = _poly_product(A, P(H.product(iN[n], iT[t1])), P(H.product(iT[t2], iN[m])))
                    rhs = [r + q * c for r, q in zip(rhs, prod)]
                add_eq(P(H.product(nt, iN[m])), rhs)
    for t in range(mp.T.dim):
        tn_s = [H.product(iT[t], iN[n]) for n in range(mp.N.dim)]
        for n in range(mp.N.dim):
            for s in range(mp.T.dim):
                rhs = [Poly(F) for _ in range(dA)]
                for n1, n2, c in mp.N.basis_coproduct(n):
                    prod = _poly_product(A, P(H.product(iT[t], iN[n1])), P(H.product(iN[n2], iT[s])))
                    rhs = [r + q * c for r, q in zip(rhs, prod)]
                add_eq(P(H.product(tn_s[n], iT[s])), rhs)
    for basis, emb in ((mp.T, iT), (mp.N, iN)):
        for i in range(basis.dim):
            add_eq(P(emb[i]), [Poly.const(F, F.mul(basis.counit[i], u)) for u in A.one])
    return system


def _iterated(C, i: int, k: int) -> list[tuple[tuple, object]]:
    """``Delta^(k-1)(e_i)`` as ``[(indices, coefficient)]`` with ``k`` legs."""
    F = C.field
    terms = [((i,), F.one)]
    for _ in range(k - 1):
        nxt = []
        for idx, c in terms:
            for a, b, x in C.basis_coproduct(idx[-1]):
                nxt.append((idx[:-1] + (a, b), F.mul(c, x)))
        terms = nxt
    return terms


MUBAR_READINGS = ("printed", "shifted", "distributive")


def mubar_reading(mp, psi, reading: str, H=None) -> Matrix:
    """The displayed ``mubar`` formula on ``(T # N) (x) N (x) T (x) A`` under one reading of its indices.

    ``printed`` uses ``t_1`` twice as written; ``shifted`` gives every occurrence
    of ``t`` its own leg; ``distributive`` replaces the ``T`` output leg by
    ``n_2(t_2^{m_2} s_1)``.  Columns are indexed by ``D(n (x) t)`` paired with
    ``m (x) s (x) a``, rows by ``m' (x) s' (x) a'``.
    """
    from .matched_pair import bismash, derived_actions, embed_n, embed_t, product_form, relabel_matrix

    if reading not in MUBAR_READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    H = H or bismash(mp)
    N, T, A, F = mp.N, mp.T, psi.target, mp.field
    Psi = product_form(mp, psi, H)
    da = derived_actions(mp)
    dN, dT, dA = N.dim, T.dim, A.dim
    D = relabel_matrix(mp, H)
    Dinv = la.inverse(F, D)

    def P(x):
        return la.matvec(F, Psi, x)

    def nts(n, t, s):
        return H.product(H.product(embed_n(mp, N.basis_vector(n)), embed_t(mp, T.basis_vector(t))), embed_t(mp, T.basis_vector(s)))

    def tm(t, m):
        return H.product(embed_t(mp, T.basis_vector(t)), embed_n(mp, N.basis_vector(m)))

    size = dN * dT * dA
    cols_by_key = {}
    for n in range(dN):
        for t in range(dT):
            for m in range(dN):
                for s in range(dT):
                    for a in range(dA):
                        out = [F.zero] * size
                        legs_t = 3 if reading == "printed" else 4
                        for (n1, n2, n3), cn in _iterated(N, n, 3):
                            for tl, ct in _iterated(T, t, legs_t):
                                for (m1, m2, m3), cm in _iterated(N, m, 3):
                                    for (s1, s2), cs in _iterated(T, s, 2):
                                        coeff = F.mul(F.mul(cn, ct), F.mul(cm, cs))
                                        if coeff == 0:
                                            continue
                                        nleg = N.product(N.basis_vector(n1), da.bracket[tl[0]][m1])
                                        if reading == "printed":
                                            tin = T.product(T.basis_vector(tl[0]), T.basis_vector(s1))
                                            sc = A.product(P(nts(n3, tl[1], s2)), P(tm(tl[2], m2)))
                                        elif reading == "shifted":
                                            tin = T.product(T.basis_vector(tl[1]), T.basis_vector(s1))
                                            sc = A.product(P(nts(n3, tl[2], s2)), P(tm(tl[3], m2)))
                                        else:
                                            tin = T.product(da.hat[tl[1]][m3], T.basis_vector(s1))
                                            sc = A.product(P(nts(n3, tl[2], s2)), P(tm(tl[3], m2)))
                                        tleg = mp.mu(N.basis_vector(n2), tin)
                                        val = la.vscale(F, coeff, la.vkron(F, la.vkron(F, nleg, tleg), A.product(sc, A.basis_vector(a))))
                                        out = la.vadd(F, out, val)
                        cols_by_key[(n * dT + t, (m * dT + s) * dA + a)] = out
    # reindex columns to the H basis on the acting leg via D^-1
    cols = []
    for h in range(H.dim):
        coeffs = [Dinv[r][h] for r in range(dN * dT)]
        for x in range(size):
            acc = [F.zero] * size
            for r, c in enumerate(coeffs):
                if c != 0:
                    acc = la.vadd(F, acc, la.vscale(F, c, cols_by_key[(r, x)]))
            cols.append(acc)
    return la.from_columns(F, cols)


def transported_action(mp, psi, H=None) -> Matrix:
    """``beta(alpha(Psi))`` moved to ``N (x) T (x) A`` through ``D``."""
    from .matched_pair import bismash, relabel_matrix

    H = H or bismash(mp)
    F, A = mp.field, psi.target
    mubar = bimeasuring_to_action(mp, psi, H)
    D = la.kronecker(F, relabel_matrix(mp, H), la.identity(F, A.dim))
    Dinv = la.inverse(F, D)
    return la.matmul(F, Dinv, la.matmul(F, mubar, la.kronecker(F, la.identity(F, H.dim), D)))


@dataclass
class CorollaryReport:
    orders: dict
    tables_agree: bool
    automorphisms_valid: bool
    actions_valid: bool
    findings: list

    @property
    def ok(self) -> bool:
        o = list(self.orders.values())
        return self.tables_agree and self.automorphisms_valid and self.actions_valid and len(set(o)) == 1

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "orders": self.orders,
            "tables_agree": self.tables_agree,
            "automorphisms_valid": self.automorphisms_valid,
            "actions_valid": self.actions_valid,
            "findings": self.findings,
        }


def corollary_check(mp, A, budget: int | None = None) -> CorollaryReport:
    """Skew bimeasurings, doubly linear automorphisms and doubly diagonal actions.

    The automorphism group is enumerated independently of the skew
    bimeasurings, by solving the product-form identities for ``Psi`` on the
    bismash product.  The formula readings are reported as findings only.
    """
    from .algebra import convolution_inverse
    from .errors import NotInvertible
    from .matched_pair import bismash, build_group, skew_group
    from .polysolve import DEFAULT_BUDGET

    budget = budget or DEFAULT_BUDGET
    F = mp.field
    H = bismash(mp)
    g1 = skew_group(mp, A, budget)
    findings: list = []

    sols = product_form_equations(mp, A, H).solve(budget=budget)
    psis = [[list(s[h * A.dim + a] for h in range(H.dim)) for a in range(A.dim)] for s in sols]
    auts_ok = True
    auts = []
    for Psi in psis:
        try:
            convolution_inverse(Psi, H, A)
        except NotInvertible:
            auts_ok = False
            findings.append("a product-form solution is not convolution invertible")
            continue
        phi = alpha(Psi, H, A)
        cx = check_automorphism(phi, H, A) or fixes_subcomodules(mp, phi, H, A)
        if cx is not None:
            auts_ok = False
            findings.append(f"automorphism check: {cx}")
        auts.append(phi)
    auts.sort(key=_key)
    one = la.identity(F, H.dim * A.dim)
    g2 = build_group(auts, lambda x, y: la.matmul(F, x, y), one, key=_key) if auts else None

    acts = [beta(phi, H, A) for phi in auts]
    acts_ok = True
    for mb in acts:
        mod = twisted_module(mb, H, A)
        cx = validate_hopf_module(mod) or check_action_a_linear(mb, H, A) or diagonal_action(mp, mb, H, A)
        if cx is not None:
            acts_ok = False
            findings.append(f"action check: {cx}")
            break
    act_index = {_key(m): i for i, m in enumerate(acts)}

    # transport: psi -> phi -> mubar, compare the three tables
    agree = g2 is not None and g1.order == g2.order == len(acts)
    if agree:
        to_aut = []
        to_act = []
        aut_index = {_key(m): i for i, m in enumerate(auts)}
        for psi in g1.elements:
            _, phi = bimeasuring_to_automorphism(mp, psi, H)
            to_aut.append(aut_index.get(_key(phi)))
            to_act.append(act_index.get(_key(beta(phi, H, A))))
        if None in to_aut or None in to_act or len(set(to_aut)) != g1.order:
            agree = False
            findings.append("transport does not land bijectively in the enumerated groups")
        else:
            for i in range(g1.order):
                for j in range(g1.order):
                    k = g1.table[i][j]
                    if g2.table[to_aut[i]][to_aut[j]] != to_aut[k]:
                        agree = False
                    composed = la.matmul(F, beta_inverse(acts[to_act[i]], H, A), beta_inverse(acts[to_act[j]], H, A))
                    if act_index.get(_key(beta(composed, H, A))) != to_act[k]:
                        agree = False
            if not agree:
                findings.append("transported multiplication tables differ")

    for psi in g1.elements:
        actual = transported_action(mp, psi, H)
        for reading in MUBAR_READINGS:
            match = mubar_reading(mp, psi, reading, H) == actual
            findings.append(f"formula reading '{reading}' for psi={_pairing_label(psi)}: {'match' if match else 'mismatch'}")
    orders = {"skew_bimeasurings": g1.order, "automorphisms": len(auts), "actions": len(acts)}
    return CorollaryReport(orders, agree, auts_ok, acts_ok, findings)


def _pairing_label(psi) -> str:
    F = psi.field
    return "[" + ";".join(",".join(F.format(v[0]) if len(v) == 1 else "(" + ",".join(F.format(x) for x in v) + ")"
                                   for v in row) for row in psi.table) + "]"
