"""Measurings, bimeasurings, their correspondences and enumeration.

A pairing ``psi: X (x) Y -> A`` is a measuring when the coalgebra ``X``
measures the algebra ``Y`` to ``A``::

    psi(c, b b') = psi(c_1, b) psi(c_2, b'),    psi(c, 1) = eps(c) 1_A

and a bimeasuring when additionally ``Y`` (as a coalgebra) measures ``X``
(as an algebra).  Enumeration over a finite field turns these identities into
a polynomial system in the table entries; see :mod:`bimeasure.polysolve`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import linalg as la
from .algebra import (
    Algebra,
    BilinearPairing,
    Coalgebra,
    Counterexample,
    HopfAlgebra,
    LinMap,
    convolution_unit,
    convolve,
    is_cocommutative,
    is_commutative,
)
from .errors import BimeasureError, BudgetExceeded, DimensionMismatch, DoesNotFactor
from .field import Field, Scalar
from .linalg import Tensor3, Vector
from .polysolve import DEFAULT_BUDGET, Poly, PolynomialSystem
from .structure import QuotientPresentation, abelianization, subalgebra_closure


class PolynomialWindow(Coalgebra):
    """``k[x]`` restricted to degrees ``0..N``.

    The coalgebra part (binomial comultiplication) is an honest subcoalgebra
    of ``k[x]``; the product ``x^i x^j`` is only defined when ``i + j <= N``.
    """

    def __init__(self, N: int, field: Field):
        if N < 1:
            raise ValueError("window degree must be >= 1")
        self.N = N
        d = N + 1
        comult = Tensor3(field, (d,) * 3, [(n, k, n - k, field.binomial(n, k)) for n in range(d) for k in range(n + 1)])
        names = ["1", "x"] + [f"x^{i}" for i in range(2, d)]
        super().__init__(field, comult, la.unit_vector(field, d, 0), names)
        self.mult = Tensor3(field, (d,) * 3, [(i, j, i + j, 1) for i in range(d) for j in range(d) if i + j <= N])
        self.unit = tuple(la.unit_vector(field, d, 0))
        self.antipode = [[field((-1) ** i) if i == j else field.zero for j in range(d)] for i in range(d)]

    @property
    def one(self) -> Vector:
        return list(self.unit)

    def product_defined(self, i: int, j: int) -> bool:
        return i + j <= self.N

    def __repr__(self) -> str:
        return f"PolynomialWindow(N={self.N}, {self.field!r})"


def _defined(B, i: int, j: int) -> bool:
    f = getattr(B, "product_defined", None)
    return True if f is None else f(i, j)


@dataclass
class MeasuringWitness:
    pairing: BilinearPairing
    counterexample: Counterexample | None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def __bool__(self) -> bool:
        return self.ok


def _product_value(A: Algebra, B, table, coalgebra_left: bool, c: int, j: int, k: int) -> Vector:
    """``psi(c, e_j e_k)`` (or ``psi(e_j e_k, c)``) read from the table."""
    F = A.field
    acc = [F.zero] * A.dim
    for l, x in B.mult.pair(j, k):
        v = table[c][l] if coalgebra_left else table[l][c]
        acc = la.vadd(F, acc, la.vscale(F, x, v))
    return acc


def _unit_value(A: Algebra, B, table, coalgebra_left: bool, c: int) -> Vector:
    F = A.field
    acc = [F.zero] * A.dim
    for l, x in enumerate(B.unit):
        if x != 0:
            v = table[c][l] if coalgebra_left else table[l][c]
            acc = la.vadd(F, acc, la.vscale(F, x, v))
    return acc


def _check_side(psi: BilinearPairing, coalgebra_left: bool, labels: tuple[str, str]) -> Counterexample | None:
    """One measuring direction; ``labels`` name the product and unit conditions."""
    A = psi.target
    F = A.field
    C, B = (psi.left, psi.right) if coalgebra_left else (psi.right, psi.left)
    table = psi.table

    def val(c, b):
        return table[c][b] if coalgebra_left else table[b][c]

    for c in range(C.dim):
        for j in range(B.dim):
            for k in range(B.dim):
                if not _defined(B, j, k):
                    continue
                lhs = _product_value(A, B, table, coalgebra_left, c, j, k)
                rhs = [F.zero] * A.dim
                for c1, c2, x in C.basis_coproduct(c):
                    rhs = la.vadd(F, rhs, la.vscale(F, x, A.product(val(c1, j), val(c2, k))))
                if lhs != rhs:
                    idx = (c, j, k) if coalgebra_left else (j, k, c)
                    return Counterexample(labels[0], idx, tuple(lhs), tuple(rhs), F)
    for c in range(C.dim):
        lhs = _unit_value(A, B, table, coalgebra_left, c)
        rhs = la.vscale(F, C.counit[c], A.one)
        if lhs != rhs:
            return Counterexample(labels[1], (c,), tuple(lhs), tuple(rhs), F)
    return None


MEASURING_LABELS = ("psi(c, bb') = psi(c_1, b) psi(c_2, b')", "psi(c, 1) = eps(c)")
BIMEASURING_LABELS_N = ("psi(nm, t) = psi(n, t_1) psi(m, t_2)", "psi(1, t) = eps(t)")
BIMEASURING_LABELS_T = ("psi(n, ts) = psi(n_1, t) psi(n_2, s)", "psi(n, 1) = eps(n)")


def _has_product(c) -> bool:
    return isinstance(c, (Algebra, PolynomialWindow))


def _require(psi: BilinearPairing, both: bool) -> None:
    sides = (("left", psi.left), ("right", psi.right))
    for label, c in sides:
        if (both or label == "left") and not isinstance(c, Coalgebra):
            raise BimeasureError(f"{label} side of the pairing needs a coalgebra structure")
        if (both or label == "right") and not _has_product(c):
            raise BimeasureError(f"{label} side of the pairing needs an algebra structure")


def check_measuring(psi: BilinearPairing) -> MeasuringWitness:
    """``psi.left`` (a coalgebra) measures ``psi.right`` (an algebra) to ``psi.target``."""
    _require(psi, both=False)
    return MeasuringWitness(psi, _check_side(psi, True, MEASURING_LABELS))


def check_bimeasuring(psi: BilinearPairing) -> MeasuringWitness:
    """All four bimeasuring equations, N-side product first."""
    _require(psi, both=True)
    cx = _check_side(psi, False, BIMEASURING_LABELS_N) or _check_side(psi, True, BIMEASURING_LABELS_T)
    return MeasuringWitness(psi, cx)


# -- correspondences ----------------------------------------------------------

def psi_to_rho(psi: BilinearPairing) -> LinMap:
    """``rho: B -> Hom(C, A)``, ``rho(b)(c) = psi(c, b)``; ``Hom(C, A)`` flattened as ``c * dim A + a``."""
    C, B, A = psi.left, psi.right, psi.target
    F = A.field
    cols = []
    for b in range(B.dim):
        cols.append([x for c in range(C.dim) for x in psi.table[c][b]])
    return LinMap(F, la.from_columns(F, cols), B, None)


def rho_to_psi(rho: LinMap, C: Coalgebra, B, A: Algebra) -> BilinearPairing:
    table = []
    for c in range(C.dim):
        row = []
        for b in range(B.dim):
            col = rho.column(b)
            row.append(col[c * A.dim:(c + 1) * A.dim])
        table.append(row)
    return BilinearPairing(C, B, A, table)


def rho_value_as_map(rho: LinMap, b_vector: Sequence[Scalar], C: Coalgebra, A: Algebra) -> list:
    """``rho(b)`` as a ``dim A x dim C`` matrix."""
    flat = rho(b_vector)
    return [[flat[c * A.dim + a] for c in range(C.dim)] for a in range(A.dim)]


def check_rho_algebra_map(rho: LinMap, C: Coalgebra, B, A: Algebra) -> Counterexample | None:
    """``rho`` is a unital algebra map into the convolution algebra ``Hom(C, A)``."""
    F = A.field
    unit = convolution_unit(C, A)
    r1 = rho_value_as_map(rho, B.unit, C, A)
    if r1 != unit:
        return Counterexample("rho(1) = eta eps", (), tuple(sum(r1, [])), tuple(sum(unit, [])), F)
    for j in range(B.dim):
        for k in range(B.dim):
            if not _defined(B, j, k):
                continue
            prod = [F.zero] * B.dim
            for l, x in B.mult.pair(j, k):
                prod[l] = x
            lhs = rho_value_as_map(rho, prod, C, A)
            rhs = convolve(
                rho_value_as_map(rho, B.basis_vector(j), C, A), rho_value_as_map(rho, B.basis_vector(k), C, A), C, A
            )
            if lhs != rhs:
                return Counterexample("rho(bb') = rho(b) * rho(b')", (j, k), tuple(sum(lhs, [])), tuple(sum(rhs, [])), F)
    return None


def cocommutative_correspondence(psi: BilinearPairing) -> LinMap:
    """``chi = (1 (x) psi)(Delta (x) 1): C(x)B -> C(x)A``."""
    C, B, A = psi.left, psi.right, psi.target
    if not is_cocommutative(C):
        raise BimeasureError("C not cocommutative")
    F = A.field
    dC, dB, dA = C.dim, B.dim, A.dim
    m = la.zeros(F, dC * dA, dC * dB)
    for c in range(dC):
        for b in range(dB):
            col = c * dB + b
            for c1, c2, x in C.basis_coproduct(c):
                for a, v in enumerate(psi.table[c2][b]):
                    if v != 0:
                        m[c1 * dA + a][col] = F.add(m[c1 * dA + a][col], F.mul(x, v))
    return LinMap(F, m)


def chi_to_psi(chi: LinMap, C: Coalgebra, B, A: Algebra) -> BilinearPairing:
    """``psi = (eps (x) 1) chi``."""
    F = A.field
    dB, dA = B.dim, A.dim
    table = []
    for c in range(C.dim):
        row = []
        for b in range(dB):
            col = chi.column(c * dB + b)
            v = [F.zero] * dA
            for c1 in range(C.dim):
                e = C.counit[c1]
                if e != 0:
                    v = la.vadd(F, v, la.vscale(F, e, col[c1 * dA:(c1 + 1) * dA]))
            row.append(v)
        table.append(row)
    return BilinearPairing(C, B, A, table)


def check_chi(chi: LinMap, C: Coalgebra, B, A: Algebra) -> Counterexample | None:
    """``chi`` is left C-colinear, unital, and multiplicative over ``C``.

    Multiplicativity over ``C`` reads
    ``chi(c(x)bb') = c_1 (x) [(eps(x)1)chi(c_2(x)b)] [(eps(x)1)chi(c_3(x)b')]``.
    """
    F = A.field
    dC, dB, dA = C.dim, B.dim, A.dim
    psi = chi_to_psi(chi, C, B, A)
    for c in range(dC):
        for b in range(dB):
            col = chi.column(c * dB + b)
            # (Delta (x) 1) chi  vs  (1 (x) chi)(Delta (x) 1)
            lhs: dict = {}
            for c0 in range(dC):
                for a in range(dA):
                    v = col[c0 * dA + a]
                    if v == 0:
                        continue
                    for p, q, x in C.basis_coproduct(c0):
                        key = (p, q, a)
                        lhs[key] = F.add(lhs.get(key, F.zero), F.mul(v, x))
            rhs: dict = {}
            for c1, c2, x in C.basis_coproduct(c):
                inner = chi.column(c2 * dB + b)
                for q in range(dC):
                    for a in range(dA):
                        v = inner[q * dA + a]
                        if v != 0:
                            key = (c1, q, a)
                            rhs[key] = F.add(rhs.get(key, F.zero), F.mul(x, v))
            lhs = {k: v for k, v in lhs.items() if v != 0}
            rhs = {k: v for k, v in rhs.items() if v != 0}
            if lhs != rhs:
                return Counterexample("chi is C-colinear", (c, b), tuple(sorted(lhs.items())), tuple(sorted(rhs.items())))
    for c in range(dC):
        one = [F.zero] * (dC * dA)
        for a, u in enumerate(A.unit):
            one[c * dA + a] = u
        got = la.matvec(F, chi.matrix, la.vkron(F, la.unit_vector(F, dC, c), list(B.unit)))
        if got != one:
            return Counterexample("chi(c(x)1) = c(x)1", (c,), tuple(got), tuple(one), F)
    for c in range(dC):
        for j in range(dB):
            for k in range(dB):
                if not _defined(B, j, k):
                    continue
                prod = [F.zero] * dB
                for l, x in B.mult.pair(j, k):
                    prod[l] = x
                lhs = la.matvec(F, chi.matrix, la.vkron(F, la.unit_vector(F, dC, c), prod))
                rhs = [F.zero] * (dC * dA)
                for c1, rest, x in C.basis_coproduct(c):
                    for c2, c3, y in C.basis_coproduct(rest):
                        val = A.product(psi.table[c2][j], psi.table[c3][k])
                        w = F.mul(x, y)
                        for a, v in enumerate(val):
                            if v != 0:
                                rhs[c1 * dA + a] = F.add(rhs[c1 * dA + a], F.mul(w, v))
                if lhs != rhs:
                    return Counterexample("chi is multiplicative over C", (c, j, k), tuple(lhs), tuple(rhs), F)
    return None


# -- commutativity and factorization ------------------------------------------

def image_commutativity(psi: BilinearPairing) -> Counterexample | None:
    """The subalgebra generated by all values ``psi(e_i, e_j)`` is commutative."""
    A = psi.target
    F = A.field
    gens = [list(v) for row in psi.table for v in row]
    sub = subalgebra_closure(A, gens)
    basis = sub.vectors()
    for i, u in enumerate(basis):
        for j in range(i + 1, len(basis)):
            w = basis[j]
            l, r = A.product(u, w), A.product(w, u)
            if l != r:
                return Counterexample("image subalgebra is commutative", (i, j), tuple(l), tuple(r), F)
    return None


def image_subalgebra(psi: BilinearPairing) -> la.Subspace:
    return subalgebra_closure(psi.target, [list(v) for row in psi.table for v in row])


def factor_bimeasuring_through_ab(
    psi: BilinearPairing,
    pres: QuotientPresentation | None = None,
    left_pres: QuotientPresentation | None = None,
    two_sided: bool = False,
) -> BilinearPairing:
    """``psibar`` on ``N (x) T_ab`` (or ``N_ab (x) T_ab``) with ``psibar (1 (x) pi) = psi``.

    Raises :class:`DoesNotFactor` when ``psi`` does not vanish on the
    commutator ideal, which signals violated preconditions.
    """
    N, T, A = psi.left, psi.right, psi.target
    F = A.field
    pres = pres or abelianization(T)
    if two_sided:
        left_pres = left_pres or abelianization(N)
    for n in range(N.dim):
        for v in pres.ideal.vectors():
            val = psi.evaluate(N.basis_vector(n), v)
            if not la.is_zero(val):
                raise DoesNotFactor(f"psi(e_{n}, -) does not vanish on ideal of T")
    if two_sided:
        for t in range(T.dim):
            for v in left_pres.ideal.vectors():
                if not la.is_zero(psi.evaluate(v, T.basis_vector(t))):
                    raise DoesNotFactor(f"psi(-, e_{t}) does not vanish on ideal of N")
    left_reps = left_pres.representatives if two_sided else [N.basis_vector(n) for n in range(N.dim)]
    left = left_pres.quotient if two_sided else N
    table = [[psi.evaluate(r, s) for s in pres.representatives] for r in left_reps]
    out = BilinearPairing(left, pres.quotient, A, table)
    # psibar (pi (x) pi) = psi
    lp = left_pres.projection.matrix if two_sided else la.identity(F, N.dim)
    for n in range(N.dim):
        for t in range(T.dim):
            got = out.evaluate([row[n] for row in lp], pres.projection.column(t))
            if got != list(psi.table[n][t]):
                raise BimeasureError("factorization does not reproduce psi")
    return out


def compose_with_projection(psibar: BilinearPairing, pres: QuotientPresentation, T) -> BilinearPairing:
    """``psibar (1 (x) pi)`` as a pairing on ``N (x) T``."""
    N, A = psibar.left, psibar.target
    table = [
        [psibar.evaluate(N.basis_vector(n), pres.projection.column(t)) for t in range(T.dim)] for n in range(N.dim)
    ]
    return BilinearPairing(N, T, A, table)


def polynomial_bimeasuring(alpha: Sequence[Scalar], A: Algebra, window) -> BilinearPairing:
    """``psi(x^i, x^j) = delta_ij i! alpha^i`` on ``window (x) window``."""
    F = A.field
    d = window.dim
    if F.characteristic and F.characteristic < d:
        raise ValueError("need characteristic 0 or p larger than the top degree")
    zero = [F.zero] * A.dim
    table = []
    power = A.one
    for i in range(d):
        row = [list(zero) for _ in range(d)]
        row[i] = la.vscale(F, F.factorial(i), power)
        table.append(row)
        power = A.product(power, list(alpha))
    return BilinearPairing(window, window, A, table)


# -- enumeration ---------------------------------------------------------------

def _var_vector(F: Field, base: int, dA: int) -> list[Poly]:
    return [Poly.var(F, base + a) for a in range(dA)]


def _poly_product(A: Algebra, u: list[Poly], w: list[Poly]) -> list[Poly]:
    F = A.field
    out = [Poly(F) for _ in range(A.dim)]
    for (r, s, t), c in A.mult.entries.items():
        out[t] = out[t] + (u[r] * w[s]) * c
    return out


def _linear(F: Field, coeffs: Sequence[Scalar], vecs: Sequence[list[Poly]], dA: int) -> list[Poly]:
    out = [Poly(F) for _ in range(dA)]
    for c, v in zip(coeffs, vecs):
        if c != 0:
            out = [o + p * c for o, p in zip(out, v)]
    return out


def measuring_equations(left, right, A: Algebra, coalgebra_left: bool, system: PolynomialSystem) -> None:
    """Append the polynomial form of one measuring direction to ``system``.

    Unknowns are the table coordinates, indexed ``(i * dim right + j) * dim A + a``.
    """
    F = A.field
    dL, dR, dA = left.dim, right.dim, A.dim
    V = [[_var_vector(F, (i * dR + j) * dA, dA) for j in range(dR)] for i in range(dL)]
    C, B = (left, right) if coalgebra_left else (right, left)

    def val(c, b):
        return V[c][b] if coalgebra_left else V[b][c]

    for c in range(C.dim):
        for j in range(B.dim):
            for k in range(B.dim):
                if not _defined(B, j, k):
                    continue
                pr = B.mult.pair(j, k)
                lhs = _linear(F, [x for _, x in pr], [val(c, l) for l, _ in pr], dA)
                rhs = [Poly(F) for _ in range(dA)]
                for c1, c2, x in C.basis_coproduct(c):
                    prod = _poly_product(A, val(c1, j), val(c2, k))
                    rhs = [r + p * x for r, p in zip(rhs, prod)]
                for l_, r_ in zip(lhs, rhs):
                    system.add(l_ - r_)
        lhs = _linear(F, B.unit, [val(c, l) for l in range(B.dim)], dA)
        for a in range(dA):
            system.add(lhs[a] - Poly.const(F, F.mul(C.counit[c], A.unit[a])))


def _table_from_values(values: Sequence[Scalar], dL: int, dR: int, dA: int) -> list:
    return [[list(values[(i * dR + j) * dA:(i * dR + j + 1) * dA]) for j in range(dR)] for i in range(dL)]


def _raw_enumerate(left, right, A, check, budget: int) -> list[BilinearPairing]:
    F = A.field
    if not F.is_finite:
        raise BimeasureError("raw enumeration needs a finite field")
    n = left.dim * right.dim * A.dim
    if F.characteristic**n > budget:
        raise BudgetExceeded(f"{F.characteristic}^{n} candidate tables exceed budget {budget}")
    out = []
    for values in itertools.product(range(F.characteristic), repeat=n):
        psi = BilinearPairing(left, right, A, _table_from_values(values, left.dim, right.dim, A.dim))
        if check(psi):
            out.append(psi)
    return out


def _solve(left, right, A, directions: Sequence[bool], budget: int) -> list[BilinearPairing]:
    F = A.field
    system = PolynomialSystem(F, left.dim * right.dim * A.dim)
    for coalgebra_left in directions:
        measuring_equations(left, right, A, coalgebra_left, system)
    sols = system.solve(budget=budget)
    return [BilinearPairing(left, right, A, _table_from_values(s, left.dim, right.dim, A.dim)) for s in sols]


def _sorted(pairings: list[BilinearPairing]) -> list[BilinearPairing]:
    return sorted(pairings, key=lambda p: p.key())


def enumerate_measurings(C, B, A: Algebra, mode: str = "solver", budget: int = DEFAULT_BUDGET) -> list[BilinearPairing]:
    """All measurings ``C (x) B -> A`` over a finite field (or over Q when the roots are rational)."""
    if mode == "raw":
        return _sorted(_raw_enumerate(C, B, A, lambda p: check_measuring(p).ok, budget))
    return _sorted(_solve(C, B, A, (True,), budget))


def enumerate_bimeasurings(N, T, A: Algebra, mode: str = "solver", budget: int = DEFAULT_BUDGET) -> list[BilinearPairing]:
    """All bimeasurings ``N (x) T -> A``; ``mode`` is ``"solver"`` or ``"raw"`` (brute force)."""
    if mode == "raw":
        return _sorted(_raw_enumerate(N, T, A, lambda p: check_bimeasuring(p).ok, budget))
    return _sorted(_solve(N, T, A, (False, True), budget))
