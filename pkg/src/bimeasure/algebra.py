"""Structure-constant algebras, coalgebras, bialgebras and Hopf algebras.

Multiplication is a :class:`~bimeasure.linalg.Tensor3` with
``e_i e_j = sum_k mult[i, j, k] e_k``; comultiplication is a Tensor3 with
``Delta e_i = sum comult[i, j, k] e_j (x) e_k``.  Elements are dense
coordinate lists.  Elements of tensor powers are sparse dicts keyed by index
tuples, which is how Sweedler sums are contracted.
"""

from __future__ import annotations

from fractions import Fraction

from dataclasses import dataclass
from typing import Sequence

from . import linalg as la
from .errors import DimensionMismatch, NotInvertible, InconsistentSystem, ValidationError
from .field import Field, Scalar
from .linalg import Matrix, Tensor3, Vector


@dataclass(frozen=True)
class Counterexample:
    """First violated identity: axiom name, basis indices and both sides."""

    axiom: str
    indices: tuple
    lhs: tuple
    rhs: tuple
    field: Field | None = None

    def _fmt(self, v) -> str:
        if self.field is None:
            return str(list(v))
        return "[" + ", ".join(self.field.format(x) for x in v) + "]"

    def __str__(self) -> str:
        return f"{self.axiom} fails at {self.indices}: lhs={self._fmt(self.lhs)} rhs={self._fmt(self.rhs)}"

    def to_json(self) -> dict:
        fmt = self.field.format if self.field is not None else str
        return {
            "axiom": self.axiom,
            "indices": list(self.indices),
            "lhs": [fmt(x) for x in self.lhs],
            "rhs": [fmt(x) for x in self.rhs],
        }


def _dense(F: Field, d: dict, dims: Sequence[int]) -> tuple:
    """Flatten a sparse tensor-power element into a dense row-major tuple."""
    size = 1
    for n in dims:
        size *= n
    out = [F.zero] * size
    for key, c in d.items():
        idx = 0
        for k, n in zip(key, dims):
            idx = idx * n + k
        out[idx] = c
    return tuple(out)


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v != 0}


def _acc(F: Field, d: dict, key, c) -> None:
    if c != 0:
        d[key] = F.add(d.get(key, F.zero), c)


class _Carrier:
    field: Field
    dim: int
    names: list[str]

    def _default_names(self, names) -> list[str]:
        if names is None:
            return [f"e{i}" for i in range(self.dim)]
        if len(names) != self.dim:
            raise DimensionMismatch(f"{len(names)} basis names for dimension {self.dim}")
        return list(names)

    def basis_vector(self, i: int) -> Vector:
        return la.unit_vector(self.field, self.dim, i)

    def zero_vector(self) -> Vector:
        return [self.field.zero] * self.dim


class Algebra(_Carrier):
    """Finite-dimensional associative unital algebra."""

    def __init__(self, field: Field, mult: Tensor3, unit: Sequence[Scalar], names=None):
        self.field = field
        self.dim = len(unit)
        if mult.dims != (self.dim,) * 3:
            raise DimensionMismatch(f"mult dims {mult.dims} for dimension {self.dim}")
        self.mult = mult
        self.unit = tuple(field(c) for c in unit)
        self.names = self._default_names(names)

    @property
    def one(self) -> Vector:
        return list(self.unit)

    def basis_product(self, i: int, j: int) -> list[tuple[int, Scalar]]:
        return self.mult.pair(i, j)

    def product(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
        F = self.field
        acc = [0] * self.dim
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j, b in enumerate(y):
                if b == 0:
                    continue
                ab = a * b
                for k, c in self.mult.pair(i, j):
                    acc[k] += ab * c
        return [F(v) for v in acc]

    def left_multiplication(self, x: Sequence[Scalar]) -> Matrix:
        return la.from_columns(self.field, [self.product(x, self.basis_vector(j)) for j in range(self.dim)])

    def power(self, x: Sequence[Scalar], n: int) -> Vector:
        out = self.one
        for _ in range(n):
            out = self.product(out, x)
        return out

    def algebra_part(self) -> Algebra:
        return Algebra(self.field, self.mult, self.unit, self.names)


class Coalgebra(_Carrier):
    """Finite-dimensional coassociative counital coalgebra."""

    def __init__(self, field: Field, comult: Tensor3, counit: Sequence[Scalar], names=None):
        self.field = field
        self.dim = len(counit)
        if comult.dims != (self.dim,) * 3:
            raise DimensionMismatch(f"comult dims {comult.dims} for dimension {self.dim}")
        self.comult = comult
        self.counit = tuple(field(c) for c in counit)
        self.names = self._default_names(names)

    def basis_coproduct(self, i: int) -> list[tuple[int, int, Scalar]]:
        return self.comult.by_first[i]

    def coproduct(self, x: Sequence[Scalar]) -> dict:
        F = self.field
        out: dict = {}
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j, k, c in self.comult.by_first[i]:
                _acc(F, out, (j, k), F.mul(a, c))
        return _clean(out)

    def coproduct_matrix(self) -> Matrix:
        """``Delta`` as a ``dim^2 x dim`` matrix."""
        F, d = self.field, self.dim
        m = la.zeros(F, d * d, d)
        for (i, j, k), c in self.comult.entries.items():
            m[j * d + k][i] = c
        return m

    def apply_counit(self, x: Sequence[Scalar]) -> Scalar:
        F = self.field
        acc = F.zero
        for a, e in zip(x, self.counit):
            if a != 0 and e != 0:
                acc = F.add(acc, F.mul(a, e))
        return acc

    def coalgebra_part(self) -> Coalgebra:
        return Coalgebra(self.field, self.comult, self.counit, self.names)


class Bialgebra(Algebra, Coalgebra):
    def __init__(self, field, mult, unit, comult, counit, names=None):
        Algebra.__init__(self, field, mult, unit, names)
        if len(counit) != self.dim:
            raise DimensionMismatch("algebra and coalgebra dimensions differ")
        self.comult = comult
        self.counit = tuple(field(c) for c in counit)
        if comult.dims != (self.dim,) * 3:
            raise DimensionMismatch(f"comult dims {comult.dims} for dimension {self.dim}")

    def bialgebra_part(self) -> Bialgebra:
        return Bialgebra(self.field, self.mult, self.unit, self.comult, self.counit, self.names)


class HopfAlgebra(Bialgebra):
    def __init__(self, field, mult, unit, comult, counit, antipode: Matrix, names=None):
        super().__init__(field, mult, unit, comult, counit, names)
        if la.shape(antipode) != (self.dim, self.dim):
            raise DimensionMismatch("antipode shape")
        self.antipode = [[field(c) for c in row] for row in antipode]

    def apply_antipode(self, x: Sequence[Scalar]) -> Vector:
        return la.matvec(self.field, self.antipode, list(x))

    def antipode_of(self, i: int) -> Vector:
        return [row[i] for row in self.antipode]


def kind_of(c) -> str:
    if isinstance(c, HopfAlgebra):
        return "hopf"
    if isinstance(c, Bialgebra):
        return "bialgebra"
    if isinstance(c, Algebra):
        return "algebra"
    if isinstance(c, Coalgebra):
        return "coalgebra"
    raise TypeError(f"not a carrier: {type(c).__name__}")


def structure_tables(c) -> dict:
    """Exact structure data, for equality comparisons."""
    out: dict = {"dim": c.dim, "field": c.field}
    if isinstance(c, Algebra):
        out["mult"] = c.mult.entries
        out["unit"] = c.unit
    if isinstance(c, Coalgebra):
        out["comult"] = c.comult.entries
        out["counit"] = c.counit
    if isinstance(c, HopfAlgebra):
        out["antipode"] = c.antipode
    return out


# -- linear maps and pairings -----------------------------------------------

@dataclass
class LinMap:
    """A linear map given by its ``(target dim) x (source dim)`` matrix."""

    field: Field
    matrix: Matrix
    source: object = None
    target: object = None

    def __post_init__(self):
        rows, cols = la.shape(self.matrix)
        for carrier, n, what in ((self.source, cols, "source"), (self.target, rows, "target")):
            if carrier is not None and getattr(carrier, "dim", n) != n and rows:
                raise DimensionMismatch(f"{what} dimension {carrier.dim} vs matrix {rows}x{cols}")

    @property
    def shape(self) -> tuple[int, int]:
        return la.shape(self.matrix)

    def __call__(self, x: Sequence[Scalar]) -> Vector:
        return la.matvec(self.field, self.matrix, list(x))

    def compose(self, other: LinMap) -> LinMap:
        """``self o other``."""
        return LinMap(self.field, la.matmul(self.field, self.matrix, other.matrix), other.source, self.target)

    def column(self, j: int) -> Vector:
        return [row[j] for row in self.matrix]


class BilinearPairing:
    """``psi: X (x) Y -> A`` with ``table[i][j]`` the coordinates of ``psi(e_i, e_j)`` in ``A``."""

    def __init__(self, left, right, target: Algebra, table):
        self.left = left
        self.right = right
        self.target = target
        self.field = target.field
        F = self.field
        if len(table) != left.dim or any(len(row) != right.dim for row in table):
            raise DimensionMismatch(f"pairing table shape does not match {left.dim}x{right.dim}")
        self.table = [[tuple(F(c) for c in v) for v in row] for row in table]
        for row in self.table:
            for v in row:
                if len(v) != target.dim:
                    raise DimensionMismatch("pairing value has wrong target dimension")

    @classmethod
    def scalar(cls, left, right, target: Algebra, values) -> BilinearPairing:
        """Build from scalar values ``values[i][j]`` times ``1_A``."""
        F = target.field
        one = target.one
        return cls(left, right, target, [[[F.mul(F(v), u) for u in one] for v in row] for row in values])

    def __call__(self, i: int, j: int) -> Vector:
        return list(self.table[i][j])

    def evaluate(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
        F = self.field
        acc = [F.zero] * self.target.dim
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j, b in enumerate(y):
                if b == 0:
                    continue
                ab = F.mul(a, b)
                acc = [F.add(s, F.mul(ab, t)) for s, t in zip(acc, self.table[i][j])]
        return acc

    def key(self) -> tuple:
        return tuple(tuple(row) for row in self.table)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BilinearPairing) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"BilinearPairing({self.left.dim}x{self.right.dim} -> dim {self.target.dim})"


# -- validators ---------------------------------------------------------------

def validate_algebra(a: Algebra) -> Counterexample | None:
    F, d = a.field, a.dim
    one = a.one
    for i in range(d):
        ei = a.basis_vector(i)
        lhs, rhs = a.product(one, ei), a.product(ei, one)
        if lhs != ei:
            return Counterexample("left unit: 1*x = x", (i,), tuple(lhs), tuple(ei), F)
        if rhs != ei:
            return Counterexample("right unit: x*1 = x", (i,), tuple(rhs), tuple(ei), F)
    ints = _integer_pairs(a)
    p = F.characteristic
    for i in range(d):
        for j in range(d):
            ij = ints[i * d + j] if ints else a.mult.pair(i, j)
            for k in range(d):
                if ints:
                    lhs = _int_products(ints, ij, k, d, p, left=True)
                    rhs = _int_products(ints, ints[j * d + k], i, d, p, left=False)
                    if lhs == rhs:
                        continue
                    lhs = {q: F(c) for q, c in lhs.items()}
                    rhs = {q: F(c) for q, c in rhs.items()}
                else:
                    lhs = {}
                    for q0, c in ij:
                        for q, c2 in a.mult.pair(q0, k):
                            _acc(F, lhs, q, F.mul(c, c2))
                    rhs = {}
                    for q0, c in a.mult.pair(j, k):
                        for q, c2 in a.mult.pair(i, q0):
                            _acc(F, rhs, q, F.mul(c, c2))
                    lhs, rhs = _clean(lhs), _clean(rhs)
                if lhs != rhs:
                    return Counterexample(
                        "associativity: (xy)z = x(yz)", (i, j, k),
                        _dense(F, {(q,): c for q, c in lhs.items()}, (d,)),
                        _dense(F, {(q,): c for q, c in rhs.items()}, (d,)), F,
                    )
    return None


def _integer_pairs(a: Algebra) -> list | None:
    """Products ``e_i e_j`` as int lists when every constant is integral (fast exact path)."""
    d = a.dim
    out: list = [[] for _ in range(d * d)]
    for (i, j, k), c in a.mult.entries.items():
        if isinstance(c, Fraction):
            if c.denominator != 1:
                return None
            c = c.numerator
        out[i * d + j].append((k, c))
    return out


def _int_products(ints: list, terms, other: int, d: int, p: int, left: bool) -> dict:
    acc: dict = {}
    for q0, c in terms:
        for q, c2 in ints[q0 * d + other] if left else ints[other * d + q0]:
            acc[q] = acc.get(q, 0) + c * c2
    if p:
        return {q: c % p for q, c in acc.items() if c % p}
    return {q: c for q, c in acc.items() if c}


def validate_coalgebra(c: Coalgebra) -> Counterexample | None:
    F, d = c.field, c.dim
    for i in range(d):
        lhs: dict = {}
        rhs: dict = {}
        for j, k, a in c.basis_coproduct(i):
            for p, q, b in c.basis_coproduct(j):
                _acc(F, lhs, (p, q, k), F.mul(a, b))
            for p, q, b in c.basis_coproduct(k):
                _acc(F, rhs, (j, p, q), F.mul(a, b))
        lhs, rhs = _clean(lhs), _clean(rhs)
        if lhs != rhs:
            return Counterexample(
                "coassociativity: (D(x)1)D = (1(x)D)D", (i,), _dense(F, lhs, (d, d, d)), _dense(F, rhs, (d, d, d)), F
            )
    for i in range(d):
        left = [F.zero] * d
        right = [F.zero] * d
        for j, k, a in c.basis_coproduct(i):
            left[k] = F.add(left[k], F.mul(a, c.counit[j]))
            right[j] = F.add(right[j], F.mul(a, c.counit[k]))
        ei = c.basis_vector(i)
        if left != ei:
            return Counterexample("left counit: (eps(x)1)D = id", (i,), tuple(left), tuple(ei), F)
        if right != ei:
            return Counterexample("right counit: (1(x)eps)D = id", (i,), tuple(right), tuple(ei), F)
    return None


def _tensor_product_of_coproducts(b: Bialgebra, x: dict, y: dict) -> dict:
    """Product in ``B (x) B`` of two sparse elements."""
    F = b.field
    out: dict = {}
    for (p, q), c1 in x.items():
        for (r, s), c2 in y.items():
            c = F.mul(c1, c2)
            for u, a in b.mult.pair(p, r):
                for v, bb in b.mult.pair(q, s):
                    _acc(F, out, (u, v), F.mul(c, F.mul(a, bb)))
    return _clean(out)


def validate_bialgebra(b: Bialgebra) -> Counterexample | None:
    cx = validate_algebra(b) or validate_coalgebra(b)
    if cx:
        return cx
    F, d = b.field, b.dim
    one = b.one
    d_one = b.coproduct(one)
    one_one = {}
    for i, a in enumerate(one):
        for j, c in enumerate(one):
            _acc(F, one_one, (i, j), F.mul(a, c))
    one_one = _clean(one_one)
    if d_one != one_one:
        return Counterexample("unit is group-like: D(1) = 1(x)1", (), _dense(F, d_one, (d, d)), _dense(F, one_one, (d, d)), F)
    if b.apply_counit(one) != F.one:
        return Counterexample("eps(1) = 1", (), (b.apply_counit(one),), (F.one,), F)
    deltas = [b.coproduct(b.basis_vector(i)) for i in range(d)]
    for i in range(d):
        for j in range(d):
            prod = [F.zero] * d
            for k, c in b.mult.pair(i, j):
                prod[k] = c
            lhs = b.coproduct(prod)
            rhs = _tensor_product_of_coproducts(b, deltas[i], deltas[j])
            if lhs != rhs:
                return Counterexample(
                    "D is multiplicative: D(xy) = D(x)D(y)", (i, j), _dense(F, lhs, (d, d)), _dense(F, rhs, (d, d)), F
                )
            el = b.apply_counit(prod)
            er = F.mul(b.counit[i], b.counit[j])
            if el != er:
                return Counterexample("eps is multiplicative", (i, j), (el,), (er,), F)
    return None


def validate_hopf(h: HopfAlgebra) -> Counterexample | None:
    cx = validate_bialgebra(h)
    if cx:
        return cx
    F, d = h.field, h.dim
    for i in range(d):
        left = [F.zero] * d
        right = [F.zero] * d
        for j, k, a in h.basis_coproduct(i):
            sj, sk = h.antipode_of(j), h.antipode_of(k)
            left = la.vadd(F, left, la.vscale(F, a, h.product(sj, h.basis_vector(k))))
            right = la.vadd(F, right, la.vscale(F, a, h.product(h.basis_vector(j), sk)))
        expected = la.vscale(F, h.counit[i], h.one)
        if left != expected:
            return Counterexample("antipode: m(S(x)1)D = eta eps", (i,), tuple(left), tuple(expected), F)
        if right != expected:
            return Counterexample("antipode: m(1(x)S)D = eta eps", (i,), tuple(right), tuple(expected), F)
    return None


def validate(c) -> Counterexample | None:
    """Run every validator that applies to the carrier's kind."""
    if isinstance(c, HopfAlgebra):
        return validate_hopf(c)
    if isinstance(c, Bialgebra):
        return validate_bialgebra(c)
    if isinstance(c, Algebra):
        return validate_algebra(c)
    if isinstance(c, Coalgebra):
        return validate_coalgebra(c)
    raise TypeError(f"cannot validate {type(c).__name__}")


def validated(c):
    cx = validate(c)
    if cx is not None:
        raise ValidationError(cx)
    return c


# -- constructions ------------------------------------------------------------

def dual(c):
    """Linear dual with transposed structure (finite dimension, so ``B° = B*``)."""
    F, d = c.field, c.dim
    names = [f"{n}*" for n in c.names]
    mult = c.comult.permuted((1, 2, 0)) if isinstance(c, Coalgebra) else None
    comult = c.mult.permuted((2, 0, 1)) if isinstance(c, Algebra) else None
    if isinstance(c, HopfAlgebra):
        out = HopfAlgebra(F, mult, c.counit, comult, c.unit, la.transpose(c.antipode), names)
    elif isinstance(c, Bialgebra):
        out = Bialgebra(F, mult, c.counit, comult, c.unit, names)
    elif isinstance(c, Algebra):
        out = Coalgebra(F, comult, c.unit, names)
    elif isinstance(c, Coalgebra):
        out = Algebra(F, mult, c.counit, names)
    else:
        raise TypeError(f"cannot dualize {type(c).__name__}")
    return validated(out)


def opposite(a: Algebra) -> Algebra:
    out = a.algebra_part()
    out.mult = a.mult.permuted((1, 0, 2))
    return out


def coopposite(c: Coalgebra) -> Coalgebra:
    out = Coalgebra(c.field, c.comult.permuted((0, 2, 1)), c.counit, c.names)
    return out


def _tensor_mult(F, m1: Tensor3, m2: Tensor3, d2: int, dims) -> Tensor3:
    entries = []
    for (i, k, p), a in m1.entries.items():
        for (j, l, q), b in m2.entries.items():
            entries.append((i * d2 + j, k * d2 + l, p * d2 + q, F.mul(a, b)))
    return Tensor3(F, dims, entries)


def _tensor_comult(F, c1: Tensor3, c2: Tensor3, d2: int, dims) -> Tensor3:
    entries = []
    for (i, a1, b1), x in c1.entries.items():
        for (j, a2, b2), y in c2.entries.items():
            entries.append((i * d2 + j, a1 * d2 + a2, b1 * d2 + b2, F.mul(x, y)))
    return Tensor3(F, dims, entries)


def tensor_product(c1, c2):
    """Componentwise structure on ``c1 (x) c2`` under the row-major flattening."""
    if c1.field != c2.field:
        raise DimensionMismatch("tensor product over different fields")
    F = c1.field
    d1, d2 = c1.dim, c2.dim
    n = d1 * d2
    dims = (n, n, n)
    names = [f"{a}(x){b}" for a in c1.names for b in c2.names]
    has_alg = isinstance(c1, Algebra) and isinstance(c2, Algebra)
    has_co = isinstance(c1, Coalgebra) and isinstance(c2, Coalgebra)
    mult = _tensor_mult(F, c1.mult, c2.mult, d2, dims) if has_alg else None
    comult = _tensor_comult(F, c1.comult, c2.comult, d2, dims) if has_co else None
    unit = la.vkron(F, list(c1.unit), list(c2.unit)) if has_alg else None
    counit = la.vkron(F, list(c1.counit), list(c2.counit)) if has_co else None
    if isinstance(c1, HopfAlgebra) and isinstance(c2, HopfAlgebra):
        return HopfAlgebra(F, mult, unit, comult, counit, la.kronecker(F, c1.antipode, c2.antipode), names)
    if isinstance(c1, Bialgebra) and isinstance(c2, Bialgebra):
        return Bialgebra(F, mult, unit, comult, counit, names)
    if has_alg:
        return Algebra(F, mult, unit, names)
    if has_co:
        return Coalgebra(F, comult, counit, names)
    raise TypeError("tensor product needs two algebras or two coalgebras")


def tensor_bialgebra(b1: Bialgebra, b2: Bialgebra) -> Bialgebra:
    return validated(tensor_product(b1, b2))


# -- convolution ----------------------------------------------------------------

def convolve(f: Matrix, g: Matrix, C: Coalgebra, A: Algebra) -> Matrix:
    """``(f * g)(c) = f(c_1) g(c_2)`` for ``f, g: C -> A`` given as ``dim A x dim C`` matrices."""
    F = A.field
    if la.shape(f) != (A.dim, C.dim) or la.shape(g) != (A.dim, C.dim):
        raise DimensionMismatch("convolution operands must be dim A x dim C")
    fcols, gcols = la.columns(f), la.columns(g)
    out_cols = []
    for i in range(C.dim):
        acc = [F.zero] * A.dim
        for j, k, c in C.basis_coproduct(i):
            acc = la.vadd(F, acc, la.vscale(F, c, A.product(fcols[j], gcols[k])))
        out_cols.append(acc)
    return la.from_columns(F, out_cols) if out_cols else la.zeros(F, A.dim, 0)


def convolution_unit(C: Coalgebra, A: Algebra) -> Matrix:
    """``eta_A eps_C``."""
    F = A.field
    return [[F.mul(u, e) for e in C.counit] for u in A.unit]


def left_convolution_operator(f: Matrix, C: Coalgebra, A: Algebra) -> Matrix:
    """Matrix of ``g -> f * g`` on ``Hom(C, A)``, maps flattened row-major as ``g[a][c] -> a*dim C + c``."""
    F = A.field
    dA, dC = A.dim, C.dim
    fcols = la.columns(f)
    op = la.zeros(F, dA * dC, dA * dC)
    for i in range(dC):
        for j, k, c in C.basis_coproduct(i):
            for a in range(dA):
                prod = A.product(fcols[j], A.basis_vector(a))
                for b, v in enumerate(prod):
                    if v != 0:
                        op[b * dC + i][a * dC + k] = F.add(op[b * dC + i][a * dC + k], F.mul(c, v))
    return op


def convolution_inverse(f: Matrix, C: Coalgebra, A: Algebra) -> Matrix:
    """Two-sided convolution inverse; raises :class:`NotInvertible`."""
    F = A.field
    dA, dC = A.dim, C.dim
    unit = convolution_unit(C, A)
    rhs = [unit[a][c] for a in range(dA) for c in range(dC)]
    try:
        x, ker = la.solve_linear(F, left_convolution_operator(f, C, A), rhs)
    except InconsistentSystem:
        raise NotInvertible("f * g = eta eps has no solution") from None
    if ker:
        raise NotInvertible("left convolution by f is not injective")
    g = [x[a * dC:(a + 1) * dC] for a in range(dA)]
    if convolve(g, f, C, A) != unit:
        raise NotInvertible("left inverse is not a right inverse")
    return g


def solve_antipode(b: Bialgebra) -> Matrix:
    """Convolution inverse of the identity, i.e. the antipode if one exists."""
    return convolution_inverse(la.identity(b.field, b.dim), b, b)


def is_commutative(a: Algebra) -> bool:
    return all(
        a.mult.pair(i, j) == a.mult.pair(j, i) for i in range(a.dim) for j in range(i + 1, a.dim)
    )


def is_cocommutative(c: Coalgebra) -> bool:
    e = c.comult.entries
    return all(e.get((i, k, j)) == v for (i, j, k), v in e.items())


# -- morphisms ----------------------------------------------------------------

def check_algebra_map(f: Matrix, src: Algebra, dst: Algebra) -> Counterexample | None:
    F = src.field
    cols = la.columns(f)
    img1 = la.matvec(F, f, src.one)
    if img1 != dst.one:
        return Counterexample("f(1) = 1", (), tuple(img1), tuple(dst.one), F)
    for i in range(src.dim):
        for j in range(src.dim):
            prod = [F.zero] * src.dim
            for k, c in src.mult.pair(i, j):
                prod[k] = c
            lhs = la.matvec(F, f, prod)
            rhs = dst.product(cols[i], cols[j])
            if lhs != rhs:
                return Counterexample("f(xy) = f(x)f(y)", (i, j), tuple(lhs), tuple(rhs), F)
    return None


def check_coalgebra_map(f: Matrix, src: Coalgebra, dst: Coalgebra) -> Counterexample | None:
    F = src.field
    cols = la.columns(f)
    for i in range(src.dim):
        lhs = dst.coproduct(cols[i])
        rhs: dict = {}
        for j, k, c in src.basis_coproduct(i):
            for p, x in enumerate(cols[j]):
                if x == 0:
                    continue
                for q, y in enumerate(cols[k]):
                    if y != 0:
                        _acc(F, rhs, (p, q), F.mul(c, F.mul(x, y)))
        rhs = _clean(rhs)
        if lhs != rhs:
            d = dst.dim
            return Counterexample("D f = (f(x)f) D", (i,), _dense(F, lhs, (d, d)), _dense(F, rhs, (d, d)), F)
        el, er = dst.apply_counit(cols[i]), src.counit[i]
        if el != er:
            return Counterexample("eps f = eps", (i,), (el,), (er,), F)
    return None


def check_bialgebra_map(f: Matrix, src: Bialgebra, dst: Bialgebra) -> Counterexample | None:
    if la.shape(f) != (dst.dim, src.dim):
        raise DimensionMismatch(f"map shape {la.shape(f)} vs {dst.dim}x{src.dim}")
    return check_algebra_map(f, src, dst) or check_coalgebra_map(f, src, dst)


def is_isomorphism(f: Matrix, src, dst) -> bool:
    """Bijective structure-preserving map (algebra and/or coalgebra parts as applicable)."""
    if la.shape(f) != (dst.dim, src.dim) or src.dim != dst.dim:
        return False
    if la.rank(src.field, f) != src.dim:
        return False
    if isinstance(src, Algebra) and check_algebra_map(f, src, dst):
        return False
    if isinstance(src, Coalgebra) and check_coalgebra_map(f, src, dst):
        return False
    if isinstance(src, HopfAlgebra) and isinstance(dst, HopfAlgebra):
        F = src.field
        if la.matmul(F, f, src.antipode) != la.matmul(F, dst.antipode, f):
            return False
    return True


def permutation_matrix(F: Field, perm: Sequence[int]) -> Matrix:
    """Matrix sending ``e_i`` to ``e_{perm[i]}``."""
    m = la.zeros(F, len(perm), len(perm))
    for i, p in enumerate(perm):
        m[p][i] = F.one
    return m
