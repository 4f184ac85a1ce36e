"""Exact dense linear algebra, sparse order-3 tensors and canonical subspaces.

Matrices are lists of rows of field elements.  A matrix representing a linear
map ``X -> Y`` has shape ``(dim Y, dim X)``; column ``j`` is the image of the
``j``-th basis vector.  Tensor products ``X (x) Y`` are flattened row-major,
``(i, j) -> i * dim(Y) + j``, everywhere in the package.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DimensionMismatch, InconsistentSystem
from .field import Field, Scalar

Matrix = list  # list[list[Scalar]]
Vector = list  # list[Scalar]


# -- flattening ---------------------------------------------------------------

def flatten(i: int, j: int, d2: int) -> int:
    return i * d2 + j


def unflatten(index: int, d2: int) -> tuple[int, int]:
    return divmod(index, d2)


# -- constructors -------------------------------------------------------------

def zeros(F: Field, rows: int, cols: int) -> Matrix:
    z = F.zero
    return [[z] * cols for _ in range(rows)]


def identity(F: Field, n: int) -> Matrix:
    m = zeros(F, n, n)
    for i in range(n):
        m[i][i] = F.one
    return m


def unit_vector(F: Field, n: int, i: int) -> Vector:
    v = [F.zero] * n
    v[i] = F.one
    return v


def from_columns(F: Field, columns: Sequence[Vector], rows: int | None = None) -> Matrix:
    if not columns:
        return [[] for _ in range(rows or 0)]
    n = len(columns[0])
    return [[col[r] for col in columns] for r in range(n)]


def columns(m: Matrix) -> list[Vector]:
    if not m:
        return []
    return [[row[j] for row in m] for j in range(len(m[0]))]


def shape(m: Matrix) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


# -- arithmetic ---------------------------------------------------------------

def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)] if m and m[0] else []


def matmul(F: Field, a: Matrix, b: Matrix) -> Matrix:
    ra, ca = len(a), (len(a[0]) if a else 0)
    rb = len(b)
    if ca != rb:
        raise DimensionMismatch(f"matmul {ra}x{ca} by {rb}x{len(b[0]) if b else 0}")
    cb = len(b[0]) if b else 0
    out = zeros(F, ra, cb)
    for i in range(ra):
        row = a[i]
        acc = [0] * cb
        for k in range(ca):
            x = row[k]
            if x == 0:
                continue
            bk = b[k]
            for j in range(cb):
                y = bk[j]
                if y != 0:
                    acc[j] += x * y
        out[i] = [F(v) for v in acc]
    return out


def matvec(F: Field, a: Matrix, v: Vector) -> Vector:
    if a and len(a[0]) != len(v):
        raise DimensionMismatch(f"matvec {len(a)}x{len(a[0])} by {len(v)}")
    out = []
    for row in a:
        acc = 0
        for x, y in zip(row, v):
            if x != 0 and y != 0:
                acc += x * y
        out.append(F(acc))
    return out


def add(F: Field, a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise DimensionMismatch("matrix add")
    return [[F.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(F: Field, a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise DimensionMismatch("matrix sub")
    return [[F.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(F: Field, c: Scalar, a: Matrix) -> Matrix:
    return [[F.mul(c, x) for x in row] for row in a]


def vadd(F: Field, u: Vector, v: Vector) -> Vector:
    return [F.add(x, y) for x, y in zip(u, v)]


def vsub(F: Field, u: Vector, v: Vector) -> Vector:
    return [F.sub(x, y) for x, y in zip(u, v)]


def vscale(F: Field, c: Scalar, v: Vector) -> Vector:
    return [F.mul(c, x) for x in v]


def is_zero(v: Iterable) -> bool:
    return all(x == 0 for x in v)


def kronecker(F: Field, a: Matrix, b: Matrix) -> Matrix:
    """``(a (x) b)[(i,j),(k,l)] = a[i][k] * b[j][l]`` under row-major flattening."""
    ra, ca = shape(a)
    rb, cb = shape(b)
    out = zeros(F, ra * rb, ca * cb)
    for i in range(ra):
        for k in range(ca):
            x = a[i][k]
            if x == 0:
                continue
            for j in range(rb):
                row = out[i * rb + j]
                bj = b[j]
                for l in range(cb):
                    if bj[l] != 0:
                        row[k * cb + l] = F.mul(x, bj[l])
    return out


def vkron(F: Field, u: Vector, v: Vector) -> Vector:
    return [F.mul(x, y) for x in u for y in v]


# -- elimination --------------------------------------------------------------

def rref_with_pivots(F: Field, m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form (zero rows kept at the bottom) and pivot columns."""
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = F.inv(a[r][c])
        a[r] = [F.mul(inv, x) for x in a[r]]
        pr = a[r]
        for i in range(rows):
            if i != r:
                f = a[i][c]
                if f != 0:
                    a[i] = [F.sub(x, F.mul(f, y)) if y != 0 else x for x, y in zip(a[i], pr)]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(F: Field, m: Matrix) -> Matrix:
    return rref_with_pivots(F, m)[0]


def rank(F: Field, m: Matrix) -> int:
    return len(rref_with_pivots(F, m)[1])


def kernel(F: Field, m: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    cols = len(m[0]) if m and m[0] else (ncols or 0)
    if not m:
        return [unit_vector(F, cols, j) for j in range(cols)]
    r, pivots = rref_with_pivots(F, m)
    pivset = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivset:
            continue
        v = [F.zero] * cols
        v[free] = F.one
        for row, pc in zip(r, pivots):
            if row[free] != 0:
                v[pc] = F.neg(row[free])
        basis.append(v)
    return basis


def solve_linear(F: Field, a: Matrix, b: Vector | Matrix) -> tuple[Vector, list[Vector]]:
    """Solve ``a x = b``; returns a particular solution and a kernel basis.

    ``b`` may be a vector or a one-column matrix.  Raises
    :class:`InconsistentSystem` when there is no solution.
    """
    if b and isinstance(b[0], list):
        b = [row[0] for row in b]
    rows = len(a)
    if rows != len(b):
        raise DimensionMismatch(f"system has {rows} rows but rhs has {len(b)}")
    cols = len(a[0]) if rows else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    r, pivots = rref_with_pivots(F, aug)
    if cols in pivots:
        raise InconsistentSystem("no solution")
    x = [F.zero] * cols
    for row, pc in zip(r, pivots):
        x[pc] = row[cols]
    return x, kernel(F, a, cols)


def inverse(F: Field, m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(row) + e for row, e in zip(m, identity(F, n))]
    r, pivots = rref_with_pivots(F, aug)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        from .errors import NotInvertible

        raise NotInvertible("singular matrix")
    return [row[n:] for row in r]


# -- subspaces ----------------------------------------------------------------

class Subspace:
    """A subspace of ``F^n`` held by its canonical reduced row-echelon basis.

    Equality is equality of canonical bases, so it is decidable exactly.
    """

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field: Field, ambient: int, vectors: Iterable[Vector] = ()):
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient {ambient}")
        self.field = field
        self.ambient = ambient
        if vectors:
            r, piv = rref_with_pivots(field, vectors)
            self.basis = [tuple(row) for row in r[: len(piv)]]
            self.pivots = tuple(piv)
        else:
            self.basis = []
            self.pivots = ()

    @classmethod
    def full(cls, field: Field, n: int) -> Subspace:
        return cls(field, n, identity(field, n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subspace)
            and other.ambient == self.ambient
            and other.basis == self.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient, tuple(self.basis)))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def vectors(self) -> list[Vector]:
        return [list(v) for v in self.basis]

    def _check(self, other: Subspace) -> None:
        if other.ambient != self.ambient:
            raise DimensionMismatch(f"ambient {self.ambient} vs {other.ambient}")

    def reduce(self, v: Sequence[Scalar]) -> Vector:
        """Normal form of ``v`` modulo this subspace (zero on pivot columns)."""
        F = self.field
        out = list(v)
        for row, pc in zip(self.basis, self.pivots):
            c = out[pc]
            if c != 0:
                out = [F.sub(x, F.mul(c, y)) if y != 0 else x for x, y in zip(out, row)]
        return out

    def contains(self, v: Sequence[Scalar]) -> bool:
        return is_zero(self.reduce(v))

    def contains_subspace(self, other: Subspace) -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, v: Sequence[Scalar]) -> Vector:
        """Coordinates of ``v`` in the canonical basis; ``ValueError`` if ``v`` is outside."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return [v[pc] for pc in self.pivots]

    def sum(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace(self.field, self.ambient, self.vectors() + other.vectors())

    def intersect(self, other: Subspace) -> Subspace:
        self._check(other)
        F = self.field
        if not self.basis or not other.basis:
            return Subspace(F, self.ambient)
        # x in U, y in V with sum_i a_i u_i = sum_j b_j v_j
        u, v = self.vectors(), other.vectors()
        system = transpose(u + [vscale(F, F.neg(F.one), w) for w in v])
        out = []
        for sol in kernel(F, system, len(u) + len(v)):
            w = [F.zero] * self.ambient
            for coeff, vec in zip(sol[: len(u)], u):
                if coeff != 0:
                    w = vadd(F, w, vscale(F, coeff, vec))
            out.append(w)
        return Subspace(F, self.ambient, out)

    def perp(self, pairing: Matrix | None = None) -> Subspace:
        """``{y : <x, y> = 0 for all x in self}`` where ``<x, y> = x^T P y``.

        ``pairing`` defaults to the dot product.  The result lives in the
        ambient space of the second argument of the pairing.
        """
        F = self.field
        if pairing is None:
            rows = self.vectors()
            n = self.ambient
        else:
            rows = [matvec(F, transpose(pairing), list(x)) for x in self.basis]
            n = len(pairing[0])
        if not rows:
            return Subspace.full(F, n)
        return Subspace(F, n, kernel(F, rows, n))

    def complement_indices(self) -> list[int]:
        """Non-pivot coordinates; the standard vectors there are coset representatives."""
        pivset = set(self.pivots)
        return [j for j in range(self.ambient) if j not in pivset]

    def quotient_basis(self, within: Subspace | None = None) -> list[Vector]:
        """Representatives of a basis of ``within / self`` (``within`` defaults to the ambient)."""
        F = self.field
        if within is None:
            return [unit_vector(F, self.ambient, j) for j in self.complement_indices()]
        self._check(within)
        if not within.contains_subspace(self):
            raise ValueError("subspace is not contained in the enclosing space")
        reps: list[Vector] = []
        current = Subspace(F, self.ambient, self.vectors())
        for v in within.basis:
            if not current.contains(v):
                reps.append(list(v))
                current = current.sum(Subspace(F, self.ambient, [v]))
        return reps


def column_space(F: Field, m: Matrix) -> Subspace:
    return Subspace(F, len(m), columns(m))


# -- sparse order-3 tensors -------------------------------------------------

class Tensor3:
    """Sparse coefficient tensor ``(i, j, k) -> c`` with fixed dims.

    Zero entries are dropped and duplicate keys are summed on construction.
    Row views ``by_first[i]`` and ``by_pair[(i, j)]`` are precomputed.
    """

    __slots__ = ("field", "dims", "entries", "by_first", "by_pair")

    def __init__(self, field: Field, dims: tuple[int, int, int], entries: Iterable = ()):
        self.field = field
        self.dims = tuple(dims)
        acc: dict[tuple[int, int, int], Scalar] = {}
        if isinstance(entries, dict):
            entries = ((i, j, k, c) for (i, j, k), c in entries.items())
        d1, d2, d3 = self.dims
        for i, j, k, c in entries:
            if not (0 <= i < d1 and 0 <= j < d2 and 0 <= k < d3):
                raise IndexError(f"index {(i, j, k)} outside dims {self.dims}")
            key = (i, j, k)
            acc[key] = field.add(acc.get(key, field.zero), field(c))
        self.entries = {key: c for key, c in sorted(acc.items()) if c != 0}
        self.by_first: list[list[tuple[int, int, Scalar]]] = [[] for _ in range(d1)]
        self.by_pair: dict[tuple[int, int], list[tuple[int, Scalar]]] = {}
        for (i, j, k), c in self.entries.items():
            self.by_first[i].append((j, k, c))
            self.by_pair.setdefault((i, j), []).append((k, c))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Tensor3) and self.dims == other.dims and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.dims, tuple(self.entries.items())))

    def __repr__(self) -> str:
        return f"Tensor3(dims={self.dims}, nnz={len(self.entries)})"

    def get(self, i: int, j: int, k: int) -> Scalar:
        return self.entries.get((i, j, k), self.field.zero)

    def pair(self, i: int, j: int) -> list[tuple[int, Scalar]]:
        return self.by_pair.get((i, j), [])

    def permuted(self, order: tuple[int, int, int]) -> Tensor3:
        """Reindex so that new index position ``p`` holds old index ``order[p]``."""
        dims = tuple(self.dims[o] for o in order)
        return Tensor3(
            self.field, dims, ((key[order[0]], key[order[1]], key[order[2]], c) for key, c in self.entries.items())
        )

    def to_list(self) -> list[tuple[int, int, int, Scalar]]:
        return [(i, j, k, c) for (i, j, k), c in self.entries.items()]


class EchelonBuilder:
    """Incrementally grown span, kept in (non-reduced) row-echelon form.

    ``add`` returns the reduced remainder when the vector enlarges the span,
    else ``None``.  Used by fixpoint closures where vectors arrive one at a time.
    """

    def __init__(self, field: Field, ambient: int):
        self.field = field
        self.ambient = ambient
        self.rows: dict[int, list] = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[Scalar]) -> list:
        F = self.field
        out = list(v)
        for p in sorted(self.rows):
            c = out[p]
            if c != 0:
                row = self.rows[p]
                for j in range(p, self.ambient):
                    if row[j] != 0:
                        out[j] = F.sub(out[j], F.mul(c, row[j]))
        return out

    def add(self, v: Sequence[Scalar]) -> list | None:
        F = self.field
        r = self.reduce(v)
        lead = next((j for j, x in enumerate(r) if x != 0), None)
        if lead is None:
            return None
        inv = F.inv(r[lead])
        r = [F.mul(inv, x) for x in r]
        self.rows[lead] = r
        return r

    def subspace(self) -> Subspace:
        return Subspace(self.field, self.ambient, list(self.rows.values()))
