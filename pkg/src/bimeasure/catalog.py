"""Deterministic constructors for the example carriers."""

from __future__ import annotations

from itertools import permutations
from math import comb
from typing import Callable, Sequence

from . import linalg as la
from .algebra import Algebra, HopfAlgebra, dual, validated
from .field import Field
from .linalg import Tensor3


class GroupTable:
    """A finite group as a multiplication table on ``0..n-1``."""

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None, name: str = "G"):
        self.table = [list(row) for row in table]
        self.order = len(self.table)
        self.names = list(names) if names else [f"g{i}" for i in range(self.order)]
        self.name = name
        n = self.order
        if any(len(row) != n or any(not 0 <= x < n for x in row) for row in self.table):
            raise ValueError("group table must be square with entries in range")
        ident = [e for e in range(n) if all(self.table[e][g] == g and self.table[g][e] == g for g in range(n))]
        if len(ident) != 1:
            raise ValueError("group table has no two-sided identity")
        self.identity = ident[0]
        self.inverse = []
        for g in range(n):
            inv = [h for h in range(n) if self.table[g][h] == self.identity]
            if len(inv) != 1 or self.table[inv[0]][g] != self.identity:
                raise ValueError(f"element {g} has no two-sided inverse")
            self.inverse.append(inv[0])
        t = self.table
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if t[t[a][b]][c] != t[a][t[b][c]]:
                        raise ValueError(f"group table not associative at {(a, b, c)}")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def __repr__(self) -> str:
        return f"GroupTable({self.name}, order={self.order})"

    @classmethod
    def from_elements(cls, elements: Sequence, op: Callable, names=None, name="G") -> GroupTable:
        index = {e: i for i, e in enumerate(elements)}
        table = [[index[op(a, b)] for b in elements] for a in elements]
        return cls(table, names, name)


def cyclic_group(n: int) -> GroupTable:
    names = ["1"] + [f"g^{i}" if i > 1 else "g" for i in range(1, n)]
    return GroupTable([[(i + j) % n for j in range(n)] for i in range(n)], names, f"C{n}")


def _compose(p, q):
    """``(p q)(x) = p(q(x))``."""
    return tuple(p[q[x]] for x in range(len(q)))


def symmetric_group_s3() -> GroupTable:
    """S3 with elements ``r^i s^j`` (``r`` a 3-cycle, ``s`` a transposition) at index ``2i + j``."""
    e = (0, 1, 2)
    r = (1, 2, 0)
    s = (0, 2, 1)
    r2 = _compose(r, r)
    rs = [e, r, r2]
    elements = [_compose(rs[i], s) if j else rs[i] for i in range(3) for j in range(2)]
    names = ["1", "s", "r", "rs", "r^2", "r^2s"]
    return GroupTable.from_elements(elements, _compose, names, "S3")


def alternating_group_a5() -> GroupTable:
    def parity(p):
        inv = sum(1 for i in range(5) for j in range(i + 1, 5) if p[i] > p[j])
        return inv % 2

    elements = [p for p in permutations(range(5)) if parity(p) == 0]
    names = ["".join(map(str, p)) for p in elements]
    return GroupTable.from_elements(elements, _compose, names, "A5")


def group_algebra(G: GroupTable, F: Field) -> HopfAlgebra:
    n = G.order
    mult = Tensor3(F, (n, n, n), [(a, b, G.mul(a, b), 1) for a in range(n) for b in range(n)])
    comult = Tensor3(F, (n, n, n), [(g, g, g, 1) for g in range(n)])
    unit = la.unit_vector(F, n, G.identity)
    antipode = la.zeros(F, n, n)
    for g in range(n):
        antipode[G.inverse[g]][g] = F.one
    return validated(HopfAlgebra(F, mult, unit, comult, [1] * n, antipode, G.names))


def dual_group_algebra(G: GroupTable, F: Field) -> HopfAlgebra:
    h = dual(group_algebra(G, F))
    h.names = [f"d_{n}" for n in G.names]
    return h


def sweedler_h4(F: Field) -> HopfAlgebra:
    """Sweedler's 4-dimensional Hopf algebra on ``1, g, x, gx``."""
    if F.characteristic == 2:
        raise ValueError("Sweedler's H4 needs characteristic != 2")
    one, g, x, gx = range(4)
    m = -1
    mult = [
        (one, one, one, 1), (one, g, g, 1), (one, x, x, 1), (one, gx, gx, 1),
        (g, one, g, 1), (g, g, one, 1), (g, x, gx, 1), (g, gx, x, 1),
        (x, one, x, 1), (x, g, gx, m),
        (gx, one, gx, 1), (gx, g, x, m),
    ]
    comult = [
        (one, one, one, 1),
        (g, g, g, 1),
        (x, x, one, 1), (x, g, x, 1),
        (gx, gx, g, 1), (gx, one, gx, 1),
    ]
    antipode = la.zeros(F, 4, 4)
    antipode[one][one] = F.one
    antipode[g][g] = F.one
    antipode[gx][x] = F(-1)
    antipode[x][gx] = F.one
    return validated(
        HopfAlgebra(F, Tensor3(F, (4,) * 3, mult), [1, 0, 0, 0], Tensor3(F, (4,) * 3, comult), [1, 1, 0, 0],
                    antipode, ["1", "g", "x", "gx"])
    )


def _poly_names(n: int) -> list[str]:
    return ["1", "x"] + [f"x^{i}" for i in range(2, n)]


def truncated_poly_hopf(p: int) -> HopfAlgebra:
    """``F_p[x]/(x^p)`` with ``x`` primitive."""
    F = Field.prime(p)
    mult = [(i, j, i + j, 1) for i in range(p) for j in range(p) if i + j < p]
    comult = [(n, k, n - k, comb(n, k)) for n in range(p) for k in range(n + 1)]
    antipode = la.zeros(F, p, p)
    for i in range(p):
        antipode[i][i] = F((-1) ** i)
    return validated(
        HopfAlgebra(F, Tensor3(F, (p,) * 3, mult), la.unit_vector(F, p, 0), Tensor3(F, (p,) * 3, comult),
                    la.unit_vector(F, p, 0), antipode, _poly_names(p))
    )


def poly_window(N: int, F: Field):
    from .measuring import PolynomialWindow

    return PolynomialWindow(N, F)


def ground_field(F: Field) -> HopfAlgebra:
    one = Tensor3(F, (1, 1, 1), [(0, 0, 0, 1)])
    return HopfAlgebra(F, one, [1], one, [1], [[F.one]], ["1"])


def matrix_algebra(n: int, F: Field) -> Algebra:
    """``M_n(k)`` on matrix units ``e_ij`` at index ``i*n + j``."""
    entries = [(i * n + j, j * n + l, i * n + l, 1) for i in range(n) for j in range(n) for l in range(n)]
    unit = [F.one if i == j else F.zero for i in range(n) for j in range(n)]
    names = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return validated(Algebra(F, Tensor3(F, (n * n,) * 3, entries), unit, names))


def dual_numbers(F: Field) -> Algebra:
    """``k[y]/(y^2)``."""
    return validated(Algebra(F, Tensor3(F, (2,) * 3, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]), [1, 0], ["1", "y"]))


def split_idempotent(F: Field) -> Algebra:
    """``k[y]/(y^2 - y)``."""
    return validated(
        Algebra(F, Tensor3(F, (2,) * 3, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 1, 1)]), [1, 0], ["1", "y"])
    )


def small_commutative_targets(F: Field) -> list[Algebra]:
    return [ground_field(F).algebra_part(), dual_numbers(F), split_idempotent(F)]


def s3_matched_pair(F: Field):
    """``N = kC2`` acting on ``T = kC3`` by conjugation, trivial back action."""
    from .matched_pair import from_group_factorization

    G = symmetric_group_s3()
    return from_group_factorization(G, [0, 2, 4], [0, 1], F)


def c6_matched_pair(F: Field):
    from .matched_pair import from_group_factorization

    G = cyclic_group(6)
    return from_group_factorization(G, [0, 2, 4], [0, 3], F)


def perfect_group_algebra(F: Field) -> HopfAlgebra:
    return group_algebra(alternating_group_a5(), F)


def _kS3(F):
    return group_algebra(symmetric_group_s3(), F)


CARRIERS: dict[str, Callable[[Field], object]] = {
    "k": ground_field,
    "kC2": lambda F: group_algebra(cyclic_group(2), F),
    "kC3": lambda F: group_algebra(cyclic_group(3), F),
    "kC6": lambda F: group_algebra(cyclic_group(6), F),
    "kS3": _kS3,
    "kA5": perfect_group_algebra,
    "kC2*": lambda F: dual_group_algebra(cyclic_group(2), F),
    "kC3*": lambda F: dual_group_algebra(cyclic_group(3), F),
    "kS3*": lambda F: dual_group_algebra(symmetric_group_s3(), F),
    "H4": sweedler_h4,
    "M2": lambda F: matrix_algebra(2, F),
    "k[y]/(y^2)": dual_numbers,
    "k[y]/(y^2-y)": split_idempotent,
}

MATCHED_PAIRS: dict[str, Callable[[Field], object]] = {
    "s3_pair": s3_matched_pair,
    "c6_pair": c6_matched_pair,
}


def names() -> list[str]:
    return sorted(CARRIERS) + ["trunc"] + sorted(MATCHED_PAIRS)


def get(name: str, F: Field):
    """Catalog lookup by name; ``trunc`` is ``F_p[x]/(x^p)`` and needs a prime field."""
    if name in CARRIERS:
        return CARRIERS[name](F)
    if name in MATCHED_PAIRS:
        return MATCHED_PAIRS[name](F)
    if name == "trunc":
        if not F.is_finite:
            raise ValueError("trunc needs a prime field")
        return truncated_poly_hopf(F.characteristic)
    raise KeyError(f"unknown catalog item {name!r}; known: {', '.join(names())}")
