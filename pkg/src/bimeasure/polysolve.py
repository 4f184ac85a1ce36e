"""Finite solution sets of polynomial systems over Q and F_p.

The enumerators (measurings, bialgebra maps, skew bimeasurings) reduce to
systems of quadratic equations in table entries.  They are solved by
depth-first search over a fixed variable order: each equation is attached to
the position of its last variable, and when the search reaches that
variable the equation becomes univariate, so the candidate values are its
roots (all residues over F_p; rational roots over Q).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import BimeasureError, BudgetExceeded
from .field import Field, Scalar

DEFAULT_BUDGET = 2**20


class Poly:
    """Sparse multivariate polynomial; monomials are sorted tuples of variable indices."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: dict | None = None):
        self.field = field
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def const(cls, field: Field, c) -> Poly:
        return cls(field, {(): field(c)})

    @classmethod
    def var(cls, field: Field, i: int) -> Poly:
        return cls(field, {(i,): field.one})

    def __add__(self, other: Poly) -> Poly:
        F = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = F.add(out.get(m, F.zero), c)
        return Poly(F, out)

    def __sub__(self, other: Poly) -> Poly:
        F = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = F.sub(out.get(m, F.zero), c)
        return Poly(F, out)

    def __mul__(self, other) -> Poly:
        F = self.field
        if not isinstance(other, Poly):
            c = F(other)
            return Poly(F, {m: F.mul(c, v) for m, v in self.terms.items()})
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                out[m] = F.add(out.get(m, F.zero), F.mul(c1, c2))
        return Poly(F, out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[int]:
        return {v for m in self.terms for v in m}

    def evaluate(self, values: Sequence[Scalar]) -> Scalar:
        F = self.field
        acc = F.zero
        for m, c in self.terms.items():
            t = c
            for v in m:
                t = F.mul(t, values[v])
            acc = F.add(acc, t)
        return acc

    def substitute(self, v: int, q: Poly) -> Poly:
        """Replace the unknown ``v`` by the polynomial ``q``."""
        F = self.field
        out = Poly(F)
        for m, c in self.terms.items():
            k = m.count(v)
            if not k:
                out = out + Poly(F, {m: c})
                continue
            rest = Poly(F, {tuple(u for u in m if u != v): c})
            for _ in range(k):
                rest = rest * q
            out = out + rest
        return out

    def degree_in(self, v: int) -> int:
        return max((m.count(v) for m in self.terms), default=0)

    def __repr__(self) -> str:
        F = self.field
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join(f"x{v}" for v in m)
            parts.append(F.format(c) + (f"*{mono}" if mono else ""))
        return " + ".join(parts) or "0"


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Distinct rational roots of ``sum coeffs[i] x^i`` (not identically zero)."""
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValueError("zero polynomial")
    roots: set[Fraction] = set()
    if cs[0] == 0:
        roots.add(Fraction(0))
        while cs and cs[0] == 0:
            cs.pop(0)
    if len(cs) == 1:
        return sorted(roots)
    lcm = 1
    for c in cs:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in cs]
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                val = Fraction(0)
                for c in reversed(cs):
                    val = val * cand + c
                if val == 0:
                    roots.add(cand)
    return sorted(roots)


class PolynomialSystem:
    """Equations ``p = 0`` in ``nvars`` unknowns over an exact field."""

    def __init__(self, field: Field, nvars: int, equations: Iterable[Poly] = ()):
        self.field = field
        self.nvars = nvars
        self.equations: list[Poly] = []
        for eq in equations:
            self.add(eq)

    def add(self, eq: Poly) -> None:
        if not eq.is_zero():
            self.equations.append(eq)

    def is_solution(self, values: Sequence[Scalar]) -> bool:
        return all(eq.evaluate(values) == 0 for eq in self.equations)

    def solve(self, order: Sequence[int] | None = None, budget: int = DEFAULT_BUDGET) -> list[list[Scalar]]:
        """All solutions, in lexicographic order of the search (values ascending).

        Raises :class:`BudgetExceeded` after ``budget`` search nodes, and
        :class:`BimeasureError` over Q when some unknown is left unconstrained
        (the solution set is then infinite or not reachable by root finding).
        """
        F = self.field
        if not F.is_finite:
            return self._solve_eliminating(budget)
        order = list(range(self.nvars)) if order is None else list(order)
        if sorted(order) != list(range(self.nvars)):
            raise ValueError("order must be a permutation of the variables")
        position = {v: k for k, v in enumerate(order)}
        attached: list[list[list[tuple[Scalar, list[int]]]]] = [[] for _ in order]
        for eq in self.equations:
            vs = eq.variables()
            if not vs:
                return []  # nonzero constant
            last = max(position[v] for v in vs)
            attached[last].append([(c, list(m)) for m, c in eq.terms.items()])

        values: list[Scalar] = [F.zero] * self.nvars
        solutions: list[list[Scalar]] = []
        nodes = 0
        n = len(order)

        def univariate(eq, v) -> list[Scalar]:
            coeffs: dict[int, Scalar] = {}
            for c, mono in eq:
                deg = 0
                t = c
                for u in mono:
                    if u == v:
                        deg += 1
                    else:
                        t = F.mul(t, values[u])
                if t != 0:
                    coeffs[deg] = F.add(coeffs.get(deg, F.zero), t)
            top = max(coeffs, default=0)
            return [coeffs.get(d, F.zero) for d in range(top + 1)]

        def candidates(k: int) -> list[Scalar]:
            v = order[k]
            polys = [univariate(eq, v) for eq in attached[k]]
            polys = [p for p in polys if any(c != 0 for c in p)]
            if F.is_finite:
                for p in polys:
                    if len(p) == 1:
                        return []
                    if len(p) == 2:
                        root = F.neg(F.div(p[0], p[1]))
                        return [root] if all(_eval(F, q, root) == 0 for q in polys) else []
                return [x for x in F.elements() if all(_eval(F, q, x) == 0 for q in polys)]
            if not polys:
                if attached[k]:
                    raise BimeasureError(f"unknown x{v} is unconstrained over Q; solution set is infinite")
                raise BimeasureError(f"unknown x{v} has no attached equation; cannot enumerate over Q")
            if len(polys[0]) == 1:
                return []
            roots = rational_roots(polys[0])
            return [r for r in roots if all(_eval(F, q, r) == 0 for q in polys[1:])]

        def search(k: int) -> None:
            nonlocal nodes
            if k == n:
                solutions.append(list(values))
                return
            for x in candidates(k):
                nodes += 1
                if nodes > budget:
                    raise BudgetExceeded(f"search exceeded budget of {budget} nodes")
                values[order[k]] = x
                search(k + 1)
            values[order[k]] = F.zero

        search(0)
        return solutions

    def _solve_eliminating(self, budget: int) -> list[list[Scalar]]:
        """Search over Q that alternates univariate root finding with linear elimination.

        An equation ``c x + r = 0`` with ``x`` absent from ``r`` eliminates ``x``;
        when no equation is univariate or eliminable the set is reported as
        undecidable by this method.
        """
        F = self.field
        n = self.nvars
        nodes = 0
        solutions: list[list[Scalar]] = []

        def search(eqs: list[Poly], subst: dict[int, Poly]) -> None:
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"search exceeded budget of {budget} nodes")
            live = []
            for e in eqs:
                if e.is_zero():
                    continue
                if not e.variables():
                    return
                live.append(e)
            if not live:
                free = [v for v in range(n) if v not in subst]
                if free:
                    raise BimeasureError(f"unknown x{free[0]} is unconstrained over Q; solution set is infinite")
                solutions.append([subst[v].evaluate([]) for v in range(n)])
                return
            uni = [(e, next(iter(e.variables()))) for e in live if len(e.variables()) == 1]
            if uni:
                e, v = min(uni, key=lambda ev: (ev[0].degree_in(ev[1]), ev[1]))
                coeffs = [F.zero] * (e.degree_in(v) + 1)
                for m, c in e.terms.items():
                    coeffs[len(m)] = c
                for r in rational_roots(coeffs):
                    q = Poly.const(F, r)
                    new_subst = {u: p.substitute(v, q) for u, p in subst.items()}
                    new_subst[v] = q
                    search([x.substitute(v, q) for x in live], new_subst)
                return
            for e in sorted(live, key=lambda p: (len(p.variables()), len(p.terms))):
                for v in sorted(e.variables()):
                    lin = [(m, c) for m, c in e.terms.items() if v in m]
                    if len(lin) == 1 and lin[0][0] == (v,):
                        c = lin[0][1]
                        rest = Poly(F, {m: x for m, x in e.terms.items() if m != (v,)})
                        q = rest * F.neg(F.inv(c))
                        new_subst = {u: p.substitute(v, q) for u, p in subst.items()}
                        new_subst[v] = q
                        search([x.substitute(v, q) for x in live if x is not e], new_subst)
                        return
            raise BimeasureError("system has no univariate or linearly eliminable equation over Q")

        search(list(self.equations), {})
        return solutions


def _eval(F: Field, coeffs: Sequence[Scalar], x: Scalar) -> Scalar:
    acc = F.zero
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc
