import pytest

from bimeasure import catalog
from bimeasure import linalg as la
from bimeasure.algebra import Coalgebra, HopfAlgebra, dual, is_commutative, is_isomorphism, validate
from bimeasure.errors import DoesNotFactor
from bimeasure.structure import (
    abelianization, cocommutative_part, commutator_ideal, corestrict_to_cc, factor_through_ab,
    hopf_ideal_alt_generators, is_ideal,
)

from conftest import F5, F7, Q

COALGEBRAS = [n for n in catalog.CARRIERS if n != "kA5" and isinstance(catalog.get(n, Q), Coalgebra)]


def naive_cocommutative_part(h) -> la.Subspace:
    """Oracle: iterate V -> {x in V : Dx in V(x)V and Dx is symmetric} to its fixed point."""
    F, d = h.field, h.dim
    V = la.Subspace.full(F, d)
    while True:
        ann = V.perp().vectors()
        rows = []
        # the unknown is x in F^d; each row is one linear functional of x
        for w in ann:
            for k in range(d):
                rows.append([sum((c * w[j] for j, kk, c in h.basis_coproduct(i) if kk == k), F.zero) for i in range(d)])
                rows.append([sum((c * w[kk] for j, kk, c in h.basis_coproduct(i) if j == k), F.zero) for i in range(d)])
        for j in range(d):
            for k in range(d):
                rows.append([F.sub(h.comult.get(i, j, k), h.comult.get(i, k, j)) for i in range(d)])
        W = la.Subspace(F, d, la.kernel(F, rows, d)).intersect(V)
        if W == V:
            return V
        V = W


@pytest.mark.parametrize("name", ["H4", "kS3"])
def test_alt_generators_give_commutator_ideal(field, name):
    H = catalog.get(name, field)
    assert hopf_ideal_alt_generators(H) == commutator_ideal(H)


@pytest.mark.parametrize("name,dim", [("kS3", 2), ("H4", 2), ("kC3", 3), ("kS3*", 6)])
def test_abelianization_dims(field, name, dim):
    pres = abelianization(catalog.get(name, field))
    assert pres.quotient.dim == dim
    assert is_commutative(pres.quotient) and validate(pres.quotient) is None
    assert isinstance(pres.quotient, HopfAlgebra)
    assert is_ideal(pres.original, pres.ideal)


@pytest.mark.heavy
def test_a5_is_perfect():
    pres = abelianization(catalog.get("kA5", F7))
    assert pres.quotient.dim == 1 and pres.ideal.dim == 59


def test_factor_through_ab():
    H = catalog.get("kS3", Q)
    pres = abelianization(H)
    sign = [[Q(1), Q(-1), Q(1), Q(-1), Q(1), Q(-1)]]
    fbar = factor_through_ab(sign, pres)
    assert la.matmul(Q, fbar, pres.projection.matrix) == sign
    with pytest.raises(DoesNotFactor):
        factor_through_ab([[Q(1), Q(0), Q(0), Q(0), Q(0), Q(0)]], pres)


def test_sweedler_cocommutative_part(field):
    H = catalog.get("H4", field)
    pres = cocommutative_part(H)
    expected = la.Subspace(field, 4, [la.unit_vector(field, 4, 0), la.unit_vector(field, 4, 1)])
    assert pres.subspace == expected
    assert pres.sub.dim == 2 and isinstance(pres.sub, HopfAlgebra)


@pytest.mark.parametrize("name", COALGEBRAS)
def test_cocommutative_part_matches_naive_oracle(name):
    H = catalog.get(name, F5)
    assert cocommutative_part(H).subspace == naive_cocommutative_part(H)


@pytest.mark.parametrize("name", COALGEBRAS)
def test_duality_bridge(name):
    """dual of the abelianized dual is the cocommutative part, via the evaluation pairing."""
    H = catalog.get(name, F7)
    cc = cocommutative_part(H)
    ab = abelianization(dual(H))
    other = dual(ab.quotient)
    free = ab.ideal.complement_indices()
    vs = cc.subspace.vectors()
    M = [[v[j] for v in vs] for j in free]
    assert other.dim == cc.sub.dim
    assert is_isomorphism(M, cc.sub, other)


@pytest.mark.parametrize("name", COALGEBRAS)
def test_cocommutative_part_is_idempotent(name):
    sub = cocommutative_part(catalog.get(name, Q)).sub
    again = cocommutative_part(sub)
    assert again.sub.dim == sub.dim
    assert again.subspace == la.Subspace.full(Q, sub.dim)


def test_corestriction():
    H = catalog.get("H4", Q)
    pres = cocommutative_part(H)
    # k -> H4, 1 -> 1 lands inside H_c
    f = [[Q(1)], [Q(0)], [Q(0)], [Q(0)]]
    fbar = corestrict_to_cc(f, pres)
    assert la.matmul(Q, pres.inclusion.matrix, fbar) == f
    with pytest.raises(DoesNotFactor):
        corestrict_to_cc([[Q(0)], [Q(0)], [Q(1)], [Q(0)]], pres)
