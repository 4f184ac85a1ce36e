from itertools import product

import pytest

from bimeasure import catalog
from bimeasure import linalg as la
from bimeasure.algebra import check_bialgebra_map, dual
from bimeasure.duality import (
    adjunction_check, adjunction_identity, adjunction_inverse, adjunction_transpose, cocommutative_candidate,
    enumerate_bialgebra_maps, factor_measuring, finite_dual_universal, lemma1_injective, naturality_check,
    tensor_comparison_alpha, trivial_candidate, universality_check,
)
from bimeasure.errors import DoesNotFactor
from bimeasure.measuring import enumerate_measurings

from conftest import F5, F7, Q

TESTS = ("k", "kC2", "kC3")
TRIO = ("kC2", "kC3", "H4")


def _carriers(F):
    return [(n, catalog.get(n, F)) for n in TESTS]


@pytest.mark.parametrize("name", TRIO)
def test_finite_dual_is_universal(name):
    cand = finite_dual_universal(catalog.get(name, F5))
    rep = universality_check(cand, _carriers(F5))
    assert rep.ok, rep.to_json()
    assert all(lemma1_injective(cand, C) for _, C in _carriers(F5))


def test_measuring_counts_for_c2():
    rep = universality_check(finite_dual_universal(catalog.get("kC2", F5)), _carriers(F5))
    assert rep.counts["k:measuring"] == 2
    assert rep.counts["kC2:measuring"] == 4
    assert rep.counts["kC3:measuring"] == 8


@pytest.mark.parametrize("base", ["kC2", "k"])
def test_trivial_candidate_fails_with_witness(base):
    B = catalog.get(base, F5)
    rep = universality_check(trivial_candidate(B), _carriers(F5))
    if base == "k":
        # k itself is its own finite dual, so the trivial candidate is universal there
        assert rep.ok
        return
    assert not rep.ok
    w = rep.failures[0]
    assert w.test.startswith("k:") and "no linear map" in w.reason


def test_factorization_is_unique_and_explicit():
    B = catalog.get("kC3", F7)
    cand = finite_dual_universal(B)
    C = catalog.get("kC2", F7)
    for psi in enumerate_measurings(C, B, cand.target):
        fac = factor_measuring(psi, cand)
        assert fac.unique
        # theta(F c, b) reproduces psi
        for c in range(C.dim):
            for b in range(B.dim):
                assert cand.theta.evaluate(fac.map.column(c), B.basis_vector(b)) == list(psi.table[c][b])


def test_trivial_candidate_raises_does_not_factor():
    B = catalog.get("kC2", F5)
    psis = enumerate_measurings(catalog.get("k", F5), B, finite_dual_universal(B).target)
    sign = [p for p in psis if p.table[0][1][0] != 1][0]
    with pytest.raises(DoesNotFactor):
        factor_measuring(sign, trivial_candidate(B))


def test_cocommutative_candidate_of_sweedler():
    cand = cocommutative_candidate(catalog.get("H4", F5))
    assert cand.carrier.dim == 2
    cocom_tests = [(n, catalog.get(n, F5)) for n in ("k", "kC2")]
    assert universality_check(cand, cocom_tests).ok


@pytest.mark.parametrize("F", [F5])
@pytest.mark.parametrize("T,N", list(product(TRIO, repeat=2)))
def test_adjunction_bijection(F, T, N):
    rep = adjunction_check(catalog.get(T, F), catalog.get(N, F))
    assert rep.ok and rep.left_count == rep.right_count >= 1


@pytest.mark.parametrize("F,count", [(F5, 6), (F7, 8)])
def test_sweedler_self_adjunction_count(F, count):
    H = catalog.get("H4", F)
    assert len(enumerate_bialgebra_maps(H, dual(H))) == count


def test_c3_c2_hom_sets_over_f7_are_trivial():
    rep = adjunction_check(catalog.get("kC2", F7), catalog.get("kC3", F7))
    assert rep.left_count == rep.right_count == 1


def test_transpose_round_trip_and_identity():
    T, N = catalog.get("kC3", F7), catalog.get("kC3", F7)
    fs = enumerate_bialgebra_maps(T, dual(N))
    assert len(fs) == 3
    for f in fs:
        g = adjunction_transpose(f, T, N)
        assert check_bialgebra_map(g.matrix, N, dual(T)) is None
        assert adjunction_identity(f, g, T, N) is None
        assert adjunction_inverse(g, T, N).matrix == f.matrix


@pytest.mark.parametrize("R,T,N", [("kC2", "kC2", "kC3"), ("kC3", "kC3", "H4"), ("k", "H4", "kC2"), ("H4", "H4", "H4")])
def test_naturality_on_sampled_alpha(R, T, N):
    Rc, Tc, Nc = (catalog.get(x, F5) for x in (R, T, N))
    alphas = enumerate_bialgebra_maps(Rc, Tc)
    fs = enumerate_bialgebra_maps(Tc, dual(Nc))
    assert alphas and fs
    for alpha, f in product(alphas, fs):
        assert naturality_check(f, alpha, Rc, Tc, Nc) is None


def test_bialgebra_map_counts():
    assert len(enumerate_bialgebra_maps(catalog.get("kC2", Q), catalog.get("kC2", Q))) == 2
    assert len(enumerate_bialgebra_maps(catalog.get("kC3", F5), catalog.get("kC2", F5))) == 1
    assert len(enumerate_bialgebra_maps(catalog.get("k", F5), catalog.get("H4", F5))) == 1


@pytest.mark.parametrize("T,S", [("kC2", "kC3"), ("kC2", "H4"), ("kC2", "kC2")])
def test_tensor_comparison(T, S):
    tc = tensor_comparison_alpha(catalog.get(T, F5), catalog.get(S, F5))
    assert tc.square_ok and tc.composite_identity and tc.bijective
    n = len(tc.alpha.matrix)
    assert tc.alpha.matrix == la.identity(F5, n)
    assert la.matmul(F5, tc.retraction.matrix, tc.alpha.matrix) == la.identity(F5, n)
