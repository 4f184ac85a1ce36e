from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bimeasure import catalog
from bimeasure.algebra import BilinearPairing, is_isomorphism, permutation_matrix, structure_tables, validate
from bimeasure.errors import BimeasureError
from bimeasure.linalg import Tensor3
from bimeasure.matched_pair import (
    MatchedPair, bismash, check_group_laws, check_product_form, check_skew_bimeasuring, derived_identities,
    distributive_law, enumerate_skew_bimeasurings, from_group_factorization, group_basis_map, skew_convolve,
    skew_group, skew_inverse, skew_unit, validate_matched_pair,
)
from bimeasure.measuring import check_bimeasuring

from conftest import F5, F7, Q


def k_of(F):
    return catalog.get("k", F).algebra_part()


def _trivial(n, t, F):
    return MatchedPair.trivial(catalog.get(n, F), catalog.get(t, F))


def s3_psi(F, lam):
    """psi(1, .) = eps, psi(g, h^i) = lam^i on kC2 (x) kC3."""
    mp = catalog.get("s3_pair", F)
    table = [[F(1)] * 3, [F(1), F(lam), F.pow(F(lam), 2)]]
    return mp, BilinearPairing.scalar(mp.N, mp.T, k_of(F), table)


def test_s3_pair_validates(field):
    assert validate_matched_pair(catalog.get("s3_pair", field)) is None


def test_trivial_pairs_validate(field):
    for n, t in (("kC2", "kC2"), ("kC2", "kC3"), ("kC3", "kS3")):
        assert validate_matched_pair(_trivial(n, t, field)) is None


def test_bad_action_rejected():
    N, T = catalog.get("kC2", Q), catalog.get("kC3", Q)
    # g sends every basis element to 1: not unit-preserving on the coalgebra side and not an automorphism
    on_t = Tensor3(Q, (2, 3, 3), [(0, b, b, 1) for b in range(3)] + [(1, b, 0, 1) for b in range(3)])
    on_n = Tensor3(Q, (2, 3, 2), [(a, b, a, 1) for a in range(2) for b in range(3)])
    cx = validate_matched_pair(MatchedPair(N, T, on_t, on_n))
    assert cx is not None


def test_non_exact_factorization():
    G = catalog.symmetric_group_s3()
    with pytest.raises(BimeasureError, match="not an exact factorization"):
        from_group_factorization(G, [0, 1], [0, 1], Q)


def test_bismash_of_s3_pair_is_ks3(field):
    mp = catalog.get("s3_pair", field)
    H = bismash(mp)
    assert structure_tables(H) == structure_tables(catalog.get("kS3", field))


def test_bismash_of_c6_pair_is_kc6():
    G = catalog.cyclic_group(6)
    mp = catalog.get("c6_pair", F7)
    H = bismash(mp)
    perm = group_basis_map(mp, G, [0, 2, 4], [0, 3])
    assert sorted(perm) == list(range(6))
    assert is_isomorphism(permutation_matrix(F7, perm), H, catalog.get("kC6", F7))


def test_trivial_bismash_is_tensor_product():
    from bimeasure.algebra import tensor_product

    mp = _trivial("kC2", "kC3", Q)
    assert structure_tables(bismash(mp)) == structure_tables(tensor_product(mp.T, mp.N))


@pytest.mark.parametrize("pair", ["s3_pair", "c6_pair"])
def test_distributive_law_and_derived_identities(field, pair):
    mp = catalog.get(pair, field)
    H = bismash(mp)
    assert validate(H) is None
    assert distributive_law(mp, H) is None
    assert derived_identities(mp, H) is None


@pytest.mark.parametrize("lam,ok", [(1, True), (2, True), (4, True), (3, False), (6, False)])
def test_s3_skew_condition_is_cube_root_of_one(lam, ok):
    mp, psi = s3_psi(F7, lam)
    assert (check_skew_bimeasuring(mp, psi) is None) is ok
    if ok:
        assert check_product_form(mp, psi) is None


@pytest.mark.parametrize("F,order", [(F7, 3), (F5, 1), (Q, 1)])
def test_s3_skew_group_order(F, order):
    g = skew_group(catalog.get("s3_pair", F), k_of(F))
    assert g.order == order
    assert check_group_laws(g, abelian=True) is None


def test_s3_skew_group_elements_over_f7():
    mp = catalog.get("s3_pair", F7)
    psis = enumerate_skew_bimeasurings(mp, k_of(F7))
    assert sorted(p.table[1][1][0] for p in psis) == [1, 2, 4]
    for a, b in product(psis, repeat=2):
        assert check_skew_bimeasuring(mp, skew_convolve(mp, a, b)) is None
    for a in psis:
        inv = skew_inverse(mp, a)
        assert skew_convolve(mp, a, inv).key() == skew_unit(mp, a.target).key()


@pytest.mark.parametrize("n,t,F,order", [("kC2", "kC2", Q, 2), ("kC2", "kC3", F7, 1), ("kC3", "kC3", F7, 3)])
def test_trivial_pair_groups(n, t, F, order):
    g = skew_group(_trivial(n, t, F), k_of(F))
    assert g.order == order and check_group_laws(g, abelian=True) is None


def test_c6_pair_group_over_f7():
    assert skew_group(catalog.get("c6_pair", F7), k_of(F7)).order == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=6, max_size=6))
def test_trivial_actions_reduce_to_bimeasurings(values):
    mp = _trivial("kC2", "kC3", F7)
    psi = BilinearPairing.scalar(mp.N, mp.T, k_of(F7), [values[:3], values[3:]])
    assert (check_skew_bimeasuring(mp, psi) is None) == check_bimeasuring(psi).ok


def test_skew_enumeration_into_dual_numbers():
    mp = catalog.get("s3_pair", F5)
    A = catalog.get("k[y]/(y^2)", F5)
    psis = enumerate_skew_bimeasurings(mp, A)
    assert psis
    for p in psis:
        assert check_skew_bimeasuring(mp, p) is None and check_product_form(mp, p) is None
