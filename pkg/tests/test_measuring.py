from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bimeasure import catalog
from bimeasure import linalg as la
from bimeasure.algebra import BilinearPairing, convolve
from bimeasure.errors import BudgetExceeded
from bimeasure.field import Field
from bimeasure.measuring import (
    check_bimeasuring, check_chi, check_measuring, check_rho_algebra_map, chi_to_psi, cocommutative_correspondence,
    compose_with_projection, enumerate_bimeasurings, enumerate_measurings, factor_bimeasuring_through_ab,
    image_commutativity, polynomial_bimeasuring, psi_to_rho, rho_to_psi,
)
from bimeasure.structure import abelianization

from conftest import F2, F3, F5, F7, Q

F11 = Field.prime(11)


def k_of(F):
    return catalog.get("k", F).algebra_part()


def c2_pairing(F, lam):
    """kC2 (x) kC2 -> k with psi(1, .) = psi(., 1) = 1 and psi(g, g) = lam."""
    C = catalog.get("kC2", F)
    return BilinearPairing.scalar(C, C, k_of(F), [[F(1), F(1)], [F(1), F(lam)]])


@pytest.mark.parametrize("lam,ok", [(1, True), (-1, True), (2, False), (0, False)])
def test_c2_bimeasuring_needs_square_root_of_one(lam, ok):
    w = check_bimeasuring(c2_pairing(Q, lam))
    assert w.ok is ok


def test_lambda_two_counterexample_is_exact():
    cx = check_measuring(c2_pairing(Q, 2)).counterexample
    # psi(g, g g) = psi(g, 1) = 1 while psi(g, g)^2 = 4
    assert cx is not None
    assert {tuple(cx.lhs), tuple(cx.rhs)} == {(Q(1),), (Q(4),)}


def test_counit_pairing_is_a_bimeasuring(field):
    for n, t in (("kC3", "H4"), ("kS3", "kC2")):
        N, T = catalog.get(n, field), catalog.get(t, field)
        table = [[F_ * G for G in T.counit] for F_ in N.counit]
        assert check_bimeasuring(BilinearPairing.scalar(N, T, k_of(field), table)).ok


def test_shape_mismatch_rejected():
    C = catalog.get("kC2", Q)
    with pytest.raises(ValueError):
        BilinearPairing.scalar(C, C, k_of(Q), [[Q(1)]])


@pytest.mark.parametrize("F,count", [(Q, 2), (F3, 2), (F2, 1), (F5, 2), (F7, 2)])
def test_enumerate_c2_c2(F, count):
    psis = enumerate_bimeasurings(catalog.get("kC2", F), catalog.get("kC2", F), k_of(F))
    assert len(psis) == count
    assert sorted(p.table[1][1][0] for p in psis) == sorted({F(1), F(-1)})


def test_enumerate_c2_c3_over_f7():
    psis = enumerate_bimeasurings(catalog.get("kC2", F7), catalog.get("kC3", F7), k_of(F7))
    assert len(psis) == 1


@pytest.mark.parametrize("F", [F2, F3, F5])
def test_raw_and_solver_agree(F):
    C = catalog.get("kC2", F)
    a = {p.key() for p in enumerate_bimeasurings(C, C, k_of(F), mode="raw")}
    b = {p.key() for p in enumerate_bimeasurings(C, C, k_of(F), mode="solver")}
    assert a == b


def test_raw_over_f3_into_dual_numbers_matches_solver():
    C = catalog.get("kC2", F3)
    A = catalog.get("k[y]/(y^2)", F3)
    raw = enumerate_bimeasurings(C, C, A, mode="raw")
    assert {p.key() for p in raw} == {p.key() for p in enumerate_bimeasurings(C, C, A)}
    assert all(check_bimeasuring(p).ok for p in raw)


def test_ground_field_left_gives_counit():
    psis = enumerate_bimeasurings(catalog.get("k", F5), catalog.get("H4", F5), k_of(F5))
    assert len(psis) == 1


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        enumerate_bimeasurings(catalog.get("kC3", F7), catalog.get("kC3", F7), catalog.get("M2", F7), mode="raw", budget=10)


@pytest.mark.parametrize("F", [F3, F5])
def test_rho_correspondence_on_all_measurings(F):
    C, B, A = catalog.get("kC2", F), catalog.get("kC3", F), catalog.get("k[y]/(y^2-y)", F)
    for psi in enumerate_measurings(C, B, A):
        rho = psi_to_rho(psi)
        assert rho_to_psi(rho, C, B, A).key() == psi.key()
        assert check_rho_algebra_map(rho, C, B, A) is None


def test_rho_rejects_non_measuring():
    psi = c2_pairing(Q, 2)
    rho = psi_to_rho(psi)
    assert check_rho_algebra_map(rho, psi.left, psi.right, psi.target) is not None


def test_rho_character_squares_to_unit():
    psi = c2_pairing(Q, -1)
    C, k = psi.left, psi.target
    rho_g = [[row[1] for row in psi_to_rho(psi).matrix]]  # the map C -> k attached to g
    assert convolve(rho_g, rho_g, C, k) == [[Q(1), Q(1)]]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=4, max_size=4))
def test_chi_round_trip(values):
    C = catalog.get("kC2", F5)
    psi = BilinearPairing.scalar(C, C, k_of(F5), [values[:2], values[2:]])
    chi = cocommutative_correspondence(psi)
    assert chi_to_psi(chi, C, C, psi.target).key() == psi.key()
    assert (check_chi(chi, C, C, psi.target) is None) == check_measuring(psi).ok


ALPHAS = [(0, 0, 0, 0), (1, 0, 0, 1), (1, 2, 0, 3), (0, 1, 0, 0), (2, -1, 5, "1/2"), (0, 1, 1, 0)]


@pytest.mark.parametrize("N", [4, 6])
@pytest.mark.parametrize("alpha", ALPHAS)
def test_polynomial_bimeasuring_in_matrices(N, alpha):
    for F in (Q, F11):
        A = catalog.get("M2", F)
        psi = polynomial_bimeasuring([F(a) for a in alpha], A, catalog.poly_window(N, F))
        assert check_bimeasuring(psi).ok
        assert image_commutativity(psi) is None


def test_polynomial_formula_values():
    A = catalog.get("M2", Q)
    alpha = [Q(1), Q(2), Q(0), Q(3)]
    psi = polynomial_bimeasuring(alpha, A, catalog.poly_window(4, Q))
    a2 = A.product(alpha, alpha)
    assert list(psi.table[2][2]) == la.vscale(Q, Q(2), a2)
    assert all(la.is_zero(psi.table[i][j]) for i in range(5) for j in range(5) if i != j)
    zero = polynomial_bimeasuring([Q(0)] * 4, A, catalog.poly_window(4, Q))
    assert list(zero.table[0][0]) == A.one and la.is_zero(zero.table[1][1])


def test_full_check_on_truncated_polynomial_hopf():
    H = catalog.get("trunc", F7)
    A = catalog.get("M2", F7)
    for alpha in product(range(0, 7, 3), repeat=2):
        psi = polynomial_bimeasuring([F7(alpha[0]), F7(1), F7(0), F7(alpha[1])], A, H)
        assert check_bimeasuring(psi).ok
        assert image_commutativity(psi) is None


def test_polynomial_window_is_not_honest_truncation():
    psi = polynomial_bimeasuring([Q(1), Q(0), Q(0), Q(1)], catalog.get("M2", Q), catalog.poly_window(4, Q))
    assert psi.left.dim == 5


def test_factor_through_abelianization_of_sweedler():
    N, T, k = catalog.get("kC2", Q), catalog.get("H4", Q), k_of(Q)
    psis = enumerate_bimeasurings(N, T, k)
    pres = abelianization(T)
    bars = [factor_bimeasuring_through_ab(p, pres) for p in psis]
    assert len(bars) == 2
    for p, b in zip(psis, bars):
        assert check_bimeasuring(b).ok
        assert compose_with_projection(b, pres, T).key() == p.key()
    direct = enumerate_bimeasurings(N, pres.quotient, k)
    assert {b.key() for b in bars} == {d.key() for d in direct}


def test_two_sided_factorization_s3():
    S = catalog.get("kS3", Q)
    psis = enumerate_bimeasurings(S, S, k_of(Q))
    bars = {factor_bimeasuring_through_ab(p, two_sided=True).key() for p in psis}
    assert len(psis) == len(bars) == 2


def test_ts_equals_st_on_commutative_image():
    N, T = catalog.get("kC2", F5), catalog.get("kS3", F5)
    for psi in enumerate_bimeasurings(N, T, k_of(F5)):
        for n in range(N.dim):
            for t, s in product(range(T.dim), repeat=2):
                ts = psi.evaluate(N.basis_vector(n), T.product(T.basis_vector(t), T.basis_vector(s)))
                st_ = psi.evaluate(N.basis_vector(n), T.product(T.basis_vector(s), T.basis_vector(t)))
                assert ts == st_
