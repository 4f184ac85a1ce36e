import pytest

from bimeasure import catalog
from bimeasure import hopf_modules as hm
from bimeasure import linalg as la
from bimeasure.errors import BimeasureError
from bimeasure.linalg import Tensor3

from conftest import F5, F7, Q
from modgen import as_algebra, generated_modules

MODULES = list(generated_modules())


def test_enough_generated_modules():
    assert len(MODULES) >= 200


@pytest.mark.parametrize("name,module", MODULES, ids=[n for n, _ in MODULES])
def test_fundamental_theorem(name, module):
    assert hm.validate_hopf_module(module) is None
    eq = hm.equalizer_coinvariants(module)
    data = hm.coinvariants(module)
    assert eq == data.image_of_rho
    assert module.dim == module.H.dim * data.dim
    assert hm.check_fundamental_iso(module) is None


def test_theta_inverse_is_action_on_coinvariants():
    M = hm.trivial_module(catalog.get("kS3", Q), 2)
    iso = hm.fundamental_iso(M)
    H, data = M.H, iso.data
    for h in range(H.dim):
        for j in range(data.dim):
            col = [row[h * data.dim + j] for row in iso.theta_inv]
            assert col == M.act(H.basis_vector(h), data.kappa.column(j))


@pytest.mark.parametrize("name", ["kC2", "kC3", "H4", "kS3"])
def test_regular_module_has_one_dimensional_coinvariants(field, name):
    M = hm.regular_module(catalog.get(name, field))
    assert hm.validate_hopf_module(M) is None
    assert hm.coinvariants(M).dim == 1
    assert hm.check_fundamental_iso(M) is None


def test_broken_module_rejected():
    H = catalog.get("kC2", Q)
    reg = hm.regular_module(H)
    # counit action h.m = eps(h) m is not compatible with the regular coaction
    action = Tensor3(Q, (2, 2, 2), [(h, m, m, H.counit[h]) for h in range(2) for m in range(2)])
    bad = hm.HopfModule(H, 2, action, reg.coaction, "bad")
    cx = hm.validate_hopf_module(bad)
    assert cx is not None
    with pytest.raises(BimeasureError):
        hm.validated_module(bad)


def test_wrong_shapes_rejected():
    H = catalog.get("kC2", Q)
    with pytest.raises(BimeasureError):
        hm.HopfModule(H, 3, Tensor3(Q, (2, 2, 2)), Tensor3(Q, (2, 2, 2)))


@pytest.mark.parametrize("a,b", [((0, 1), (0, 1)), ((0, 2), (1, 1)), ((1, 1), (1, 2))])
def test_cotensor_coinvariant_dims_multiply(a, b):
    H = catalog.get("kC3", F7)

    def make(spec):
        kind, v = spec
        return hm.regular_module(H) if kind == 0 else hm.trivial_module(H, v)

    m1, m2 = make(a), make(b)
    c = hm.cotensor(m1, m2)
    assert hm.validate_hopf_module(c) is None
    assert hm.coinvariants(c).dim == hm.coinvariants(m1).dim * hm.coinvariants(m2).dim


def test_cotensor_needs_cocommutative():
    H = catalog.get("H4", F5)
    with pytest.raises(BimeasureError):
        hm.cotensor(hm.regular_module(H), hm.regular_module(H))


@pytest.mark.parametrize("F", [F5, F7])
def test_alpha_beta_round_trips(F):
    H = catalog.get("kC2", F)
    A = as_algebra(catalog.get("k[y]/(y^2)", F))
    for psi in hm.enumerate_reg_plus(H, A):
        phi = hm.alpha(psi, H, A)
        assert hm.alpha_inverse(phi, H, A) == psi
        assert hm.check_automorphism(phi, H, A) is None
        mubar = hm.beta(phi, H, A)
        assert hm.beta_inverse(mubar, H, A) == phi
        assert hm.check_action_a_linear(mubar, H, A) is None


def test_alpha_of_character_over_ground_field():
    # psi(g) = lam gives phi(g (x) 1) = g (x) lam
    H = catalog.get("kC2", F7)
    A = as_algebra(catalog.get("k", F7))
    for psi in hm.enumerate_reg_plus(H, A):
        phi = hm.alpha(psi, H, A)
        assert [row[1] for row in phi] == [F7(0), psi[0][1]]


@pytest.mark.parametrize("h,a,F,order", [
    ("kC2", "k", F5, 4), ("kC2", "k[y]/(y^2)", F5, 20), ("kC3", "k", F5, 16),
    ("kC2", "k", F7, 6), ("kC2", "k[y]/(y^2)", F7, 42), ("kC3", "k", F7, 36),
])
def test_theorem53_transport(h, a, F, order):
    rep = hm.theorem53_check(catalog.get(h, F), as_algebra(catalog.get(a, F)))
    assert rep.ok, rep.to_json()
    assert rep.order == order and rep.exhaustive


def test_theorem53_sampling_is_seeded():
    H, A = catalog.get("kC3", F5), as_algebra(catalog.get("k[y]/(y^2)", F5))
    a = hm.theorem53_check(H, A, full_table_limit=50, samples=300, seed=3)
    b = hm.theorem53_check(H, A, full_table_limit=50, samples=300, seed=3)
    assert a.to_json() == b.to_json() and a.ok and not a.exhaustive


def test_corollary_over_f7():
    rep = hm.corollary_check(catalog.get("s3_pair", F7), as_algebra(catalog.get("k", F7)))
    assert rep.orders == {"skew_bimeasurings": 3, "automorphisms": 3, "actions": 3}
    assert rep.tables_agree and rep.ok
    assert len(rep.findings) == 3 * len(hm.MUBAR_READINGS)


def test_corollary_over_f5_is_trivial():
    rep = hm.corollary_check(catalog.get("s3_pair", F5), as_algebra(catalog.get("k", F5)))
    assert set(rep.orders.values()) == {1} and rep.ok


def test_bimeasuring_to_automorphism_fixes_subcomodules():
    mp = catalog.get("s3_pair", F7)
    from bimeasure.matched_pair import bismash, enumerate_skew_bimeasurings

    H = bismash(mp)
    A = as_algebra(catalog.get("k", F7))
    for psi in enumerate_skew_bimeasurings(mp, A):
        _, phi = hm.bimeasuring_to_automorphism(mp, psi, H)
        assert hm.check_automorphism(phi, H, A) is None
        assert hm.fixes_subcomodules(mp, phi, H, A) is None
        assert la.shape(phi) == (H.dim, H.dim)
        mubar = hm.bimeasuring_to_action(mp, psi, H)
        assert hm.diagonal_action(mp, mubar, H, A) is None
        assert hm.validate_hopf_module(hm.twisted_module(mubar, H, A)) is None
