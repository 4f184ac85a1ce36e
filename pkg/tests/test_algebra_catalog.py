import pytest

from bimeasure import catalog
from bimeasure import linalg as la
from bimeasure.algebra import (
    Algebra, HopfAlgebra, check_bialgebra_map, convolution_inverse, convolution_unit, convolve, dual,
    is_cocommutative, is_commutative, structure_tables, tensor_product, validate, validated,
)
from bimeasure.errors import ValidationError
from bimeasure.linalg import Tensor3

from conftest import F2, F5, F7, Q

LIGHT = [n for n in catalog.CARRIERS if n != "kA5"]


@pytest.mark.parametrize("name", LIGHT)
def test_catalog_carriers_validate(field, name):
    assert validate(catalog.get(name, field)) is None


@pytest.mark.parametrize("p", [5, 7])
def test_truncated_polynomial_hopf(p):
    from bimeasure.field import Field

    H = catalog.get("trunc", Field.prime(p))
    assert H.dim == p and validate(H) is None


def test_trunc_needs_prime_field():
    with pytest.raises(ValueError):
        catalog.get("trunc", Q)


def test_unknown_name():
    with pytest.raises(KeyError):
        catalog.get("kC99", Q)


@pytest.mark.parametrize("name", ["kC3", "H4", "kS3", "M2", "k[y]/(y^2)"])
def test_double_dual_is_identity(field, name):
    c = catalog.get(name, field)
    assert structure_tables(dual(dual(c))) == structure_tables(c)


def test_sweedler_is_neither_commutative_nor_cocommutative():
    H = catalog.get("H4", Q)
    assert not is_commutative(H) and not is_cocommutative(H)
    assert is_commutative(catalog.get("kC3", Q)) and is_cocommutative(catalog.get("kS3", Q))
    assert is_commutative(catalog.get("kS3*", Q)) and not is_cocommutative(catalog.get("kS3*", Q))


def test_broken_unit_counterexample_names_axiom():
    A = catalog.get("kC2", Q)
    bad = Algebra(Q, A.mult, [Q(0), Q(1)], A.names)
    cx = validate(bad)
    assert cx is not None and "unit" in cx.axiom
    with pytest.raises(ValidationError) as e:
        validated(bad)
    assert e.value.counterexample == cx
    assert cx.to_json()["axiom"] == cx.axiom


def test_broken_antipode_detected():
    H = catalog.get("H4", F5)
    bad = HopfAlgebra(F5, H.mult, H.unit, H.comult, H.counit, la.identity(F5, 4), H.names)
    cx = validate(bad)
    assert cx is not None and cx.axiom.startswith("antipode")


def test_non_coassociative_detected():
    from bimeasure.algebra import Coalgebra

    # D e1 = e1 (x) e0 + e1 (x) e1: (D (x) 1) and (1 (x) D) disagree at e1
    c = Coalgebra(Q, Tensor3(Q, (2, 2, 2), [(0, 0, 0, 1), (1, 1, 0, 1), (1, 1, 1, 1)]), [Q(1), Q(0)])
    cx = validate(c)
    assert cx is not None and cx.axiom.startswith("coassociativity") and cx.indices == (1,)


def test_tensor_product_dimensions_and_axioms(field):
    T = tensor_product(catalog.get("kC2", field), catalog.get("kC3", field))
    assert T.dim == 6 and validate(T) is None


def test_convolution_group_of_characters():
    # Hom(kC2, k) under convolution: the sign character squares to the counit
    C = catalog.get("kC2", Q)
    k = catalog.get("k", Q).algebra_part()
    sign = [[Q(1), Q(-1)]]
    u = convolution_unit(C, k)
    assert convolve(sign, sign, C, k) == u
    assert convolution_inverse(sign, C, k) == sign


def test_bialgebra_map_check():
    A = catalog.get("kC2", F7)
    assert check_bialgebra_map(la.identity(F7, 2), A, A) is None
    swap = [[F7(0), F7(1)], [F7(1), F7(0)]]
    assert check_bialgebra_map(swap, A, A) is not None


def test_group_algebra_over_f2_still_validates():
    assert validate(catalog.get("kS3", F2)) is None


def test_kc6_has_integer_fast_path_and_fraction_field_agree():
    for F in (Q, F7):
        assert validate(catalog.get("kC6", F)) is None
