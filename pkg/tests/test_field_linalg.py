from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bimeasure import linalg as la
from bimeasure.errors import DimensionMismatch, InconsistentSystem, NotInvertible
from bimeasure.field import Field

from conftest import F5, F7, Q


def test_coercion_is_exact():
    assert Q("-3/6") == Fraction(-1, 2)
    assert F7("1/2") == 4
    assert F7(-1) == 6
    assert Q.format(Q("4/2")) == "2"
    assert F5.format(F5(7)) == "2"


def test_parse_field_names():
    assert Field.parse("Q") == Q
    assert Field.parse("Fp:7") == F7
    assert Field.parse("F5") == F5
    with pytest.raises(ValueError):
        Field.parse("R")
    with pytest.raises(ValueError):
        Field.prime(6)


def test_finite_field_elements():
    assert list(F5.elements()) == [0, 1, 2, 3, 4]
    assert F7.inv(3) == 5
    with pytest.raises(ZeroDivisionError):
        F7.inv(0)


small = st.integers(min_value=-4, max_value=4)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@settings(max_examples=60, deadline=None)
@given(matrices(3, 4))
def test_rank_nullity(m):
    for F in (Q, F5):
        M = [[F(x) for x in row] for row in m]
        ker = la.kernel(F, M, 4)
        assert la.rank(F, M) + len(ker) == 4
        for v in ker:
            assert la.is_zero(la.matvec(F, M, v))


@settings(max_examples=60, deadline=None)
@given(matrices(3, 3))
def test_inverse_round_trip(m):
    M = [[Q(x) for x in row] for row in m]
    if la.rank(Q, M) < 3:
        with pytest.raises(NotInvertible):
            la.inverse(Q, M)
        return
    assert la.matmul(Q, M, la.inverse(Q, M)) == la.identity(Q, 3)


@settings(max_examples=40, deadline=None)
@given(matrices(4, 3), matrices(4, 3))
def test_subspace_equality_is_canonical(a, b):
    A = la.Subspace(Q, 3, [[Q(x) for x in r] for r in a])
    # same span, different generators
    B = la.Subspace(Q, 3, [la.vadd(Q, A.basis[i], A.basis[0]) if i else A.basis[0] for i in range(A.dim)])
    assert A == B
    S = A.sum(la.Subspace(Q, 3, [[Q(x) for x in r] for r in b]))
    assert S.contains_subspace(A)


def test_solve_linear_and_inconsistency():
    M = [[Q(1), Q(1)], [Q(1), Q(1)]]
    x, ker = la.solve_linear(Q, M, [Q(2), Q(2)])
    assert la.matvec(Q, M, x) == [2, 2] and len(ker) == 1
    with pytest.raises(InconsistentSystem):
        la.solve_linear(Q, M, [Q(1), Q(2)])


def test_subspace_coordinates_and_perp():
    S = la.Subspace(Q, 3, [[1, 2, 0], [0, 0, 1]])
    v = [Q(2), Q(4), Q(5)]
    c = S.coordinates(v)
    assert la.vadd(Q, la.vscale(Q, c[0], S.vectors()[0]), la.vscale(Q, c[1], S.vectors()[1])) == v
    P = S.perp()
    assert P.dim == 1 and all(sum(a * b for a, b in zip(P.basis[0], w)) == 0 for w in S.vectors())
    with pytest.raises(DimensionMismatch):
        la.Subspace(Q, 3, [[1, 2]])


def test_tensor3_sums_duplicates_and_checks_range():
    t = la.Tensor3(F7, (2, 2, 2), [(0, 1, 1, 3), (0, 1, 1, 4)])
    assert t.entries == {}
    t = la.Tensor3(Q, (2, 2, 2), [(0, 1, 1, 1), (1, 1, 0, "1/2")])
    assert t.pair(1, 1) == [(0, Fraction(1, 2))]
    assert t.permuted((1, 0, 2)).get(1, 0, 1) == 1
    with pytest.raises(IndexError):
        la.Tensor3(Q, (1, 1, 1), [(0, 0, 1, 1)])


def test_kronecker_matches_flattening():
    a = [[Q(1), Q(2)], [Q(3), Q(4)]]
    b = [[Q(0), Q(1)], [Q(1), Q(0)]]
    k = la.kronecker(Q, a, b)
    assert k[la.flatten(1, 0, 2)][la.flatten(0, 1, 2)] == a[1][0] * b[0][1]
