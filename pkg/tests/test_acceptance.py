"""Acceptance criteria 1-12, one PASS/FAIL line each.

Run ``pytest tests/test_acceptance.py -v`` (the lines are written straight to
the terminal) or ``python tests/test_acceptance.py`` for just the summary.
"""

import sys
import time
from itertools import product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bimeasure import catalog  # noqa: E402
from bimeasure import hopf_modules as hm  # noqa: E402
from bimeasure import linalg as la  # noqa: E402
from bimeasure.algebra import (  # noqa: E402
    Coalgebra, HopfAlgebra, dual, is_commutative, is_isomorphism, structure_tables, validate,
)
from bimeasure.duality import (  # noqa: E402
    adjunction_check, adjunction_identity, adjunction_inverse, adjunction_transpose, enumerate_bialgebra_maps,
    finite_dual_universal, lemma1_injective, naturality_check, tensor_comparison_alpha, trivial_candidate,
    universality_check,
)
from bimeasure.field import Field  # noqa: E402
from bimeasure.matched_pair import (  # noqa: E402
    bismash, check_group_laws, check_product_form, derived_identities, distributive_law, enumerate_skew_bimeasurings,
    skew_group, validate_matched_pair,
)
from bimeasure.measuring import (  # noqa: E402
    check_bimeasuring, enumerate_bimeasurings, image_commutativity, polynomial_bimeasuring,
)
from bimeasure.structure import abelianization, cocommutative_part, commutator_ideal, hopf_ideal_alt_generators  # noqa: E402
from modgen import as_algebra, generated_modules  # noqa: E402

Q = Field.rationals()
F2, F3, F5, F7 = (Field.prime(p) for p in (2, 3, 5, 7))


def k_of(F):
    return catalog.get("k", F).algebra_part()


def criterion_1():
    start = time.perf_counter()
    checked = 0
    for F in (Q, F5, F7):
        for name in catalog.CARRIERS:
            cx = validate(catalog.get(name, F))
            assert cx is None, f"{name} over {F!r}: {cx}"
            checked += 1
        if F.is_finite:
            assert validate(catalog.get("trunc", F)) is None
            checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 5, f"took {elapsed:.1f}s"
    return f"{checked} carrier/field combinations valid in {elapsed:.2f}s"


def criterion_2():
    for F in (Q, F5, F7):
        for name in ("H4", "kS3"):
            H = catalog.get(name, F)
            assert hopf_ideal_alt_generators(H) == commutator_ideal(H), name
    dims = {}
    for name in ("kS3", "H4"):
        pres = abelianization(catalog.get(name, Q))
        q = pres.quotient
        assert is_commutative(q) and isinstance(q, HopfAlgebra) and validate(q) is None
        dims[name] = q.dim
    start = time.perf_counter()
    a5 = abelianization(catalog.get("kA5", F7))
    a5_time = time.perf_counter() - start
    dims["kA5"] = a5.quotient.dim
    assert dims == {"kS3": 2, "H4": 2, "kA5": 1}, dims
    assert a5_time < 60
    return f"abelianization dims {dims}; kA5 in {a5_time:.1f}s"


def criterion_3():
    H = catalog.get("H4", Q)
    cc = cocommutative_part(H)
    assert cc.subspace == la.Subspace(Q, 4, [la.unit_vector(Q, 4, 0), la.unit_vector(Q, 4, 1)])
    ab = abelianization(dual(H))
    free = ab.ideal.complement_indices()
    M = [[v[j] for v in cc.subspace.vectors()] for j in free]
    assert is_isomorphism(M, cc.sub, dual(ab.quotient))
    n = 0
    for name in catalog.CARRIERS:
        c = catalog.get(name, Q)
        if not isinstance(c, Coalgebra) or name == "kA5":
            continue
        sub = cocommutative_part(c).sub
        assert cocommutative_part(sub).subspace == la.Subspace.full(Q, sub.dim), name
        n += 1
    return f"H4_c = span{{1,g}}, matches dual abelianization; idempotent on {n} carriers"


def criterion_4():
    C2, C3 = "kC2", "kC3"
    counts = {}
    for F in (Q, F3, F2):
        counts[repr(F)] = len(enumerate_bimeasurings(catalog.get(C2, F), catalog.get(C2, F), k_of(F)))
    counts["C2xC3/F7"] = len(enumerate_bimeasurings(catalog.get(C2, F7), catalog.get(C3, F7), k_of(F7)))
    raw = len(enumerate_bimeasurings(catalog.get(C2, F3), catalog.get(C2, F3), k_of(F3), mode="raw"))
    assert counts == {"Q": 2, "F3": 2, "F2": 1, "C2xC3/F7": 1}, counts
    assert raw == 2
    return f"counts {counts} (raw F3 also 2)"


def criterion_5():
    alphas = [(1, 0, 0, 1), (1, 2, 0, 3), (0, 1, 0, 0), (2, -1, 5, "1/2"), (0, 1, 1, 0), (3, 0, 0, -2)]
    A = catalog.get("M2", Q)
    n = 0
    for N in (4, 6):
        for alpha in alphas:
            psi = polynomial_bimeasuring([Q(a) for a in alpha], A, catalog.poly_window(N, Q))
            assert check_bimeasuring(psi).ok and image_commutativity(psi) is None
            n += 1
    H, A7 = catalog.get("trunc", F7), catalog.get("M2", F7)
    for alpha in ((1, 1, 0, 2), (0, 1, 0, 0), (3, 5, 6, 1)):
        psi = polynomial_bimeasuring([F7(a) for a in alpha], A7, H)
        assert check_bimeasuring(psi).ok and image_commutativity(psi) is None
        n += 1
    return f"{n} polynomial bimeasurings pass (windows 4, 6 over Q; full k[x]/(x^7) over F7)"


def criterion_6():
    tests = [(n, catalog.get(n, F5)) for n in ("k", "kC2", "kC3")]
    for name in ("kC2", "kC3", "H4"):
        cand = finite_dual_universal(catalog.get(name, F5))
        rep = universality_check(cand, tests)
        assert rep.ok, rep.to_json()
        assert all(lemma1_injective(cand, C) for _, C in tests)
    bad = universality_check(trivial_candidate(catalog.get("kC2", F5)), tests)
    assert not bad.ok and bad.failures
    w = bad.failures[0]
    return f"finite duals universal and unique; trivial candidate fails at {w.test}[{w.index}]: {w.reason}"


def criterion_7():
    trio = ("kC2", "kC3", "H4")
    sizes = []
    for T, N in product(trio, repeat=2):
        Tc, Nc = catalog.get(T, F5), catalog.get(N, F5)
        rep = adjunction_check(Tc, Nc)
        assert rep.ok, (T, N)
        for f in enumerate_bialgebra_maps(Tc, dual(Nc)):
            g = adjunction_transpose(f, Tc, Nc)
            assert adjunction_identity(f, g, Tc, Nc) is None
            assert adjunction_inverse(g, Tc, Nc).matrix == f.matrix
        sizes.append(rep.left_count)
    nat = 0
    for R, T, N in product(trio, repeat=3):
        Rc, Tc, Nc = (catalog.get(x, F5) for x in (R, T, N))
        for alpha, f in product(enumerate_bialgebra_maps(Rc, Tc)[:3], enumerate_bialgebra_maps(Tc, dual(Nc))[:3]):
            assert naturality_check(f, alpha, Rc, Tc, Nc) is None
            nat += 1
    return f"9 pairs bijective, hom-set sizes {sizes}; naturality on {nat} sampled (alpha, f)"


def criterion_8():
    for T, S in (("kC2", "kC3"), ("kC2", "H4")):
        tc = tensor_comparison_alpha(catalog.get(T, F5), catalog.get(S, F5))
        assert tc.bijective and tc.square_ok and tc.composite_identity
    return "alpha bijective, square commutes, retraction composite is the identity"


def criterion_9():
    orders = {}
    for F in (F7, F5, Q):
        mp = catalog.get("s3_pair", F)
        assert validate_matched_pair(mp) is None
        H = bismash(mp)
        assert structure_tables(H) == structure_tables(catalog.get("kS3", F))
        assert distributive_law(mp, H) is None and derived_identities(mp, H) is None
        g = skew_group(mp, k_of(F))
        assert check_group_laws(g, abelian=True) is None
        for psi in g.elements:
            assert check_product_form(mp, psi, H) is None
        orders[repr(F)] = g.order
    assert orders == {"F7": 3, "F5": 1, "Q": 1}, orders
    values = sorted(p.table[1][1][0] for p in enumerate_skew_bimeasurings(catalog.get("s3_pair", F7), k_of(F7)))
    return f"bismash = kS3 (identity basis map); skew group orders {orders}; psi(g,h) in {values} over F7"


def criterion_10():
    n = 0
    for _, M in generated_modules():
        assert hm.validate_hopf_module(M) is None
        assert hm.equalizer_coinvariants(M) == hm.coinvariants(M).image_of_rho
        assert hm.check_fundamental_iso(M) is None
        n += 1
    assert n >= 200
    H = catalog.get("kC3", F7)
    for m1, m2 in ((hm.regular_module(H), hm.trivial_module(H, 2)), (hm.trivial_module(H, 2), hm.trivial_module(H, 3))):
        c = hm.cotensor(m1, m2)
        assert hm.coinvariants(c).dim == hm.coinvariants(m1).dim * hm.coinvariants(m2).dim
    return f"fundamental iso on {n} generated modules; cotensor coinvariant dims multiply"


def criterion_11():
    orders = []
    exhaustive = True
    for F in (F5, F7):
        for h, a in product(("kC2", "kC3"), ("k", "k[y]/(y^2)")):
            rep = hm.theorem53_check(catalog.get(h, F), as_algebra(catalog.get(a, F)))
            assert rep.ok, rep.to_json()
            orders.append(rep.order)
            exhaustive = exhaustive and rep.exhaustive
    mode = "all pairs" if exhaustive else "all pairs up to 400 elements, seeded samples above"
    return f"group orders {orders}; tables agree ({mode})"


def criterion_12():
    rep = hm.corollary_check(catalog.get("s3_pair", F7), k_of(F7))
    assert rep.ok and rep.tables_agree
    assert set(rep.orders.values()) == {3}, rep.orders
    mismatches = sum("mismatch" in f for f in rep.findings)
    return f"orders {rep.orders}; tables coincide; formula findings: {mismatches}/{len(rep.findings)} readings mismatch"


CRITERIA = [globals()[f"criterion_{n}"] for n in range(1, 13)]


def _run(fn):
    n = fn.__name__.split("_")[1]
    try:
        detail = fn()
    except AssertionError as e:
        return False, f"CRITERION {n}: FAIL - {e}"
    return True, f"CRITERION {n}: PASS - {detail}"


@pytest.mark.parametrize("fn", CRITERIA, ids=[f.__name__ for f in CRITERIA])
def test_criterion(fn, capsys):
    ok, line = _run(fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_run(fn) for fn in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
