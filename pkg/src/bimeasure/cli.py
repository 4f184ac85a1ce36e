"""Command-line entry point.

Inputs are definition files (``-`` reads stdin) or catalog names; a catalog
name is built over ``--field``.  Exit codes: 0 pass, 1 a check failed,
2 input or schema error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

from . import catalog, formats
from . import duality, hopf_modules, matched_pair, measuring, structure
from .algebra import Algebra, Bialgebra, BilinearPairing, Coalgebra, HopfAlgebra, dual, is_cocommutative, validate
from .errors import BimeasureError, BudgetExceeded, SchemaError, ValidationError
from .field import Field
from .polysolve import DEFAULT_BUDGET
from .report import Report, digest

log = logging.getLogger("bimeasure")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


# -- inputs -------------------------------------------------------------------------

def _read(arg: str) -> tuple[str, str]:
    if arg == "-":
        return sys.stdin.read(), "<stdin>"
    try:
        with open(arg, encoding="utf-8") as fh:
            return fh.read(), arg
    except OSError as e:
        raise InputError(f"{arg}: {e.strerror}") from None


def load_input(arg: str, F: Field, texts: list):
    """A definition file, ``-`` for stdin, or a catalog name built over ``F``."""
    if arg != "-" and not os.path.exists(arg):
        try:
            obj = catalog.get(arg, F)
        except KeyError:
            raise InputError(f"{arg}: no such file or catalog item") from None
        except ValueError as e:
            raise InputError(f"{arg}: {e}") from None
        texts.append(f"catalog:{arg}:{F!r}")
        return obj
    text, source = _read(arg)
    texts.append(text)
    return formats.load(text, source)


def _expect(obj, cls, arg: str, what: str):
    if not isinstance(obj, cls):
        raise InputError(f"{arg}: expected {what}, got {type(obj).__name__}")
    return obj


def _plotting():
    # matplotlib is only imported when figures are requested
    from . import plotting

    return plotting


def _psi_json(psi: BilinearPairing) -> dict:
    F = psi.field
    return {
        "psi": [[i, j, a, F.format(x)] for i, row in enumerate(psi.table) for j, v in enumerate(row)
                for a, x in enumerate(v) if x != 0]
    }


def _matrix_json(F: Field, m) -> list:
    return [[F.format(x) for x in row] for row in m]


# -- commands -------------------------------------------------------------------------
# each returns a Report, or a (definition text, Report) pair for commands that
# produce a carrier

def cmd_validate(a, F, texts):
    obj = load_input(a.file, F, texts)
    r = Report("validate")
    if isinstance(obj, (Algebra, Coalgebra)):
        cx = validate(obj)
        r.verdict("axioms", cx is None)
        r.fail(cx)
        r.details.update(kind=formats.kind_of(obj), dim=obj.dim, field=repr(obj.field))
        if a.figures and isinstance(obj, Algebra):
            _plotting().carrier_figure(obj, "input", a.figures)
    elif isinstance(obj, matched_pair.MatchedPair):
        cx = matched_pair.validate_matched_pair(obj)
        r.verdict("matched_pair", cx is None)
        r.fail(cx)
    elif isinstance(obj, hopf_modules.HopfModule):
        cx = hopf_modules.validate_hopf_module(obj)
        r.verdict("hopf_module", cx is None)
        r.fail(cx)
    else:
        r.verdict("schema", True)
    return r


def _produced(name: str, carrier, a, extra: dict | None = None):
    r = Report(name)
    cx = validate(carrier)
    r.verdict("result_axioms", cx is None)
    r.fail(cx)
    r.details.update(dim=carrier.dim, **(extra or {}))
    if a.figures and isinstance(carrier, Algebra):
        _plotting().carrier_figure(carrier, name, a.figures)
    return formats.dumps(carrier) + "\n", r


def cmd_dual(a, F, texts):
    c = _expect(load_input(a.file, F, texts), (Algebra, Coalgebra), a.file, "a carrier")
    return _produced("dual", dual(c), a)


def cmd_abelianize(a, F, texts):
    h = _expect(load_input(a.file, F, texts), Algebra, a.file, "an algebra")
    pres = structure.abelianization(h)
    return _produced("abelianize", pres.quotient, a, {"ideal_dim": pres.ideal.dim})


def cmd_cocom_part(a, F, texts):
    h = _expect(load_input(a.file, F, texts), Coalgebra, a.file, "a coalgebra")
    pres = structure.cocommutative_part(h)
    _, r = out = _produced("cocom-part", pres.sub, a)
    r.verdict("cocommutative", is_cocommutative(pres.sub))
    return out


def _check_pairing(name, fn, a, F, texts):
    psi = _expect(load_input(a.file, F, texts), BilinearPairing, a.file, "a pairing")
    w = fn(psi)
    r = Report(name)
    r.verdict(name.removeprefix("check-"), w.ok)
    r.fail(w.counterexample)
    return r


def cmd_check_measuring(a, F, texts):
    return _check_pairing("check-measuring", measuring.check_measuring, a, F, texts)


def cmd_check_bimeasuring(a, F, texts):
    return _check_pairing("check-bimeasuring", measuring.check_bimeasuring, a, F, texts)


def cmd_enumerate(a, F, texts):
    N = _expect(load_input(a.n, F, texts), Bialgebra, a.n, "a bialgebra")
    T = _expect(load_input(a.t, F, texts), Bialgebra, a.t, "a bialgebra")
    A = _expect(load_input(a.a, F, texts), Algebra, a.a, "an algebra")
    if a.mode == "raw" and not F.is_finite:
        raise InputError("raw enumeration needs a prime field")
    psis = measuring.enumerate_bimeasurings(N, T, A, mode=a.mode, budget=a.budget)
    r = Report("enumerate-bimeasurings")
    r.details["count"] = len(psis)
    r.listings = [_psi_json(p) for p in psis]
    r.verdict("all_listed_pass", all(measuring.check_bimeasuring(p).ok for p in psis))
    return r


def _pair(arg, F, texts):
    return _expect(load_input(arg, F, texts), matched_pair.MatchedPair, arg, "a matched pair")


def cmd_bismash(a, F, texts):
    mp = _pair(a.file, F, texts)
    H = matched_pair.bismash(mp, validate_result=False)
    text, r = _produced("bismash", H, a)
    cx = matched_pair.distributive_law(mp, H)
    r.verdict("distributive_law", cx is None)
    r.fail(cx)
    return text, r


def cmd_check_skew(a, F, texts):
    mp = _pair(a.pair, F, texts)
    psi = _expect(load_input(a.psi, F, texts), BilinearPairing, a.psi, "a pairing")
    cx = matched_pair.check_skew_bimeasuring(mp, psi)
    r = Report("check-skew")
    r.verdict("skew_bimeasuring", cx is None)
    r.fail(cx)
    return r


def cmd_skew_group(a, F, texts):
    mp = _pair(a.pair, F, texts)
    A = _expect(load_input(a.a, F, texts), Algebra, a.a, "an algebra")
    g = matched_pair.skew_group(mp, A, budget=a.budget)
    r = Report("skew-group")
    r.details.update(order=g.order, table=g.table)
    r.listings = [_psi_json(p) for p in g.elements]
    problem = matched_pair.check_group_laws(g)
    r.verdict("group_laws", problem is None)
    if problem:
        r.fail({"axiom": "group law", "detail": problem})
    if a.corollary:
        rep = hopf_modules.corollary_check(mp, A, budget=a.budget)
        r.verdict("corollary", rep.ok)
        r.details["corollary"] = rep.to_json()
    if a.figures:
        _plotting().group_figure(g.table, [str(n) for n in range(g.order)], "skew", a.figures)
    return r


def _module(arg, F, texts):
    return _expect(load_input(arg, F, texts), hopf_modules.HopfModule, arg, "a Hopf module")


def cmd_hopf_module_check(a, F, texts):
    hm = _module(a.file, F, texts)
    r = Report("hopf-module-check")
    cx = hopf_modules.validate_hopf_module(hm)
    r.verdict("hopf_module", cx is None)
    r.fail(cx)
    if cx is None:
        eq = hopf_modules.equalizer_coinvariants(hm)
        data = hopf_modules.coinvariants(hm)
        r.verdict("equalizer_is_image", eq == data.image_of_rho)
        r.details["coinvariant_dim"] = data.dim
    return r


def cmd_fundamental_iso(a, F, texts):
    hm = _module(a.file, F, texts)
    r = Report("fundamental-iso")
    cx = hopf_modules.validate_hopf_module(hm)
    r.verdict("hopf_module", cx is None)
    r.fail(cx)
    if cx is None:
        cx = hopf_modules.check_fundamental_iso(hm)
        r.verdict("fundamental_iso", cx is None)
        r.fail(cx)
        iso = hopf_modules.fundamental_iso(hm)
        r.details.update(coinvariant_dim=iso.data.dim, theta=_matrix_json(hm.field, iso.theta))
    return r


def cmd_reg_aut_action(a, F, texts):
    H = _expect(load_input(a.h, F, texts), HopfAlgebra, a.h, "a Hopf algebra")
    A = _expect(load_input(a.a, F, texts), Algebra, a.a, "an algebra")
    rep = hopf_modules.theorem53_check(H, A, samples=a.samples, seed=a.seed, budget=a.budget)
    r = Report("reg-aut-action")
    for k in ("alpha_round_trip", "beta_round_trip", "automorphisms_valid", "actions_valid", "reg_vs_aut", "aut_vs_actions"):
        r.verdict(k, getattr(rep, k))
    r.details.update(order=rep.order, pairs_checked=rep.pairs_checked, exhaustive=rep.exhaustive)
    if not rep.exhaustive:
        r.details["seed"] = a.seed
    for f in rep.failures:
        r.fail({"axiom": "transport", "detail": f})
    return r


def cmd_adjunction(a, F, texts):
    T = _expect(load_input(a.t, F, texts), Bialgebra, a.t, "a bialgebra")
    N = _expect(load_input(a.n, F, texts), Bialgebra, a.n, "a bialgebra")
    rep = duality.adjunction_check(T, N, budget=a.budget)
    r = Report("adjunction-check")
    r.details.update(left_count=rep.left_count, right_count=rep.right_count)
    r.verdict("counts_equal", rep.left_count == rep.right_count)
    r.verdict("round_trips", rep.round_trips)
    r.verdict("bijective", rep.bijective)
    return r


def cmd_tensor_alpha(a, F, texts):
    T = _expect(load_input(a.t, F, texts), Bialgebra, a.t, "a bialgebra")
    S = _expect(load_input(a.s, F, texts), Bialgebra, a.s, "a bialgebra")
    tc = duality.tensor_comparison_alpha(T, S)
    r = Report("tensor-alpha")
    r.verdict("square", tc.square_ok)
    r.verdict("composite_identity", tc.composite_identity)
    r.verdict("bijective", tc.bijective)
    r.details["dim"] = len(tc.alpha.matrix)
    for d in tc.details:
        r.fail({"axiom": "tensor comparison", "detail": str(d)})
    return r


def cmd_universality(a, F, texts):
    B = _expect(load_input(a.b, F, texts), Algebra, a.b, "an algebra")
    cand = duality.trivial_candidate(B) if a.candidate == "trivial" else duality.finite_dual_universal(B)
    tests = [(n, _expect(load_input(n, F, texts), Coalgebra, n, "a coalgebra")) for n in a.tests.split(",")]
    rep = duality.universality_check(cand, tests, budget=a.budget)
    r = Report("universality-check")
    r.verdict("factorizations", not rep.failures)
    r.verdict("unique", rep.unique)
    r.details["counts"] = rep.counts
    r.details["lemma1_injective"] = {n: duality.lemma1_injective(cand, C) for n, C in tests}
    for f in rep.failures:
        r.fail(f.to_json())
    return r


def cmd_catalog(a, F, texts):
    try:
        obj = catalog.get(a.name, F)
    except KeyError as e:
        raise InputError(str(e).strip('"')) from None
    except ValueError as e:
        raise InputError(f"{a.name}: {e}") from None
    r = Report("catalog")
    if a.figures and isinstance(obj, Algebra):
        _plotting().carrier_figure(obj, a.name, a.figures)
    return formats.dumps(obj) + "\n", r


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="Q", help="Q or Fp:<p> (used for catalog names)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="candidate budget for enumerations")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--out", help="write the report (or definition) here instead of stdout")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--figures", metavar="DIR", help="write heatmaps of multiplication tables into DIR")
    common.add_argument("--timing", action="store_true", help="append wall-clock timing to the report")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="bimeasure", description="Exact checks for (bi)measurings and Hopf modules.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *positional, help=None):
        sp = sub.add_parser(name, parents=[common], help=help)
        for arg in positional:
            sp.add_argument(arg)
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "file", help="check the axioms of any definition file")
    add("dual", cmd_dual, "file", help="emit the linear dual")
    add("abelianize", cmd_abelianize, "file", help="emit the quotient by the commutator ideal")
    add("cocom-part", cmd_cocom_part, "file", help="emit the largest cocommutative subcoalgebra")
    add("check-measuring", cmd_check_measuring, "file")
    add("check-bimeasuring", cmd_check_bimeasuring, "file")
    sp = add("enumerate-bimeasurings", cmd_enumerate)
    for flag in ("--n", "--t", "--a"):
        sp.add_argument(flag, required=True)
    sp.add_argument("--mode", choices=("solver", "raw"), default="solver")
    add("bismash", cmd_bismash, "file", help="emit the bismash product of a matched pair")
    add("check-skew", cmd_check_skew, "pair", "psi")
    sp = add("skew-group", cmd_skew_group, "pair")
    sp.add_argument("--a", default="k")
    sp.add_argument("--corollary", action="store_true", help="also compare with automorphisms and actions")
    add("hopf-module-check", cmd_hopf_module_check, "file")
    add("fundamental-iso", cmd_fundamental_iso, "file")
    sp = add("reg-aut-action", cmd_reg_aut_action)
    sp.add_argument("--h", required=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--samples", type=int, default=4000)
    sp = add("adjunction-check", cmd_adjunction)
    sp.add_argument("--t", required=True)
    sp.add_argument("--n", required=True)
    sp = add("tensor-alpha", cmd_tensor_alpha)
    sp.add_argument("--t", required=True)
    sp.add_argument("--s", required=True)
    sp = add("universality-check", cmd_universality)
    sp.add_argument("--b", required=True)
    sp.add_argument("--tests", default="k,kC2,kC3")
    sp.add_argument("--candidate", choices=("finite-dual", "trivial"), default="finite-dual")
    add("catalog", cmd_catalog, "name")
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    texts: list = [args.command]
    start = time.perf_counter()
    try:
        F = Field.parse(args.field)
        result = args.fn(args, F, texts)
    except (SchemaError, InputError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ValidationError as e:
        r = Report(args.command)
        r.fail(e.counterexample)
        r.verdict("input", False)
        _emit(r.render(args.format), args.out)
        return EXIT_FAIL
    except BimeasureError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT

    definition, report = result if isinstance(result, tuple) else (None, result)
    report.inputs = digest(*texts)
    if args.timing:
        report.timing = time.perf_counter() - start
    if definition is not None and report.ok:
        _emit(definition, args.out)
    else:
        _emit(report.render(args.format), args.out)
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
