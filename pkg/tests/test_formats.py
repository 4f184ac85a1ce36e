import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bimeasure import catalog, formats
from bimeasure import hopf_modules as hm
from bimeasure.algebra import BilinearPairing, structure_tables
from bimeasure.errors import SchemaError, ValidationError

from conftest import F7, Q

DATA = Path(__file__).parent / "data"


def doc(**kw):
    base = {"field": {"kind": "Q"}, "kind": "algebra", "dim": 1, "mult": [[0, 0, 0, 1]], "unit": [[0, 1]]}
    base.update(kw)
    return json.dumps(base)


@pytest.mark.parametrize(
    "name", [pytest.param(n, marks=pytest.mark.heavy) if n == "kA5" else n for n in sorted(catalog.CARRIERS)]
)
def test_carrier_round_trip(field, name):
    c = catalog.get(name, field)
    back = formats.load(formats.dumps(c))
    assert structure_tables(back) == structure_tables(c)
    assert list(back.names) == list(c.names)


def test_matched_pair_and_module_round_trip():
    mp = catalog.get("s3_pair", F7)
    back = formats.load(formats.dumps(mp))
    assert back.act_on_t == mp.act_on_t and back.act_on_n == mp.act_on_n
    M = hm.trivial_module(catalog.get("kC3", F7), 2)
    back = formats.load(formats.dumps(M))
    assert back.action == M.action and back.coaction == M.coaction


def test_pairing_with_catalog_references():
    psi = formats.load((DATA / "sign_psi.json").read_text())
    assert isinstance(psi, BilinearPairing)
    assert psi.table[1][1] == (Q(-1),)
    again = formats.load(formats.dumps(psi))
    assert again.key() == psi.key()


def test_rational_coefficients_are_exact():
    a = formats.load(doc(mult=[[0, 0, 0, "2/2"]], unit=[[0, " 1 "]]))
    assert a.mult.get(0, 0, 0) == 1


@pytest.mark.parametrize("text,location", [
    ("{", "<input>:1:2"),
    (doc(kind="ring"), "<input>#/kind"),
    (json.dumps({"kind": "algebra"}), "<input>#/"),
    (doc(field={"kind": "Fp"}), "<input>#/field"),
    (doc(field={"kind": "Fp", "p": 9}), "<input>#/field"),
    (doc(mult=[[0, 0, 1, 1]]), "<input>#/mult/0/2"),
    (doc(mult=[[0, 0, 0, "x"]]), "<input>#/mult/0/3"),
    (doc(mult=[[0, 0, 0, "1/0"]]), "<input>#/mult/0/3"),
    (doc(mult=[[0, 0, 0]]), "<input>#/mult/0"),
    (doc(unit=[[3, 1]]), "<input>#/unit/0/0"),
    (doc(basis_names=["a", "b"]), "<input>#/basis_names"),
    (json.dumps({"field": {"kind": "Q"}, "kind": "pairing", "left": "nope", "right": "k", "target": "k", "psi": []}),
     "<input>#/left"),
    (json.dumps({"field": {"kind": "Q"}, "kind": "pairing", "left": "k", "right": "k", "target": "kC2*",
                 "psi": [[0, 0, 5, 1]]}), "<input>#/psi/0/2"),
    (json.dumps({"field": {"kind": "Q"}, "kind": "hopf_module", "h": "M2", "dim": 1, "action": [], "coaction": []}),
     "<input>#/h"),
])
def test_schema_errors_carry_locations(text, location):
    with pytest.raises(SchemaError) as e:
        formats.load(text)
    assert e.value.location == location


def test_nested_field_must_agree():
    inner = json.loads(doc())
    inner["field"] = {"kind": "Fp", "p": 5}
    text = json.dumps({"field": {"kind": "Q"}, "kind": "pairing", "left": inner, "right": "k", "target": "k", "psi": []})
    with pytest.raises(SchemaError) as e:
        formats.load(text)
    assert e.value.location == "<input>#/left/field"


def test_load_validated_reports_axiom():
    with pytest.raises(ValidationError) as e:
        formats.load_validated((DATA / "broken_unit.json").read_text())
    assert "unit" in e.value.counterexample.axiom


json_values = st.recursive(
    st.none() | st.booleans() | st.integers() | st.text(max_size=5),
    lambda inner: st.lists(inner, max_size=4) | st.dictionaries(st.text(max_size=6), inner, max_size=4),
    max_leaves=12,
)


@settings(max_examples=200, deadline=None)
@given(json_values)
def test_arbitrary_json_never_crashes(value):
    try:
        formats.load(json.dumps(value))
    except SchemaError:
        pass


@settings(max_examples=100, deadline=None)
@given(st.text(max_size=40))
def test_arbitrary_text_never_crashes(text):
    try:
        formats.load(text)
    except SchemaError:
        pass
