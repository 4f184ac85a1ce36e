"""Definition files: one JSON schema for every carrier kind.

Sparse order-3 data is a list of ``[i, j, k, "c"]`` entries; vectors are
``[i, "c"]`` lists; the antipode is ``[row, col, "c"]``.  Coefficients are
integers or strings (``"3"``, ``"-1/2"``).  Nested carriers (the two sides of
a pairing, the two halves of a matched pair, the Hopf algebra of a module)
may be given inline or as a catalog name.
"""

from __future__ import annotations

import json
from typing import Any

import jsonschema

from . import catalog
from . import linalg as la
from .algebra import Algebra, Bialgebra, BilinearPairing, Coalgebra, HopfAlgebra, kind_of, validate  # noqa: F401
from .errors import SchemaError, ValidationError
from .field import Field
from .linalg import Tensor3

COEFF = {"anyOf": [{"type": "integer"}, {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*-?\d+)?\s*$"}]}


def _entries(n: int) -> dict:
    return {"type": "array", "items": {"type": "array", "minItems": n, "maxItems": n,
                                       "prefixItems": [{"type": "integer", "minimum": 0}] * (n - 1) + [COEFF]}}


FIELD = {
    "type": "object",
    "properties": {"kind": {"enum": ["Q", "Fp"]}, "p": {"type": "integer", "minimum": 2}},
    "required": ["kind"],
    "if": {"properties": {"kind": {"const": "Fp"}}},
    "then": {"required": ["p"]},
}

CARRIER_REF = {"anyOf": [{"type": "string"}, {"type": "object"}]}

SCHEMA = {
    "type": "object",
    "properties": {
        "field": FIELD,
        "kind": {"enum": ["algebra", "coalgebra", "bialgebra", "hopf", "pairing", "matched_pair", "hopf_module"]},
        "dim": {"type": "integer", "minimum": 0},
        "basis_names": {"type": "array", "items": {"type": "string"}},
        "mult": _entries(4),
        "comult": _entries(4),
        "unit": _entries(2),
        "counit": _entries(2),
        "antipode": _entries(3),
        "left": CARRIER_REF,
        "right": CARRIER_REF,
        "target": CARRIER_REF,
        "psi": _entries(4),
        "n": CARRIER_REF,
        "t": CARRIER_REF,
        "act_on_t": _entries(4),
        "act_on_n": _entries(4),
        "h": CARRIER_REF,
        "action": _entries(4),
        "coaction": _entries(4),
        "name": {"type": "string"},
    },
    "required": ["field", "kind"],
    "allOf": [
        {"if": {"properties": {"kind": {"enum": ["algebra", "bialgebra", "hopf"]}}},
         "then": {"required": ["dim", "mult", "unit"]}},
        {"if": {"properties": {"kind": {"enum": ["coalgebra", "bialgebra", "hopf"]}}},
         "then": {"required": ["dim", "comult", "counit"]}},
        {"if": {"properties": {"kind": {"const": "hopf"}}}, "then": {"required": ["antipode"]}},
        {"if": {"properties": {"kind": {"const": "pairing"}}}, "then": {"required": ["left", "right", "target", "psi"]}},
        {"if": {"properties": {"kind": {"const": "matched_pair"}}},
         "then": {"required": ["n", "t", "act_on_t", "act_on_n"]}},
        {"if": {"properties": {"kind": {"const": "hopf_module"}}},
         "then": {"required": ["h", "dim", "action", "coaction"]}},
    ],
}


def _pointer(path) -> str:
    return "/" + "/".join(str(p) for p in path) if path else "/"


def loads(text: str, source: str = "<input>") -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{source}:{e.lineno}:{e.colno}", f"invalid JSON: {e.msg}") from None
    try:
        check_schema(doc)
    except SchemaError as e:
        raise SchemaError(f"{source}#{e.location}", e.message) from None
    return doc


def check_schema(doc: Any) -> None:
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (list(e.absolute_path), e.message))
    if errors:
        e = errors[0]
        raise SchemaError(_pointer(e.absolute_path), e.message)


def parse_field(obj: dict, where: str = "/field") -> Field:
    try:
        return Field.rationals() if obj["kind"] == "Q" else Field.prime(int(obj["p"]))
    except ValueError as e:
        raise SchemaError(where, str(e)) from None


def _coeff(F: Field, raw, where: str):
    try:
        return F(raw)
    except (ValueError, ZeroDivisionError) as e:
        raise SchemaError(where, f"bad coefficient {raw!r}: {e}") from None


def _tensor(F: Field, doc: dict, key: str, dims: tuple, base: str) -> Tensor3:
    entries = []
    for n, row in enumerate(doc.get(key, [])):
        where = f"{base}/{key}/{n}"
        for pos, (i, d) in enumerate(zip(row[:3], dims)):
            if i >= d:
                raise SchemaError(f"{where}/{pos}", f"index {i} out of range (dimension {d})")
        entries.append((row[0], row[1], row[2], _coeff(F, row[3], f"{where}/3")))
    return Tensor3(F, dims, entries)


def _vector(F: Field, doc: dict, key: str, d: int, base: str) -> list:
    v = [F.zero] * d
    for n, (i, c) in enumerate(doc.get(key, [])):
        if i >= d:
            raise SchemaError(f"{base}/{key}/{n}/0", f"index {i} out of range (dimension {d})")
        v[i] = F.add(v[i], _coeff(F, c, f"{base}/{key}/{n}/1"))
    return v


def _matrix(F: Field, doc: dict, key: str, d: int, base: str) -> list:
    m = la.zeros(F, d, d)
    for n, (r, c, x) in enumerate(doc.get(key, [])):
        for pos, i in enumerate((r, c)):
            if i >= d:
                raise SchemaError(f"{base}/{key}/{n}/{pos}", f"index {i} out of range (dimension {d})")
        m[r][c] = F.add(m[r][c], _coeff(F, x, f"{base}/{key}/{n}/2"))
    return m


def _names(doc: dict, d: int, base: str):
    names = doc.get("basis_names")
    if names is not None and len(names) != d:
        raise SchemaError(f"{base}/basis_names", f"expected {d} names, got {len(names)}")
    return names


def build_carrier(doc: dict, base: str = "", F: Field | None = None):
    F = F or parse_field(doc["field"], f"{base}/field")
    kind = doc["kind"]
    d = doc["dim"]
    names = _names(doc, d, base)
    mult = unit = comult = counit = None
    if kind in ("algebra", "bialgebra", "hopf"):
        mult = _tensor(F, doc, "mult", (d, d, d), base)
        unit = _vector(F, doc, "unit", d, base)
    if kind in ("coalgebra", "bialgebra", "hopf"):
        comult = _tensor(F, doc, "comult", (d, d, d), base)
        counit = _vector(F, doc, "counit", d, base)
    if kind == "algebra":
        return Algebra(F, mult, unit, names)
    if kind == "coalgebra":
        return Coalgebra(F, comult, counit, names)
    if kind == "bialgebra":
        return Bialgebra(F, mult, unit, comult, counit, names)
    if kind == "hopf":
        return HopfAlgebra(F, mult, unit, comult, counit, _matrix(F, doc, "antipode", d, base), names)
    raise SchemaError(f"{base}/kind", f"{kind!r} is not a carrier kind")


def _resolve(ref, F: Field, where: str):
    if isinstance(ref, str):
        try:
            return catalog.get(ref, F)
        except (KeyError, ValueError) as e:
            raise SchemaError(where, str(e).strip('"')) from None
    try:
        check_schema(ref)
    except SchemaError as e:
        raise SchemaError(where + e.location.rstrip("/"), e.message) from None
    sub_field = parse_field(ref["field"], f"{where}/field")
    if sub_field != F:
        raise SchemaError(f"{where}/field", f"field {sub_field!r} differs from the enclosing {F!r}")
    return build(ref, where, F)


def build(doc: dict, base: str = "", F: Field | None = None):
    """Turn a schema-checked document into a carrier, pairing, matched pair or Hopf module."""
    F = F or parse_field(doc["field"], f"{base}/field")
    kind = doc["kind"]
    if kind == "pairing":
        left = _resolve(doc["left"], F, f"{base}/left")
        right = _resolve(doc["right"], F, f"{base}/right")
        target = _resolve(doc["target"], F, f"{base}/target")
        if not isinstance(target, Algebra):
            raise SchemaError(f"{base}/target", "target must be an algebra")
        t = _tensor(F, doc, "psi", (left.dim, right.dim, target.dim), base)
        table = [[[t.get(i, j, a) for a in range(target.dim)] for j in range(right.dim)] for i in range(left.dim)]
        return BilinearPairing(left, right, target, table)
    if kind == "matched_pair":
        from .matched_pair import MatchedPair

        N = _resolve(doc["n"], F, f"{base}/n")
        T = _resolve(doc["t"], F, f"{base}/t")
        for key, c in (("n", N), ("t", T)):
            if not isinstance(c, HopfAlgebra):
                raise SchemaError(f"{base}/{key}", "must be a Hopf algebra")
        on_t = _tensor(F, doc, "act_on_t", (N.dim, T.dim, T.dim), base)
        on_n = _tensor(F, doc, "act_on_n", (N.dim, T.dim, N.dim), base)
        return MatchedPair(N, T, on_t, on_n, doc.get("name", "pair"))
    if kind == "hopf_module":
        from .hopf_modules import HopfModule

        H = _resolve(doc["h"], F, f"{base}/h")
        if not isinstance(H, HopfAlgebra):
            raise SchemaError(f"{base}/h", "must be a Hopf algebra")
        d = doc["dim"]
        action = _tensor(F, doc, "action", (H.dim, d, d), base)
        coaction = _tensor(F, doc, "coaction", (d, H.dim, d), base)
        return HopfModule(H, d, action, coaction, doc.get("name", "M"))
    return build_carrier(doc, base, F)


def load(text: str, source: str = "<input>"):
    """Parse and build; schema locations are reported as ``source#/json/pointer``."""
    doc = loads(text, source)
    try:
        return build(doc)
    except SchemaError as e:
        raise SchemaError(f"{source}#{e.location}", e.message) from None


# -- serialization ---------------------------------------------------------------

def _fmt(F: Field, c) -> str:
    return F.format(c)


def _tensor_json(F: Field, t: Tensor3) -> list:
    return [[i, j, k, _fmt(F, c)] for (i, j, k), c in t.entries.items()]


def _vector_json(F: Field, v) -> list:
    return [[i, _fmt(F, c)] for i, c in enumerate(v) if c != 0]


def dump_carrier(c) -> dict:
    F = c.field
    kind = kind_of(c)
    doc: dict = {"field": F.to_json(), "kind": kind, "dim": c.dim, "basis_names": list(c.names)}
    if isinstance(c, Algebra):
        doc["mult"] = _tensor_json(F, c.mult)
        doc["unit"] = _vector_json(F, c.unit)
    if isinstance(c, Coalgebra):
        doc["comult"] = _tensor_json(F, c.comult)
        doc["counit"] = _vector_json(F, c.counit)
    if isinstance(c, HopfAlgebra):
        doc["antipode"] = [[r, k, _fmt(F, x)] for r, row in enumerate(c.antipode) for k, x in enumerate(row) if x != 0]
    return doc


def dump(obj) -> dict:
    from .hopf_modules import HopfModule
    from .matched_pair import MatchedPair

    if isinstance(obj, BilinearPairing):
        F = obj.field
        psi = [[i, j, a, _fmt(F, x)] for i, row in enumerate(obj.table) for j, v in enumerate(row) for a, x in enumerate(v) if x != 0]
        return {"field": F.to_json(), "kind": "pairing", "left": dump_carrier(obj.left), "right": dump_carrier(obj.right),
                "target": dump_carrier(obj.target), "psi": psi}
    if isinstance(obj, MatchedPair):
        F = obj.field
        return {"field": F.to_json(), "kind": "matched_pair", "name": obj.name, "n": dump_carrier(obj.N),
                "t": dump_carrier(obj.T), "act_on_t": _tensor_json(F, obj.act_on_t), "act_on_n": _tensor_json(F, obj.act_on_n)}
    if isinstance(obj, HopfModule):
        F = obj.field
        return {"field": F.to_json(), "kind": "hopf_module", "name": obj.name, "h": dump_carrier(obj.H), "dim": obj.dim,
                "action": _tensor_json(F, obj.action), "coaction": _tensor_json(F, obj.coaction)}
    return dump_carrier(obj)


def dumps(obj) -> str:
    return json.dumps(dump(obj), indent=1, sort_keys=True)


def load_validated(text: str, source: str = "<input>"):
    obj = load(text, source)
    if isinstance(obj, (Algebra, Coalgebra)):
        cx = validate(obj)
        if cx is not None:
            raise ValidationError(cx)
    return obj
