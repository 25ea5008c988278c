"""JSON Schemas (draft 2020-12) for every JSON document the CLI emits."""
from __future__ import annotations

_ID = {"type": "string", "minLength": 1}
_IDS = {"type": "array", "items": _ID}
_NAT = {"type": "integer", "minimum": 0}
_POS = {"type": "integer", "minimum": 1}
_DIR = {"enum": ["direct", "inverse"]}


def _object(props: dict, required: list | None = None, extra: bool = False) -> dict:
    return {
        "type": "object",
        "properties": props,
        "required": list(props) if required is None else required,
        "additionalProperties": extra,
    }


ALGEBRA = _object({
    "name": {"type": ["string", "null"]},
    "vertices": _IDS,
    "arrows": {"type": "array", "items": _object({"id": _ID, "src": _ID, "dst": _ID})},
    "relations": {"type": "array", "items": {"type": "array", "items": _ID, "minItems": 2}},
}, required=["vertices", "arrows"])

VALIDATION = _object({
    "gentle": {"type": "boolean"},
    "string_algebra": {"type": "boolean"},
    "finite_dimensional": {"type": "boolean"},
    "connected": {"type": "boolean"},
    "axioms": {"type": "array", "items": _object({
        "number": {"type": "integer", "minimum": 1, "maximum": 7},
        "description": {"type": "string"},
        "ok": {"type": "boolean"},
        "witness": {"type": ["string", "null"]},
    })},
    "summary": {"type": "string"},
})

_POSITION = {"type": "array", "items": _POS, "minItems": 2, "maxItems": 2}

NORMAL_FORM = _object({
    "m": {"type": "array", "items": _POS},
    "pairs": {"type": "array", "items": {"type": "array", "items": _POSITION, "minItems": 2, "maxItems": 2}},
    "labels": {"type": "object", "patternProperties": {r"^\d+,\d+$": _ID}, "additionalProperties": False},
}, required=["m", "pairs"])

_THREAD = _object({"arrows": _IDS, "anchor": {"type": ["string", "null"]}})
_GPROJ = _object({"projectives": _IDS, "extras": _IDS})

THREADS = _object({
    "permitted": {"type": "array", "items": _THREAD},
    "forbidden": {"type": "array", "items": _THREAD},
    "cycles": {"type": "array", "items": _IDS},
    "gproj": _GPROJ,
})

GPROJ = _GPROJ

LETTER = _object({"arrow": _ID, "dir": _DIR})
HOMOTOPY_LETTER = _object({"path": {"type": "array", "items": _ID, "minItems": 1}, "dir": _DIR})

STRING = {
    "oneOf": [
        {"type": "array", "items": LETTER, "minItems": 1},
        {"type": "array", "items": _object({"vertex": _ID}), "minItems": 1, "maxItems": 1},
    ]
}
STRINGS = {"type": "array", "items": STRING}
BAND = {"type": "array", "items": LETTER, "minItems": 1}
BANDS = {"type": "array", "items": BAND}
HOMOTOPY_BAND = {"type": "array", "items": HOMOTOPY_LETTER, "minItems": 1}
HOMOTOPY_BANDS = {"type": "array", "items": HOMOTOPY_BAND}

BAND_DECISION = _object({"has_band": {"type": "boolean"}, "witness": {"oneOf": [{"type": "null"}, BAND]}})
HOMOTOPY_BAND_DECISION = _object({
    "has_homotopy_band": {"type": "boolean"},
    "witness": {"oneOf": [{"type": "null"}, HOMOTOPY_BAND]},
})

REP_TYPE = _object({
    "rep_type": {"enum": ["Finite", "Infinite"]},
    "indecomposables": {"type": ["integer", "null"], "minimum": 1},
})
DERIVED_TYPE = _object({"derived_type": {"enum": ["Discrete", "NotDiscrete"]}})

INFO = _object({
    "name": {"type": ["string", "null"]},
    "vertices": _NAT,
    "arrows": _NAT,
    "relations": _NAT,
    "dimension": _NAT,
    "threads": THREADS,
    "cycles": {"type": "array", "items": _IDS},
    "finite_global_dimension": {"type": "boolean"},
    "rep_type": REP_TYPE["properties"]["rep_type"],
    "indecomposables": REP_TYPE["properties"]["indecomposables"],
    "derived_type": DERIVED_TYPE["properties"]["derived_type"],
})

_SLOT = {"type": "array", "items": _NAT, "minItems": 2, "maxItems": 2}
_INVARIANTS = _object({"chi": {"type": "integer"}, "b": _NAT, "g": _NAT, "closed": _NAT, "open": _NAT})

SURFACE = _object({
    "polygons": {"type": "array", "items": _object({
        "kind": {"enum": ["chain", "cap"]},
        "edges": {"type": "array", "prefixItems": [{"const": "boundary"}], "items": {"type": "string"}, "minItems": 1},
        "angles": {"type": "array", "items": {"type": "string"}},
        "origin": {"type": "array", "items": {"type": ["string", "integer"]}},
    }, required=["kind", "edges", "angles"])},
    "glue": {"type": "array", "items": {"type": "array", "items": _SLOT, "minItems": 2, "maxItems": 2}},
    "invariants": {"oneOf": [_INVARIANTS, {"type": "array", "items": _INVARIANTS}]},
}, required=["polygons", "glue"])

ISO = _object({
    "isomorphic": {"type": "boolean"},
    "vertex_map": {"type": ["object", "null"], "additionalProperties": _ID},
    "arrow_map": {"type": ["object", "null"], "additionalProperties": _ID},
})

_TYPE_PAIR = _object({"rep": REP_TYPE["properties"]["rep_type"], "derived": DERIVED_TYPE["properties"]["derived_type"]})

VERIFY = _object({
    "config": _object({
        "seed": {"type": "integer"},
        "count": _NAT,
        "ops_depth": _NAT,
        "max_chains": _POS,
        "max_chain_len": _POS,
        "pairing_density": {"type": "number", "minimum": 0, "maximum": 1},
        "sample_every": _NAT,
        "inject_fault": {"type": "boolean"},
    }),
    "records": {"type": "array", "items": _object({
        "seed": {"type": "integer"},
        "summary": _object({"vertices": _NAT, "arrows": _NAT, "relations": _NAT}),
        "types": {"type": "object", "additionalProperties": _TYPE_PAIR},
        "mismatches": {"type": "array", "items": {"type": "string"}},
        "surface_checked": {"type": "boolean"},
        "seconds": {"type": "number", "minimum": 0},
    })},
    "mismatches": {"type": "array", "items": {"type": "string"}},
    "seconds": {"type": "number", "minimum": 0},
})

# subcommand -> schema of its ``--json`` output
BY_COMMAND = {
    "validate": VALIDATION,
    "info": INFO,
    "normal-form": NORMAL_FORM,
    "bd": ALGEBRA,
    "cma": ALGEBRA,
    "compose": ALGEBRA,
    "gen": ALGEBRA,
    "threads": THREADS,
    "gproj": GPROJ,
    "strings": STRINGS,
    "bands": BAND_DECISION,
    "bands --enumerate": BANDS,
    "hbands": HOMOTOPY_BAND_DECISION,
    "hbands --enumerate": HOMOTOPY_BANDS,
    "rep-type": REP_TYPE,
    "derived-type": DERIVED_TYPE,
    "surface": SURFACE,
    "iso": ISO,
    "verify": VERIFY,
}
