"""JSON Schemas (draft 2020-12) for every document the toolkit reads or writes."""

from __future__ import annotations

import jsonschema

_RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
_INT_PAIR = {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}

PERMUTATION = {
    "type": "object",
    "required": ["n", "window"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "window": {"type": "array", "items": {"type": "integer"}, "minItems": 1},
    },
    "additionalProperties": False,
}

MATRIX = {
    "type": "object",
    "required": ["n", "coeffs"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "coeffs": {
            "type": "object",
            "propertyNames": {"pattern": r"^-?\d+$"},
            "additionalProperties": {"type": "array", "items": {"type": "array", "items": _RATIONAL}},
        },
    },
    "additionalProperties": False,
}

ESSENTIAL_BOX = {
    "type": "object",
    "required": ["i", "j", "l_min", "r_target"],
    "properties": {
        "i": {"type": "integer"}, "j": {"type": "integer"},
        "l_min": {"type": "integer", "minimum": 0}, "r_target": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}

SEARCH = {
    "type": "object",
    "required": ["outcome", "l_start", "l_max", "target", "best_value", "l_witness", "trace"],
    "properties": {
        "outcome": {"enum": ["reached", "exhausted"]},
        "l_start": {"type": "integer"}, "l_max": {"type": "integer"},
        "target": {"type": "integer"}, "best_value": {"type": "integer"},
        "l_witness": {"type": ["integer", "null"]},
        "trace": {"type": "array", "items": {"type": "array", "items": {"type": "integer"},
                                             "minItems": 3, "maxItems": 3}},
    },
    "additionalProperties": False,
}

MEMBERSHIP_REPORT = {
    "type": "object",
    "required": ["w", "matrix_id", "verdict", "l_max", "oracle_verdict", "boxes"],
    "properties": {
        "w": PERMUTATION,
        "matrix_id": {"type": "string"},
        "verdict": {"enum": ["certified_member", "undetermined"]},
        "l_max": {"type": ["integer", "null"]},
        "oracle_verdict": {"type": ["boolean", "null"]},
        "boxes": {"type": "array", "items": {
            "type": "object", "required": ["box", "search"],
            "properties": {"box": ESSENTIAL_BOX, "search": SEARCH},
            "additionalProperties": False,
        }},
    },
    "additionalProperties": False,
}

CROSSCHECK_RECORD = {
    "type": "object",
    "required": ["trial", "w_slot", "config", "u", "w", "matrix_id", "theorem_verdict",
                 "oracle_verdict", "boxes", "discrepancy", "wall_time"],
    "properties": {
        "trial": {"type": "integer", "minimum": 0},
        "w_slot": {"type": "integer", "minimum": 0},
        "config": {"type": "object"},
        "u": PERMUTATION,
        "w": PERMUTATION,
        "matrix_id": {"type": "string"},
        "theorem_verdict": {"enum": ["certified_member", "undetermined"]},
        "oracle_verdict": {"type": "boolean"},
        "boxes": {"type": "array", "items": {
            "type": "object",
            "required": ["i", "j", "l_min", "r_target", "finitary_best", "l_witness", "l_max", "oracle_d"],
            "properties": {
                "i": {"type": "integer"}, "j": {"type": "integer"},
                "l_min": {"type": "integer"}, "r_target": {"type": "integer"},
                "finitary_best": {"type": "integer"}, "l_witness": {"type": ["integer", "null"]},
                "l_max": {"type": "integer"}, "oracle_d": {"type": "integer"},
            },
            "additionalProperties": False,
        }},
        "discrepancy": {"type": "boolean"},
        "wall_time": {"type": "number", "minimum": 0},
    },
    "additionalProperties": False,
}

GENERATORS = {
    "type": "object",
    "required": ["w", "box", "l", "l_min", "rows", "cols", "minor_size", "count", "truncated", "minors"],
    "properties": {
        "w": PERMUTATION,
        "box": {"type": "object", "required": ["i", "j"]},
        "l": {"type": "integer"}, "l_min": {"type": "integer"},
        "rows": _INT_PAIR, "cols": _INT_PAIR,
        "minor_size": {"type": "integer", "minimum": 1},
        "count": {"type": "integer", "minimum": 0},
        "truncated": {"type": "boolean"},
        "minors": {"type": "array", "items": {
            "type": "object", "required": ["I", "J"],
            "properties": {"I": {"type": "array", "items": {"type": "integer"}},
                           "J": {"type": "array", "items": {"type": "integer"}}},
        }},
    },
    "additionalProperties": False,
}

INSTANCE = {
    "type": "object",
    "required": ["w", "u", "b_minus", "b_plus", "M", "label", "config"],
    "properties": {
        "w": PERMUTATION, "u": PERMUTATION, "b_minus": MATRIX, "b_plus": MATRIX, "M": MATRIX,
        "label": {"type": "boolean"}, "config": {"type": "object"},
    },
    "additionalProperties": False,
}

SCHEMAS = {
    "permutation": PERMUTATION,
    "matrix": MATRIX,
    "essential_box": ESSENTIAL_BOX,
    "membership_report": MEMBERSHIP_REPORT,
    "crosscheck_record": CROSSCHECK_RECORD,
    "generators": GENERATORS,
    "instance": INSTANCE,
}


def validate(doc, kind: str) -> None:
    """Raise jsonschema.ValidationError when ``doc`` does not match schema ``kind``."""
    jsonschema.validate(doc, SCHEMAS[kind])
