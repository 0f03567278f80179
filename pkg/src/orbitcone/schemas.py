"""JSON schemas for CLI inputs; mirrored as files under docs/."""
from __future__ import annotations

RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
    ]
}

ROOT_SYSTEM = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Root system descriptor",
    "type": "object",
    "required": ["type"],
    "properties": {
        "type": {"type": "string", "pattern": r"^(A1\^\d+|A\([2-5]\))$"},
        "embedding": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
        "kappa_character": {"type": "array", "items": RATIONAL},
    },
    "additionalProperties": False,
}

DATUM = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Spherical datum",
    "type": "object",
    "required": ["rank", "spherical_roots", "kappa", "divisors"],
    "properties": {
        "name": {"type": "string"},
        "rank": {"type": "integer", "minimum": 0},
        "spherical_roots": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "kappa": {"type": "array", "items": RATIONAL},
        "divisors": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "v", "m"],
                "properties": {
                    "label": {"type": "string", "minLength": 1},
                    "v": {"type": "array", "items": {"type": "integer"}},
                    "m": {"type": "integer", "minimum": 0},
                    "g_stable": {"type": "boolean"},
                },
                "additionalProperties": False,
            },
        },
        "smooth": {"type": "boolean"},
        "root_system": {**{k: v for k, v in ROOT_SYSTEM.items() if k not in ("$schema", "title")},
                        "required": ["type", "embedding"]},
        "fan": {
            "type": "array",
            "description": "maximal cones, each a list of ray vectors",
            "items": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        },
    },
    "additionalProperties": False,
}

MATRIX = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Square matrix for the Cartan decomposition",
    "type": "object",
    "required": ["matrix"],
    "properties": {
        "matrix": {
            "type": "array", "minItems": 1, "maxItems": 5,
            "items": {"type": "array", "items": {"oneOf": [
                {"type": "number"},
                {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
            ]}},
        },
    },
    "additionalProperties": False,
}

SCHEMAS = {"datum": DATUM, "root_system": ROOT_SYSTEM, "matrix": MATRIX}
