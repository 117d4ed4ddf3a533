"""JSON schema for result records (``schema: "fthresh/1"``)."""

SCHEMA_ID = "fthresh/1"

_RATIONAL = {"type": "string", "pattern": r"^-?\d+/\d+$"}

JOB_SCHEMA = {
    "type": "object",
    "required": ["command", "prime", "vars", "f", "J", "params"],
    "properties": {
        "command": {"enum": ["nu", "threshold", "fpt", "fedder", "testideal", "jumps", "verify"]},
        "prime": {"type": "integer", "minimum": 2},
        "vars": {"type": "array", "items": {"type": "string"}},
        "f": {"type": "string"},
        "J": {"type": "array", "items": {"type": "string"}},
        "params": {"type": "object"},
    },
    "additionalProperties": False,
}

RECORD_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "fthresh result record",
    "type": "object",
    "required": ["schema", "version", "job", "job_hash"],
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "version": {"type": "string"},
        "job": JOB_SCHEMA,
        "job_hash": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
        "hash": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
        "outputs": {"type": "object"},
        "timing": {
            "type": "object",
            "required": ["seconds"],
            "properties": {"seconds": {"type": "number", "minimum": 0}},
        },
        "error": {
            "type": "object",
            "required": ["kind", "message", "exit_code"],
            "properties": {
                "kind": {"enum": ["parse", "precondition", "resource", "internal"]},
                "message": {"type": "string"},
                "exit_code": {"type": "integer"},
            },
        },
    },
    # a record is either a success (outputs + hash + timing) or an error entry
    "oneOf": [
        {"required": ["outputs", "hash", "timing"], "not": {"required": ["error"]}},
        {"required": ["error"], "not": {"required": ["outputs"]}},
    ],
    "additionalProperties": False,
}

RATIONAL_SCHEMA = _RATIONAL
