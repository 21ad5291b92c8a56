"""AST <-> JSON.

Every node becomes an object whose first key is ``kind`` and last key is
``span`` (a 6-element array), with the node's fields in declaration order
in between. Tuples become arrays and come back as tuples.
"""

from __future__ import annotations

import json

from .. import ast
from ..span import SourceSpan

FORMAT_VERSION = 1


class DeserializeError(ValueError):
    pass


def to_data(value):
    if isinstance(value, ast.Node):
        data = {"kind": value.kind}
        for f in ast.node_fields(value):
            data[f.name] = to_data(getattr(value, f.name))
        data["span"] = value.span.as_list()
        return data
    if isinstance(value, tuple):
        return [to_data(item) for item in value]
    return value


def serialize_program(program: ast.Program, pretty: bool = False) -> str:
    document = {"format_version": FORMAT_VERSION, "program": to_data(program)}
    if pretty:
        return json.dumps(document, indent=2, ensure_ascii=False)
    return json.dumps(document, separators=(",", ":"), ensure_ascii=False)


def _span(raw) -> SourceSpan:
    if not (isinstance(raw, list) and len(raw) == 6
            and all(type(x) is int for x in raw)):
        raise DeserializeError(f"malformed span {raw!r}")
    try:
        return SourceSpan(*raw)
    except ValueError as exc:
        raise DeserializeError(str(exc)) from None


def from_data(data):
    if isinstance(data, dict):
        kind = data.get("kind")
        cls = ast.NODE_TYPES.get(kind) if isinstance(kind, str) else None
        if cls is None:
            raise DeserializeError(f"unknown node kind {kind!r}")
        if "span" not in data:
            raise DeserializeError(f"{kind} node is missing its span")
        kwargs = {}
        for f in ast.dataclass_fields(cls):
            if f.name not in data:
                raise DeserializeError(f"{kind} node is missing field {f.name!r}")
            kwargs[f.name] = from_data(data[f.name])
        extra = set(data) - set(kwargs) - {"kind", "span"}
        if extra:
            raise DeserializeError(f"{kind} node has unexpected fields {sorted(extra)}")
        return cls(**kwargs, span=_span(data["span"]))
    if isinstance(data, list):
        return tuple(from_data(item) for item in data)
    return data


def deserialize_program(text: str) -> ast.Program:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DeserializeError(f"invalid JSON: {exc}") from None
    if not isinstance(document, dict) or "program" not in document:
        raise DeserializeError("not an AST document")
    version = document.get("format_version")
    if type(version) is not int or version < 1:
        raise DeserializeError(f"bad format_version {version!r}")
    if version > FORMAT_VERSION:
        raise DeserializeError(f"format_version {version} is newer than supported ({FORMAT_VERSION})")
    program = from_data(document["program"])
    if not isinstance(program, ast.Program):
        raise DeserializeError("document root is not a Program")
    return program
