"""Canonical JSON interchange for ASTs and a canonical OpenQASM text renderer."""

from .json_codec import (
    FORMAT_VERSION, DeserializeError, deserialize_program, from_data, serialize_program, to_data,
)
from .text import render_canonical, render_expression, render_type

__all__ = [
    "FORMAT_VERSION", "DeserializeError", "deserialize_program", "from_data",
    "serialize_program", "to_data", "render_canonical", "render_expression", "render_type",
]
