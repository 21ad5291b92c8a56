"""Independent reference implementations used as test oracles.

Nothing here imports the parser's own precedence data: the table below is
restated from the language definition so that a typo on either side shows
up as a mismatch.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from qasm3front import ast
from qasm3front.span import SourceSpan

# binary operator -> binding level; larger binds tighter
PRECEDENCE = {
    "||": 1, "&&": 2, "|": 3, "^": 4, "&": 5,
    "==": 6, "!=": 6,
    "<": 7, "<=": 7, ">": 7, ">=": 7,
    "<<": 8, ">>": 8,
    "+": 9, "-": 9,
    "*": 10, "/": 10, "%": 10,
    "**": 12,
}
RIGHT_ASSOC = {"**"}
UNARY_LEVEL = 11
UNARY_OPS = ("-", "~", "!")

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "src" / "qasm3front" / "corpus"
NEGATIVE = Path(__file__).resolve().parent / "fixtures" / "negative"
_NOSPAN = SourceSpan.empty()


# -- precedence oracle ---------------------------------------------------------
#
# A flat expression is a list of items: operand names (str), parenthesized
# groups (list) and operators (Op). The oracle finds the split point by
# exhaustive scan instead of climbing.


@dataclass(frozen=True)
class Op:
    text: str
    unary: bool


Item = Union[str, list, Op]


def _random_tree(rng: random.Random, depth: int):
    if depth == 0 or rng.random() < 0.25:
        return rng.choice("abcdefgh")
    if rng.random() < 0.2:
        return (rng.choice(UNARY_OPS), _random_tree(rng, depth - 1))
    return (rng.choice(list(PRECEDENCE)), _random_tree(rng, depth - 1), _random_tree(rng, depth - 1))


def _flatten(tree, rng: random.Random, paren_rate: float) -> list[Item]:
    if isinstance(tree, str):
        return [tree]
    if len(tree) == 2:
        items = [Op(tree[0], True)] + _flatten(tree[1], rng, paren_rate)
    else:
        items = (_flatten(tree[1], rng, paren_rate) + [Op(tree[0], False)]
                 + _flatten(tree[2], rng, paren_rate))
    return [items] if rng.random() < paren_rate else items


def random_flat_expression(rng: random.Random, max_depth: int = 6, paren_rate: float = 0.1) -> list[Item]:
    return _flatten(_random_tree(rng, rng.randint(1, max_depth)), rng, paren_rate)


def flat_text(items: list[Item]) -> str:
    parts = []
    for item in items:
        if isinstance(item, Op):
            parts.append(item.text)
        elif isinstance(item, list):
            parts.append("(" + flat_text(item) + ")")
        else:
            parts.append(item)
    return " ".join(parts)


def oracle_tree(items: list[Item]) -> ast.Expression:
    """Expected AST for ``items`` by brute-force choice of the outermost operator."""
    binaries = [(i, PRECEDENCE[it.text]) for i, it in enumerate(items)
                if isinstance(it, Op) and not it.unary]
    loose = [(i, lvl) for i, lvl in binaries if lvl < UNARY_LEVEL]
    if loose:
        lowest = min(lvl for _, lvl in loose)
        positions = [i for i, lvl in loose if lvl == lowest]
        return _split(items, positions[-1])  # every loose level is left associative
    if isinstance(items[0], Op):
        return ast.Unary(items[0].text, oracle_tree(items[1:]), span=_NOSPAN)
    if binaries:
        return _split(items, binaries[0][0])  # only '**' remains: right associative
    (only,) = items
    return oracle_tree(only) if isinstance(only, list) else ast.Identifier(only, span=_NOSPAN)


def _split(items: list[Item], i: int) -> ast.Expression:
    return ast.Binary(items[i].text, oracle_tree(items[:i]), oracle_tree(items[i + 1:]), span=_NOSPAN)


def parenthesize(node: ast.Expression) -> str:
    if isinstance(node, ast.Binary):
        return f"({parenthesize(node.left)} {node.op} {parenthesize(node.right)})"
    if isinstance(node, ast.Unary):
        return f"({node.op} {parenthesize(node.operand)})"
    return node.name


# -- node counting -------------------------------------------------------------


def count_nodes(value) -> int:
    """Recursive node count over dataclass fields, independent of ast.walk."""
    if isinstance(value, ast.Node):
        return 1 + sum(count_nodes(getattr(value, name))
                       for name in vars(value) if name != "span")
    if isinstance(value, tuple):
        return sum(count_nodes(v) for v in value)
    return 0


# -- negative fixtures ---------------------------------------------------------

_EXPECT = re.compile(r"//\s*expect:\s*(\S+)\s+(\d+)")


def negative_fixtures() -> list[tuple[Path, str, int]]:
    out = []
    for path in sorted(NEGATIVE.glob("*.qasm")):
        m = _EXPECT.match(path.read_text(encoding="utf-8"))
        out.append((path, m.group(1), int(m.group(2))))
    return out


def corpus_files() -> list[Path]:
    return sorted(CORPUS.glob("*.qasm"))
