"""Terms over a finite signature, written as s-expressions.

Grammar::

    term := VAR | CONST | "(" OP term* ")"

An operation symbol of arity 0 may be written bare or as ``(c)``.  Every
application must supply exactly as many arguments as the symbol's arity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import InputError


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    op: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.op
        return "(" + " ".join([self.op, *map(str, self.args)]) + ")"


Term = Var | App

_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise InputError(f"cannot tokenize term at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_term(text: str, arities: Mapping[str, int], variables: Sequence[str]) -> Term:
    tokens = _tokenize(text)
    variables = set(variables)
    clash = variables & set(arities)
    if clash:
        raise InputError(f"names used both as variable and operation: {sorted(clash)}")

    def parse(i):
        if i >= len(tokens):
            raise InputError("unexpected end of term")
        tok = tokens[i]
        if tok == "(":
            if i + 1 >= len(tokens) or tokens[i + 1] in "()":
                raise InputError("expected an operation symbol after '('")
            op = tokens[i + 1]
            if op not in arities:
                raise InputError(f"unknown operation {op!r}")
            args = []
            j = i + 2
            while j < len(tokens) and tokens[j] != ")":
                arg, j = parse(j)
                args.append(arg)
            if j >= len(tokens):
                raise InputError("missing ')'")
            if len(args) != arities[op]:
                raise InputError(f"{op} takes {arities[op]} arguments, got {len(args)}")
            return App(op, tuple(args)), j + 1
        if tok == ")":
            raise InputError("unexpected ')'")
        if tok in variables:
            return Var(tok), i + 1
        if arities.get(tok) == 0:
            return App(tok), i + 1
        if tok in arities:
            raise InputError(f"{tok} takes {arities[tok]} arguments; use parentheses")
        raise InputError(f"unbound symbol {tok!r}")

    term, end = parse(0)
    if end != len(tokens):
        raise InputError(f"trailing input after term: {' '.join(tokens[end:])}")
    return term


def term_variables(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    out = set()
    for a in t.args:
        out |= term_variables(a)
    return out


def depth(t: Term) -> int:
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(depth(a) for a in t.args)
