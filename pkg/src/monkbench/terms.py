"""Boolean terms: the input language for elements of a presented algebra.

Terms are syntax only; identity of the elements they denote is extensional
(see monkbench.ba).  Generators are named by natural-number labels.  The
same tree type doubles as a term in abstract variables (labels 1..n) that
gets instantiated by substitution.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from .errors import UsageError


class Term:
    """Base class; concrete nodes are Zero, One, Gen, Not, And, Or."""

    __slots__ = ()

    def __and__(self, other: "Term") -> "Term":
        return And(self, other)

    def __or__(self, other: "Term") -> "Term":
        return Or(self, other)

    def __invert__(self) -> "Term":
        return Not(self)

    def __sub__(self, other: "Term") -> "Term":
        return And(self, Not(other))


@dataclass(frozen=True)
class Zero(Term):
    __slots__ = ()


@dataclass(frozen=True)
class One(Term):
    __slots__ = ()


@dataclass(frozen=True)
class Gen(Term):
    __slots__ = ("label",)
    label: int


@dataclass(frozen=True)
class Not(Term):
    __slots__ = ("arg",)
    arg: Term


@dataclass(frozen=True)
class And(Term):
    __slots__ = ("left", "right")
    left: Term
    right: Term


@dataclass(frozen=True)
class Or(Term):
    __slots__ = ("left", "right")
    left: Term
    right: Term


ZERO = Zero()
ONE = One()


def labels_of(t: Term) -> frozenset[int]:
    """Set of generator labels occurring in t."""
    acc: set[int] = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Gen):
            acc.add(s.label)
        elif isinstance(s, Not):
            stack.append(s.arg)
        elif isinstance(s, (And, Or)):
            stack.append(s.left)
            stack.append(s.right)
    return frozenset(acc)


def substitute(t: Term, mapping: Mapping[int, int]) -> Term:
    """Rename every generator label through mapping (must cover all labels)."""
    if isinstance(t, (Zero, One)):
        return t
    if isinstance(t, Gen):
        if t.label not in mapping:
            raise UsageError(f"no substitution for generator label {t.label}")
        return Gen(mapping[t.label])
    if isinstance(t, Not):
        return Not(substitute(t.arg, mapping))
    if isinstance(t, And):
        return And(substitute(t.left, mapping), substitute(t.right, mapping))
    if isinstance(t, Or):
        return Or(substitute(t.left, mapping), substitute(t.right, mapping))
    raise UsageError(f"unknown term node {t!r}")


def big_and(parts: list[Term]) -> Term:
    """Left fold of And; empty conjunction is One."""
    if not parts:
        return ONE
    acc = parts[0]
    for p in parts[1:]:
        acc = And(acc, p)
    return acc


def big_or(parts: list[Term]) -> Term:
    """Left fold of Or; empty disjunction is Zero."""
    if not parts:
        return ZERO
    acc = parts[0]
    for p in parts[1:]:
        acc = Or(acc, p)
    return acc


# --- s-expression wire format --------------------------------------------
#
# Grammar:  "0" | "1" | "x<k>" | "(not T)" | "(and T T ...)" | "(or T T ...)"
# n-ary and/or parse as left folds.

def to_sexpr(t: Term) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Gen):
        return f"x{t.label}"
    if isinstance(t, Not):
        return f"(not {to_sexpr(t.arg)})"
    if isinstance(t, And):
        return f"(and {to_sexpr(t.left)} {to_sexpr(t.right)})"
    if isinstance(t, Or):
        return f"(or {to_sexpr(t.left)} {to_sexpr(t.right)})"
    raise UsageError(f"unknown term node {t!r}")


def _tokenize(text: str) -> Iterator[str]:
    for tok in text.replace("(", " ( ").replace(")", " ) ").split():
        yield tok


def parse_sexpr(text: str) -> Term:
    """Parse the s-expression term format; raises UsageError on bad input."""
    tokens = list(_tokenize(text))
    term, rest = _parse(tokens, 0)
    if rest != len(tokens):
        raise UsageError(f"trailing tokens in term: {' '.join(tokens[rest:])}")
    return term


def _parse(tokens: list[str], i: int) -> tuple[Term, int]:
    if i >= len(tokens):
        raise UsageError("unexpected end of term")
    tok = tokens[i]
    if tok == "0":
        return ZERO, i + 1
    if tok == "1":
        return ONE, i + 1
    if tok.startswith("x") and tok[1:].isdigit():
        return Gen(int(tok[1:])), i + 1
    if tok != "(":
        raise UsageError(f"unexpected token {tok!r}")
    if i + 1 >= len(tokens):
        raise UsageError("unexpected end of term after '('")
    op = tokens[i + 1]
    args: list[Term] = []
    j = i + 2
    while j < len(tokens) and tokens[j] != ")":
        arg, j = _parse(tokens, j)
        args.append(arg)
    if j >= len(tokens):
        raise UsageError("missing ')'")
    j += 1
    if op == "not":
        if len(args) != 1:
            raise UsageError("not takes exactly one argument")
        return Not(args[0]), j
    if op == "and":
        if not args:
            raise UsageError("and needs at least one argument")
        return big_and(args), j
    if op == "or":
        if not args:
            raise UsageError("or needs at least one argument")
        return big_or(args), j
    raise UsageError(f"unknown operator {op!r}")
