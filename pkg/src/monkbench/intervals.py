"""Interval Boolean algebras over described linear orders.

Supported orders: a finite order on n points (indices 0..n-1), the
rationals, and the lexicographic product of a symbolic regular cardinal
with the rationals (points carry concrete block indices; the symbolic
cardinal matters only to cut classification).

Elements are canonical finite unions of half-open intervals [a, b) with
endpoints drawn from the order plus the virtual endpoints -inf/+inf.
Semantics are pointwise; everything is normalized on construction so that
equal point sets have identical representations.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import UsageError
from .symcard import ALEPH0, SymCard, reg, symcard_from_json, symcard_to_json


class _NegInf:
    __slots__ = ()

    def __repr__(self):
        return "-inf"


class _PosInf:
    __slots__ = ()

    def __repr__(self):
        return "+inf"


NEG_INF = _NegInf()
POS_INF = _PosInf()

Point = Union[int, Fraction, tuple]
Endpoint = Union[Point, _NegInf, _PosInf]


# --- order descriptions -------------------------------------------------------

@dataclass(frozen=True)
class FiniteOrder:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise UsageError("finite order needs at least one point")

    def describe(self) -> str:
        return f"fin:{self.n}"


@dataclass(frozen=True)
class Rationals:
    def describe(self) -> str:
        return "Q"


@dataclass(frozen=True)
class LexQ:
    """lambda x Q, ordered lexicographically; lambda symbolic (Reg or Aleph0)."""

    lam: SymCard

    def __post_init__(self):
        if not self.lam.is_infinite():
            raise UsageError("LexQ block cardinal must be Aleph0 or a regular token")

    def describe(self) -> str:
        return f"lexQ:{self.lam}"


LinOrder = Union[FiniteOrder, Rationals, LexQ]


def parse_order(desc: str) -> LinOrder:
    """Parse an order description: "fin:n", "Q", or "lexQ:<token>"."""
    if desc == "Q":
        return Rationals()
    if desc.startswith("fin:"):
        try:
            return FiniteOrder(int(desc[4:]))
        except ValueError as exc:
            raise UsageError(f"bad finite order description {desc!r}") from exc
    if desc.startswith("lexQ:"):
        token = desc[5:]
        if token == "aleph0":
            return LexQ(ALEPH0)
        m = re.search(r"(\d+)$", token)
        rank = int(m.group(1)) if m else 1
        return LexQ(reg(token, rank))
    raise UsageError(f"unknown order description {desc!r}")


def check_point(order: LinOrder, p: Point) -> Point:
    if isinstance(order, FiniteOrder):
        if not isinstance(p, int) or not 0 <= p < order.n:
            raise UsageError(f"point {p!r} not an index of {order.describe()}")
        return p
    if isinstance(order, Rationals):
        if isinstance(p, int):
            p = Fraction(p)
        if not isinstance(p, Fraction):
            raise UsageError(f"point {p!r} is not a rational")
        return p
    if isinstance(order, LexQ):
        if (
            not isinstance(p, tuple)
            or len(p) != 2
            or not isinstance(p[0], int)
            or p[0] < 0
        ):
            raise UsageError(f"point {p!r} is not a (block, rational) pair")
        q = p[1]
        if isinstance(q, int):
            q = Fraction(q)
        if not isinstance(q, Fraction):
            raise UsageError(f"point {p!r} is not a (block, rational) pair")
        return (p[0], q)
    raise UsageError(f"unknown order {order!r}")


def _key(e: Endpoint):
    if e is NEG_INF:
        return (0,)
    if e is POS_INF:
        return (2,)
    return (1, e)


def ep_lt(a: Endpoint, b: Endpoint) -> bool:
    return _key(a) < _key(b)


def ep_leq(a: Endpoint, b: Endpoint) -> bool:
    return _key(a) <= _key(b)


# --- interval elements ---------------------------------------------------------

@dataclass(frozen=True)
class IntervalElem:
    """Canonical finite union of half-open intervals of one linear order."""

    order: LinOrder
    intervals: tuple[tuple[Endpoint, Endpoint], ...]

    @staticmethod
    def make(order: LinOrder, raw: Iterable[tuple[Endpoint, Endpoint]]) -> "IntervalElem":
        checked = []
        for a, b in raw:
            if a is not NEG_INF:
                a = check_point(order, a)
            if b is not POS_INF:
                b = check_point(order, b)
            # over the finite order -inf coincides with the least point
            if isinstance(order, FiniteOrder) and a is NEG_INF:
                a = 0
            if ep_lt(a, b):
                checked.append((a, b))
        checked.sort(key=lambda ab: _key(ab[0]))
        merged: list[tuple[Endpoint, Endpoint]] = []
        for a, b in checked:
            if merged and ep_leq(a, merged[-1][1]):
                if ep_lt(merged[-1][1], b):
                    merged[-1] = (merged[-1][0], b)
            else:
                merged.append((a, b))
        return IntervalElem(order, tuple(merged))

    @staticmethod
    def zero(order: LinOrder) -> "IntervalElem":
        return IntervalElem(order, ())

    @staticmethod
    def one(order: LinOrder) -> "IntervalElem":
        return IntervalElem.make(order, [(NEG_INF, POS_INF)])

    def contains(self, p: Point) -> bool:
        p = check_point(self.order, p)
        return any(ep_leq(a, p) and ep_lt(p, b) for a, b in self.intervals)


def _same_order(x: IntervalElem, y: IntervalElem) -> LinOrder:
    if x.order != y.order:
        raise UsageError("interval elements over different orders")
    return x.order


def union(x: IntervalElem, y: IntervalElem) -> IntervalElem:
    order = _same_order(x, y)
    return IntervalElem.make(order, list(x.intervals) + list(y.intervals))


def intersect(x: IntervalElem, y: IntervalElem) -> IntervalElem:
    order = _same_order(x, y)
    out = []
    for a1, b1 in x.intervals:
        for a2, b2 in y.intervals:
            a = a1 if ep_lt(a2, a1) else a2
            b = b1 if ep_lt(b1, b2) else b2
            if ep_lt(a, b):
                out.append((a, b))
    return IntervalElem.make(order, out)


def complement(x: IntervalElem) -> IntervalElem:
    out = []
    prev: Endpoint = NEG_INF
    for a, b in x.intervals:
        if ep_lt(prev, a):
            out.append((prev, a))
        prev = b
    if prev is not POS_INF:
        out.append((prev, POS_INF))
    return IntervalElem.make(x.order, out)


def is_zero(x: IntervalElem) -> bool:
    return not x.intervals


def leq(x: IntervalElem, y: IntervalElem) -> bool:
    return is_zero(intersect(x, complement(y)))


# --- JSON interchange -----------------------------------------------------------

def _point_to_json(order: LinOrder, p: Point):
    if isinstance(order, FiniteOrder):
        return p
    if isinstance(order, Rationals):
        return str(p)
    return [p[0], str(p[1])]


def _point_from_json(order: LinOrder, obj) -> Point:
    if isinstance(order, FiniteOrder):
        return check_point(order, int(obj))
    if isinstance(order, Rationals):
        return check_point(order, Fraction(str(obj)))
    return check_point(order, (int(obj[0]), Fraction(str(obj[1]))))


def _endpoint_to_json(order: LinOrder, e: Endpoint):
    if e is NEG_INF:
        return ["-inf"]
    if e is POS_INF:
        return ["+inf"]
    return ["pt", _point_to_json(order, e)]


def _endpoint_from_json(order: LinOrder, obj) -> Endpoint:
    try:
        tag = obj[0]
        if tag == "-inf":
            return NEG_INF
        if tag == "+inf":
            return POS_INF
        if tag == "pt":
            return _point_from_json(order, obj[1])
    except (TypeError, IndexError, ValueError) as exc:
        raise UsageError(f"malformed endpoint JSON {obj!r}: {exc}") from exc
    raise UsageError(f"malformed endpoint JSON {obj!r}")


def interval_elem_to_json(x: IntervalElem) -> list:
    return [
        [_endpoint_to_json(x.order, a), _endpoint_to_json(x.order, b)]
        for a, b in x.intervals
    ]


def interval_elem_from_json(order: LinOrder, obj: list) -> IntervalElem:
    try:
        raw = [
            (_endpoint_from_json(order, a), _endpoint_from_json(order, b))
            for a, b in obj
        ]
    except (TypeError, ValueError) as exc:
        raise UsageError(f"malformed interval element JSON: {exc}") from exc
    return IntervalElem.make(order, raw)


def order_to_json(order: LinOrder) -> dict:
    obj: dict = {"kind": type(order).__name__}
    if isinstance(order, FiniteOrder):
        obj = {"kind": "finite", "n": order.n}
    elif isinstance(order, Rationals):
        obj = {"kind": "rationals"}
    elif isinstance(order, LexQ):
        obj = {"kind": "lexq", "lambda": symcard_to_json(order.lam)}
    return obj


def order_from_json(obj: dict) -> LinOrder:
    kind = obj.get("kind")
    if kind == "finite":
        return FiniteOrder(int(obj["n"]))
    if kind == "rationals":
        return Rationals()
    if kind == "lexq":
        return LexQ(symcard_from_json(obj["lambda"]))
    raise UsageError(f"unknown order kind {kind!r}")
