"""Dedekind cuts of the supported linear orders and the cut calculus.

Every ultrafilter of an interval algebra arises from a Dedekind cut: an
element is a member iff some [a0, a1) with a0 on the lower side and a1 on
the upper side sits below it.  The density of such an ultrafilter is read
off from the cofinalities of the two sides; the supremum over cuts gives
the algebra's pi-character.

Conventions for empty sides (the density formula has no cofinality-0
case): an empty side has symbolic cofinality Zero, the virtual endpoints
-inf/+inf stand in for missing witnesses, and in the density formula an
empty side is treated like a side with an extreme point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import IntegrityError, UsageError
from .intervals import (
    NEG_INF,
    POS_INF,
    FiniteOrder,
    IntervalElem,
    LexQ,
    LinOrder,
    Point,
    Rationals,
    check_point,
)
from .symcard import ALEPH0, ONE_CARD, ZERO_CARD, SymCard, symcard_to_json


# --- cut descriptors ----------------------------------------------------------

@dataclass(frozen=True)
class FinitePosition:
    """Cut of a finite order: lower side is the first k elements (0 <= k <= n)."""

    k: int


@dataclass(frozen=True)
class AtRationalRight:
    """Cut just right of q: lower side (-inf, q]."""

    q: Fraction


@dataclass(frozen=True)
class AtRationalLeft:
    """Cut just left of q: lower side (-inf, q)."""

    q: Fraction


@dataclass(frozen=True)
class AtIrrational:
    """Cut at r + sqrt(d), d a non-square natural: decided by exact arithmetic."""

    d: int
    r: Fraction

    def __post_init__(self):
        if self.d <= 0 or _is_square(self.d):
            raise UsageError("d must be a non-square positive natural")


@dataclass(frozen=True)
class NegInfinity:
    """Lower side empty."""


@dataclass(frozen=True)
class PosInfinity:
    """Lower side is everything (of the rational order)."""


RationalCut = Union[AtRationalRight, AtRationalLeft, AtIrrational, NegInfinity, PosInfinity]
InnerCut = Union[AtRationalRight, AtRationalLeft, AtIrrational]


@dataclass(frozen=True)
class InBlock:
    """Cut of lambda x Q interior to one block, described by a rational-line cut."""

    block: int
    inner: InnerCut

    def __post_init__(self):
        if self.block < 0:
            raise UsageError("block index must be a natural")
        if not isinstance(self.inner, (AtRationalRight, AtRationalLeft, AtIrrational)):
            raise UsageError("inner cut must be a proper rational-line cut")


@dataclass(frozen=True)
class BetweenBlocks:
    """Cut of lambda x Q between blocks: lower side is blocks 0..after.

    after = -1 is the bottom cut (lower side empty).
    """

    after: int

    def __post_init__(self):
        if self.after < -1:
            raise UsageError("after must be >= -1")


@dataclass(frozen=True)
class Top:
    """Lower side is everything: the cofinal ultrafilter of lambda x Q."""


Cut = Union[FinitePosition, RationalCut, InBlock, BetweenBlocks, Top]


def _is_square(d: int) -> bool:
    import math

    r = math.isqrt(d)
    return r * r == d


def _lt_sqrt(x: Fraction, d: int) -> bool:
    """x < sqrt(d), exactly."""
    if x < 0:
        return True
    return x * x < d


def check_cut(order: LinOrder, c: Cut) -> None:
    if isinstance(order, FiniteOrder):
        if not isinstance(c, FinitePosition) or not 0 <= c.k <= order.n:
            raise UsageError(f"cut {c!r} is not a position cut of {order.describe()}")
    elif isinstance(order, Rationals):
        if not isinstance(c, (AtRationalRight, AtRationalLeft, AtIrrational, NegInfinity, PosInfinity)):
            raise UsageError(f"cut {c!r} does not describe a cut of the rationals")
    elif isinstance(order, LexQ):
        if not isinstance(c, (InBlock, BetweenBlocks, Top)):
            raise UsageError(f"cut {c!r} does not describe a cut of {order.describe()}")
    else:
        raise UsageError(f"unknown order {order!r}")


# --- side predicates ----------------------------------------------------------

def in_lower(order: LinOrder, c: Cut, p: Point) -> bool:
    """Is the point on the lower side of the cut?"""
    check_cut(order, c)
    p = check_point(order, p)
    if isinstance(c, FinitePosition):
        return p < c.k
    if isinstance(c, AtRationalRight):
        return p <= c.q
    if isinstance(c, AtRationalLeft):
        return p < c.q
    if isinstance(c, AtIrrational):
        return _lt_sqrt(p - c.r, c.d)
    if isinstance(c, NegInfinity):
        return False
    if isinstance(c, PosInfinity):
        return True
    if isinstance(c, Top):
        return True
    if isinstance(c, BetweenBlocks):
        return p[0] <= c.after
    if isinstance(c, InBlock):
        if p[0] != c.block:
            return p[0] < c.block
        return in_lower(Rationals(), c.inner, p[1])
    raise UsageError(f"unknown cut {c!r}")


def lower_empty(order: LinOrder, c: Cut) -> bool:
    check_cut(order, c)
    if isinstance(c, FinitePosition):
        return c.k == 0
    if isinstance(c, NegInfinity):
        return True
    if isinstance(c, BetweenBlocks):
        return c.after < 0
    return False


def upper_empty(order: LinOrder, c: Cut) -> bool:
    check_cut(order, c)
    if isinstance(c, FinitePosition):
        return c.k == order.n
    if isinstance(c, (PosInfinity, Top)):
        return True
    return False


def lower_has_point_geq(order: LinOrder, c: Cut, p: Point) -> bool:
    """Does the lower side contain a point >= p?"""
    check_cut(order, c)
    p = check_point(order, p)
    if isinstance(c, FinitePosition):
        return c.k > 0 and p <= c.k - 1
    if isinstance(c, AtRationalRight):
        return p <= c.q
    if isinstance(c, AtRationalLeft):
        return p < c.q
    if isinstance(c, AtIrrational):
        return _lt_sqrt(p - c.r, c.d)
    if isinstance(c, NegInfinity):
        return False
    if isinstance(c, (PosInfinity, Top)):
        return True
    if isinstance(c, BetweenBlocks):
        return c.after >= 0 and p[0] <= c.after
    if isinstance(c, InBlock):
        if p[0] < c.block:
            return True
        if p[0] > c.block:
            return False
        return lower_has_point_geq(Rationals(), c.inner, p[1])
    raise UsageError(f"unknown cut {c!r}")


def upper_has_point_leq(order: LinOrder, c: Cut, p: Point) -> bool:
    """Does the upper side contain a point <= p?"""
    check_cut(order, c)
    p = check_point(order, p)
    if isinstance(c, FinitePosition):
        return c.k < order.n and p >= c.k
    if isinstance(c, AtRationalRight):
        return p > c.q
    if isinstance(c, AtRationalLeft):
        return p >= c.q
    if isinstance(c, AtIrrational):
        return not _lt_sqrt(p - c.r, c.d)
    if isinstance(c, NegInfinity):
        return True
    if isinstance(c, (PosInfinity, Top)):
        return False
    if isinstance(c, BetweenBlocks):
        return p[0] > c.after
    if isinstance(c, InBlock):
        if p[0] > c.block:
            return True
        if p[0] < c.block:
            return False
        return upper_has_point_leq(Rationals(), c.inner, p[1])
    raise UsageError(f"unknown cut {c!r}")


# --- membership ---------------------------------------------------------------

def cut_member(c: Cut, x: IntervalElem) -> bool:
    """Is x a member of the ultrafilter induced by the cut?

    Two equivalent formulations are computed and cross-checked: the witness
    form (some [a0, a1) with a0 lower-side, a1 upper-side below x, virtual
    endpoints standing in for empty sides) and the interior form (the cut
    falls inside one of x's intervals in the completed order).
    """
    order = x.order
    check_cut(order, c)

    def witness_geq(a) -> bool:
        if lower_empty(order, c):
            return a is NEG_INF
        if a is NEG_INF:
            return True
        return lower_has_point_geq(order, c, a)

    def witness_leq(b) -> bool:
        if upper_empty(order, c):
            return b is POS_INF
        if b is POS_INF:
            return True
        return upper_has_point_leq(order, c, b)

    by_witness = any(witness_geq(a) and witness_leq(b) for a, b in x.intervals)

    def interior(a, b) -> bool:
        left_ok = a is NEG_INF if lower_empty(order, c) else (
            a is NEG_INF or in_lower(order, c, a)
        )
        right_ok = b is POS_INF if upper_empty(order, c) else (
            b is POS_INF or not in_lower(order, c, b)
        )
        return left_ok and right_ok

    by_interior = any(interior(a, b) for a, b in x.intervals)
    if by_witness != by_interior:
        raise IntegrityError(
            f"cut membership formulations disagree on {x!r} at {c!r}"
        )
    return by_witness


@dataclass(frozen=True)
class CutReport:
    """Sampled ultrafilter diagnostics for one cut."""

    samples: int
    dichotomy_failures: int
    meet_failures: int
    one_is_member: bool
    zero_not_member: bool

    @property
    def ok(self) -> bool:
        return (
            self.dichotomy_failures == 0
            and self.meet_failures == 0
            and self.one_is_member
            and self.zero_not_member
        )


def cut_ultrafilter_props(c: Cut, samples: list[IntervalElem]) -> CutReport:
    """Check the ultrafilter laws on a sample of elements.

    Exactly one of x and its complement is a member; membership is closed
    under meet; 1 is a member and 0 is not.
    """
    from .intervals import complement, intersect

    if not samples:
        raise UsageError("need at least one sample")
    order = samples[0].order
    dich = 0
    meets = 0
    members = []
    for x in samples:
        mx = cut_member(c, x)
        mc = cut_member(c, complement(x))
        if mx == mc:
            dich += 1
        if mx:
            members.append(x)
    head = members[:100]  # meet closure is quadratic; cap the pair sweep
    for i, x in enumerate(head):
        for y in head[i + 1:]:
            if not cut_member(c, intersect(x, y)):
                meets += 1
    return CutReport(
        samples=len(samples),
        dichotomy_failures=dich,
        meet_failures=meets,
        one_is_member=cut_member(c, IntervalElem.one(order)),
        zero_not_member=not cut_member(c, IntervalElem.zero(order)),
    )


# --- cofinalities and density -------------------------------------------------

def cut_cofinalities(order: LinOrder, c: Cut) -> tuple[SymCard, SymCard]:
    """(cofinality of the lower side, cofinality of the reversed upper side).

    Empty side -> Zero; a side with a maximum (resp. minimum) -> One.
    """
    check_cut(order, c)
    if isinstance(c, FinitePosition):
        lo = ZERO_CARD if c.k == 0 else ONE_CARD
        hi = ZERO_CARD if c.k == order.n else ONE_CARD
        return lo, hi
    if isinstance(c, NegInfinity):
        return ZERO_CARD, ALEPH0
    if isinstance(c, PosInfinity):
        return ALEPH0, ZERO_CARD
    if isinstance(c, AtRationalRight):
        return ONE_CARD, ALEPH0
    if isinstance(c, AtRationalLeft):
        return ALEPH0, ONE_CARD
    if isinstance(c, AtIrrational):
        return ALEPH0, ALEPH0
    if isinstance(c, Top):
        return order.lam, ZERO_CARD
    if isinstance(c, BetweenBlocks):
        if c.after < 0:
            return ZERO_CARD, ALEPH0
        return ALEPH0, ALEPH0
    if isinstance(c, InBlock):
        lo, hi = cut_cofinalities(Rationals(), c.inner)
        return lo, hi
    raise UsageError(f"unknown cut {c!r}")


def pi_of_cut(order: LinOrder, c: Cut) -> SymCard:
    """Density of the cut's ultrafilter from the side cofinalities.

    Max of the two when both are infinite; the other side's cofinality when
    one side has an extreme point (cofinality 1); 1 when both do.  An empty
    side (Zero) is treated like the extreme-point case, matching the finite
    brute force.
    """
    lo, hi = cut_cofinalities(order, c)
    if lo == ZERO_CARD and hi == ZERO_CARD:
        raise UsageError("cut of an empty order")
    lo_unit = lo in (ZERO_CARD, ONE_CARD)
    hi_unit = hi in (ZERO_CARD, ONE_CARD)
    if lo_unit and hi_unit:
        return ONE_CARD
    if lo_unit:
        return hi
    if hi_unit:
        return lo
    return max(lo, hi)


def representative_cuts(order: LinOrder) -> list[Cut]:
    """One cut per symbolic class of Dedekind cuts of the order."""
    if isinstance(order, FiniteOrder):
        return [FinitePosition(k) for k in range(order.n + 1)]
    if isinstance(order, Rationals):
        return [
            NegInfinity(),
            AtRationalLeft(Fraction(0)),
            AtRationalRight(Fraction(0)),
            AtIrrational(2, Fraction(0)),
            PosInfinity(),
        ]
    if isinstance(order, LexQ):
        return [
            BetweenBlocks(-1),
            InBlock(0, AtRationalLeft(Fraction(0))),
            InBlock(0, AtRationalRight(Fraction(0))),
            InBlock(0, AtIrrational(2, Fraction(0))),
            BetweenBlocks(0),
            Top(),
        ]
    raise UsageError(f"unknown order {order!r}")


def pichi_order(order: LinOrder) -> SymCard:
    """pi-character of the interval algebra: sup of pi_of_cut over cut classes."""
    return max(pi_of_cut(order, c) for c in representative_cuts(order))


# --- finite bridge to the ba-core ---------------------------------------------

FINITE_BRIDGE_CAP = 12


def finite_interval_presentation(order: FiniteOrder):
    """The interval algebra of a finite order as a ba-core carrier.

    Atom k is the interval [k, k+1) (the last one [n-1, +inf)); generator
    label k denotes exactly atom k, so the full carrier has 2^n elements.
    """
    from .ba import Assignment, Presentation, denote, subalgebra_closure
    from .terms import Gen

    n = order.n
    if n > FINITE_BRIDGE_CAP:
        raise UsageError(f"finite bridge capped at n <= {FINITE_BRIDGE_CAP}")
    w = tuple(range(n))
    rows = []
    for k in range(n):
        bits = [0] * n
        bits[k] = 1
        rows.append(tuple(bits))
    P = Presentation.from_bit_rows(w, rows)
    gens = [denote(Gen(k), P) for k in w]
    return subalgebra_closure(P, gens)


def atom_interval(order: FiniteOrder, k: int) -> IntervalElem:
    """The interval realizing atom k of the finite bridge."""
    if not 0 <= k < order.n:
        raise UsageError(f"atom index {k} out of range")
    right = POS_INF if k == order.n - 1 else k + 1
    return IntervalElem.make(order, [(k, right)])


def enumerate_ultrafilters_finite(order: FiniteOrder):
    """All ultrafilters of the finite interval algebra with matching cuts.

    There are exactly n, one principal at each atom [k, .); the matching cut
    has position k+1.  The bottom cut (position 0) induces the same
    ultrafilter as position 1, so enumeration keys cuts to atoms and uses
    positions 1..n only.
    """
    from .ba import denote, principal_ultrafilter
    from .terms import Gen

    C = finite_interval_presentation(order)
    out = []
    for k in range(order.n):
        atom = denote(Gen(k), C.presentation)  # generator k is atom [k, .)
        out.append((principal_ultrafilter(atom, C), FinitePosition(k + 1)))
    return out


# --- JSON interchange ----------------------------------------------------------

def cut_to_json(c: Cut) -> dict:
    if isinstance(c, FinitePosition):
        return {"kind": "position", "k": c.k}
    if isinstance(c, AtRationalRight):
        return {"kind": "rational-right", "q": str(c.q)}
    if isinstance(c, AtRationalLeft):
        return {"kind": "rational-left", "q": str(c.q)}
    if isinstance(c, AtIrrational):
        return {"kind": "irrational", "d": c.d, "r": str(c.r)}
    if isinstance(c, NegInfinity):
        return {"kind": "neg-infinity"}
    if isinstance(c, PosInfinity):
        return {"kind": "pos-infinity"}
    if isinstance(c, InBlock):
        return {"kind": "in-block", "block": c.block, "cut": cut_to_json(c.inner)}
    if isinstance(c, BetweenBlocks):
        return {"kind": "between-blocks", "after": c.after}
    if isinstance(c, Top):
        return {"kind": "top"}
    raise UsageError(f"unknown cut {c!r}")


def cut_from_json(obj: dict) -> Cut:
    try:
        kind = obj["kind"]
        if kind == "position":
            return FinitePosition(int(obj["k"]))
        if kind == "rational-right":
            return AtRationalRight(Fraction(str(obj["q"])))
        if kind == "rational-left":
            return AtRationalLeft(Fraction(str(obj["q"])))
        if kind == "irrational":
            return AtIrrational(int(obj["d"]), Fraction(str(obj["r"])))
        if kind == "neg-infinity":
            return NegInfinity()
        if kind == "pos-infinity":
            return PosInfinity()
        if kind == "in-block":
            inner = cut_from_json(obj["cut"])
            if not isinstance(inner, (AtRationalRight, AtRationalLeft, AtIrrational)):
                raise UsageError("in-block inner cut must be a proper rational-line cut")
            return InBlock(int(obj["block"]), inner)
        if kind == "between-blocks":
            return BetweenBlocks(int(obj["after"]))
        if kind == "top":
            return Top()
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed cut JSON: {exc}") from exc
    raise UsageError(f"unknown cut kind {obj.get('kind')!r}")


def cofinalities_to_json(pair: tuple[SymCard, SymCard]) -> dict:
    return {"lower": symcard_to_json(pair[0]), "upper": symcard_to_json(pair[1])}
