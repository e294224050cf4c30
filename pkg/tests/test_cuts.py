from fractions import Fraction
from random import Random

import pytest

from monkbench.ba import is_ultrafilter, pi_ultrafilter
from monkbench.cuts import (
    AtIrrational,
    AtRationalLeft,
    AtRationalRight,
    BetweenBlocks,
    FinitePosition,
    InBlock,
    NegInfinity,
    PosInfinity,
    Top,
    atom_interval,
    cut_cofinalities,
    cut_from_json,
    cut_member,
    cut_to_json,
    cut_ultrafilter_props,
    enumerate_ultrafilters_finite,
    finite_interval_presentation,
    in_lower,
    pi_of_cut,
    pichi_order,
    representative_cuts,
)
from monkbench.errors import UsageError
from monkbench.harness import random_interval_elem
from monkbench.intervals import POS_INF, FiniteOrder, IntervalElem, LexQ, Rationals
from monkbench.symcard import ALEPH0, ONE_CARD, ZERO_CARD, reg

Q = Rationals()


def test_cut_shapes_are_checked():
    with pytest.raises(UsageError):
        cut_member(FinitePosition(1), IntervalElem.one(Q))
    with pytest.raises(UsageError):
        AtIrrational(4, Fraction(0))  # 4 is a square
    with pytest.raises(UsageError):
        InBlock(0, NegInfinity())
    with pytest.raises(UsageError):
        BetweenBlocks(-2)


def test_irrational_cut_is_exact():
    c = AtIrrational(2, Fraction(0))  # the cut at sqrt(2)
    assert in_lower(Q, c, Fraction(141421356, 100000000))
    assert not in_lower(Q, c, Fraction(141421357, 100000000))
    shifted = AtIrrational(2, Fraction(10))  # cut at 10 + sqrt(2)
    assert in_lower(Q, shifted, Fraction(11))
    assert not in_lower(Q, shifted, Fraction(12))


def test_cut_member_basics():
    c = AtRationalRight(Fraction(0))
    assert cut_member(c, IntervalElem.one(Q))
    assert not cut_member(c, IntervalElem.zero(Q))
    assert cut_member(c, IntervalElem.make(Q, [(0, 1)]))  # contains 0 and beyond
    assert not cut_member(c, IntervalElem.make(Q, [(1, 2)]))
    left = AtRationalLeft(Fraction(0))
    assert not cut_member(left, IntervalElem.make(Q, [(0, 1)]))
    assert cut_member(left, IntervalElem.make(Q, [(-1, 0)]))


def test_cut_member_at_infinite_ends():
    x = IntervalElem.make(Q, [(0, 1)])
    assert not cut_member(NegInfinity(), x)
    assert cut_member(NegInfinity(), IntervalElem.one(Q))
    assert not cut_member(PosInfinity(), x)
    tail = IntervalElem.make(Q, [(5, POS_INF)])
    assert cut_member(PosInfinity(), tail)


def test_ultrafilter_props_on_seeded_samples():
    rng = Random(424242)
    samples = [random_interval_elem(rng) for _ in range(300)]
    for c in (AtRationalLeft(Fraction(1, 3)), AtRationalRight(Fraction(-2)),
              AtIrrational(5, Fraction(0)), NegInfinity(), PosInfinity()):
        assert cut_ultrafilter_props(c, samples).ok


def test_cofinalities_table():
    lam = reg("lambda1")
    assert cut_cofinalities(Q, AtRationalRight(Fraction(0))) == (ONE_CARD, ALEPH0)
    assert cut_cofinalities(Q, AtRationalLeft(Fraction(0))) == (ALEPH0, ONE_CARD)
    assert cut_cofinalities(Q, AtIrrational(2, Fraction(0))) == (ALEPH0, ALEPH0)
    assert cut_cofinalities(Q, NegInfinity()) == (ZERO_CARD, ALEPH0)
    assert cut_cofinalities(LexQ(lam), Top()) == (lam, ZERO_CARD)
    assert cut_cofinalities(LexQ(lam), BetweenBlocks(-1)) == (ZERO_CARD, ALEPH0)
    assert cut_cofinalities(FiniteOrder(3), FinitePosition(0)) == (ZERO_CARD, ONE_CARD)
    assert cut_cofinalities(FiniteOrder(3), FinitePosition(3)) == (ONE_CARD, ZERO_CARD)


def test_pi_of_cut_four_cases():
    lam = reg("lambda1")
    assert pi_of_cut(Q, AtIrrational(2, Fraction(0))) == ALEPH0   # both infinite
    assert pi_of_cut(Q, AtRationalRight(Fraction(0))) == ALEPH0   # one side has a max
    assert pi_of_cut(FiniteOrder(4), FinitePosition(2)) == ONE_CARD
    assert pi_of_cut(LexQ(lam), Top()) == lam


def test_pi_of_cut_never_exceeds_pichi():
    lam = reg("lambda1")
    for order in (FiniteOrder(4), Q, LexQ(lam)):
        bound = pichi_order(order)
        for c in representative_cuts(order):
            assert pi_of_cut(order, c) <= bound


def test_pichi_symbolic_values():
    lam = reg("lambda1")
    assert pichi_order(FiniteOrder(6)) == ONE_CARD
    assert pichi_order(Q) == ALEPH0
    assert pichi_order(LexQ(lam)) == lam
    assert pichi_order(LexQ(ALEPH0)) == ALEPH0


@pytest.mark.parametrize("n", [1, 3, 5])
def test_finite_bridge(n):
    order = FiniteOrder(n)
    carrier = finite_interval_presentation(order)
    assert len(carrier.elements) == 2 ** n
    assert len(carrier.atoms) == n
    ultras = enumerate_ultrafilters_finite(order)
    assert len(ultras) == n
    for uf, cut in ultras:
        assert is_ultrafilter(uf, carrier)
        assert pi_ultrafilter(uf, carrier) == 1
        assert pi_of_cut(order, cut) == ONE_CARD
    assert sorted(cut.k for _, cut in ultras) == list(range(1, n + 1))


def test_finite_bridge_matches_interval_semantics():
    # the cut matched to atom [k, .) must fall inside that atom's interval
    order = FiniteOrder(4)
    for _, cut in enumerate_ultrafilters_finite(order):
        k = cut.k - 1
        x = atom_interval(order, k)
        assert cut_member(cut, x)
        for j in range(order.n):
            if j != k:
                assert not cut_member(cut, atom_interval(order, j))


def test_cut_json_round_trip():
    cases = [
        FinitePosition(2),
        AtRationalRight(Fraction(3, 7)),
        AtRationalLeft(Fraction(-1)),
        AtIrrational(5, Fraction(1, 2)),
        NegInfinity(),
        PosInfinity(),
        InBlock(3, AtIrrational(2, Fraction(0))),
        BetweenBlocks(-1),
        Top(),
    ]
    for c in cases:
        assert cut_from_json(cut_to_json(c)) == c
    with pytest.raises(UsageError):
        cut_from_json({"kind": "sideways"})
    with pytest.raises(UsageError):
        cut_from_json({"kind": "in-block", "block": 0, "cut": {"kind": "top"}})
