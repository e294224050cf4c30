import pytest

from monkbench.errors import UsageError
from monkbench.symcard import (
    ALEPH0,
    ONE_CARD,
    ZERO_CARD,
    SymCard,
    fin,
    reg,
    symcard_from_json,
    symcard_to_json,
)


def test_ladder_is_totally_ordered():
    ladder = [ZERO_CARD, ONE_CARD, fin(2), fin(3), fin(10), ALEPH0,
              reg("lambda1", 1), reg("lambda2", 2)]
    for i, a in enumerate(ladder):
        for j, b in enumerate(ladder):
            assert (a < b) == (i < j)
            assert (a == b) == (i == j)
    assert max(ladder) == reg("lambda2", 2)


def test_fin_collapses_small_values():
    assert fin(0) == ZERO_CARD
    assert fin(1) == ONE_CARD
    assert fin(2) == SymCard("fin", k=2)
    with pytest.raises(UsageError):
        fin(-1)
    with pytest.raises(UsageError):
        SymCard("fin", k=1)


def test_infinity_flag_and_str():
    assert ALEPH0.is_infinite() and reg("mu").is_infinite()
    assert not fin(5).is_infinite()
    assert str(ZERO_CARD) == "0" and str(ONE_CARD) == "1"
    assert str(fin(7)) == "7"
    assert str(ALEPH0) == "aleph0"
    assert str(reg("lambda1")) == "lambda1"


def test_reg_needs_token_and_rank():
    with pytest.raises(UsageError):
        SymCard("reg", token="", rank=1)
    with pytest.raises(UsageError):
        SymCard("reg", token="x", rank=0)
    with pytest.raises(UsageError):
        SymCard("weird")


@pytest.mark.parametrize("c", [ZERO_CARD, ONE_CARD, fin(4), ALEPH0, reg("lambda1", 1)])
def test_json_round_trip(c):
    assert symcard_from_json(symcard_to_json(c)) == c


def test_json_rejects_malformed():
    with pytest.raises(UsageError):
        symcard_from_json({"kind": "nope"})
    with pytest.raises(UsageError):
        symcard_from_json({})
