"""Symbolic cardinals for cofinality bookkeeping.

The ladder is Zero < One < Fin(2) < Fin(3) < ... < Aleph0 < Reg(.., rank 1)
< Reg(.., rank 2) < ...  Reg tokens are opaque names standing for
uncountable regular cardinals; only their relative rank matters.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

from .errors import UsageError

_KINDS = ("zero", "one", "fin", "aleph0", "reg")


@total_ordering
@dataclass(frozen=True)
class SymCard:
    kind: str
    k: int = 0          # finite value, kind == "fin" only
    token: str = ""     # display name, kind == "reg" only
    rank: int = 0       # position among the regular tokens

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise UsageError(f"unknown cardinal kind {self.kind!r}")
        if self.kind == "fin" and self.k < 2:
            raise UsageError("Fin(k) requires k >= 2")
        if self.kind == "reg" and (not self.token or self.rank < 1):
            raise UsageError("Reg needs a token and a positive rank")

    def _key(self) -> tuple[int, int]:
        order = {"zero": 0, "one": 1, "fin": 2, "aleph0": 3, "reg": 4}
        tie = self.k if self.kind == "fin" else (self.rank if self.kind == "reg" else 0)
        return order[self.kind], tie

    def __lt__(self, other: "SymCard") -> bool:
        if not isinstance(other, SymCard):
            return NotImplemented
        return self._key() < other._key()

    def is_infinite(self) -> bool:
        return self.kind in ("aleph0", "reg")

    def __str__(self) -> str:
        if self.kind == "zero":
            return "0"
        if self.kind == "one":
            return "1"
        if self.kind == "fin":
            return str(self.k)
        if self.kind == "aleph0":
            return "aleph0"
        return self.token


ZERO_CARD = SymCard("zero")
ONE_CARD = SymCard("one")
ALEPH0 = SymCard("aleph0")


def fin(k: int) -> SymCard:
    """Finite cardinal; 0 and 1 collapse onto the dedicated variants."""
    if k < 0:
        raise UsageError("cardinals are nonnegative")
    if k == 0:
        return ZERO_CARD
    if k == 1:
        return ONE_CARD
    return SymCard("fin", k=k)


def reg(token: str, rank: int = 1) -> SymCard:
    return SymCard("reg", token=token, rank=rank)


def symcard_to_json(c: SymCard) -> dict:
    if c.kind == "fin":
        return {"kind": "fin", "k": c.k}
    if c.kind == "reg":
        return {"kind": "reg", "token": c.token, "rank": c.rank}
    return {"kind": c.kind}


def symcard_from_json(obj: dict) -> SymCard:
    try:
        kind = obj["kind"]
        if kind == "fin":
            return fin(int(obj["k"]))
        if kind == "reg":
            return reg(str(obj["token"]), int(obj["rank"]))
        if kind in ("zero", "one", "aleph0"):
            return SymCard(kind)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed cardinal JSON: {exc}") from exc
    raise UsageError(f"unknown cardinal kind {obj.get('kind')!r}")
