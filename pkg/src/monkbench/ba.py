"""Finitely presented Boolean algebras with exhaustive support semantics.

A presentation (w, F) consists of a finite label set w and a family F of
0/1 assignments on w.  The presented algebra is free on {x_a : a in w}
modulo the relations killing every meet-minus pattern matched by no f in F.
An element is identified with the subset of F on which its defining term
evaluates to 1; that support set is a complete invariant, so elements are
stored as bitmasks keyed by the canonical order of F.

Everything here is immutable and pure.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DomainError, SizeCapError, UsageError
from .terms import And, Gen, Not, One, Or, Term, Zero, labels_of

# Distinguished truncation point: compares above every natural label.
INF = float("inf")

# Desk-scale caps standing in for the unbounded cardinal parameters.
MAX_W = 16
MAX_F = 24
MAX_CARRIER = 2 ** 16

# Brute-force min-dense search is only sound to run below this cap.
BRUTE_DENSE_CAP = 15


@dataclass(frozen=True, order=True)
class Assignment:
    """A 0/1 function on a finite sorted label set.

    Lexicographic tuple comparison of `bits` (in w order) is the canonical
    bit-string order used for deterministic tie-breaking.
    """

    bits: tuple[int, ...]
    w: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) != len(self.w):
            raise UsageError("assignment bits/domain length mismatch")
        if any(b not in (0, 1) for b in self.bits):
            raise UsageError("assignment values must be 0/1")
        if tuple(sorted(set(self.w))) != self.w:
            raise UsageError("assignment domain must be sorted and duplicate-free")

    @staticmethod
    def from_map(values: dict[int, int]) -> "Assignment":
        w = tuple(sorted(values))
        return Assignment(tuple(values[a] for a in w), w)

    def value(self, label: int) -> int:
        try:
            return self.bits[self.w.index(label)]
        except ValueError:
            raise DomainError(f"label {label} not in domain {self.w}") from None

    def as_map(self) -> dict[int, int]:
        return dict(zip(self.w, self.bits))

    def restrict(self, labels: Iterable[int]) -> "Assignment":
        sub = tuple(sorted(set(labels)))
        missing = [a for a in sub if a not in self.w]
        if missing:
            raise DomainError(f"labels {missing} not in domain {self.w}")
        return Assignment(tuple(self.bits[self.w.index(a)] for a in sub), sub)

    def truncate(self, alpha) -> "Assignment":
        """Keep values below alpha, zero at and above; alpha=INF is identity."""
        return Assignment(
            tuple(b if a < alpha else 0 for a, b in zip(self.w, self.bits)), self.w
        )

    def union(self, other: "Assignment") -> "Assignment":
        """Merge two assignments that agree on the overlap of their domains."""
        merged = self.as_map()
        for a, b in other.as_map().items():
            if merged.setdefault(a, b) != b:
                raise UsageError(f"assignments disagree at label {a}")
        return Assignment.from_map(merged)


@dataclass(frozen=True)
class Presentation:
    """Pair (w, F): label set plus a duplicate-free family of assignments.

    F is stored in canonical order (sorted by bit-string) so that element
    bitmasks and "first witness" scans are deterministic.
    """

    w: tuple[int, ...]
    F: tuple[Assignment, ...]

    def __post_init__(self):
        if tuple(sorted(set(self.w))) != self.w:
            raise UsageError("w must be sorted and duplicate-free")
        if any(a < 0 for a in self.w):
            raise UsageError("labels must be naturals")
        for f in self.F:
            if f.w != self.w:
                raise UsageError(f"assignment domain {f.w} differs from w={self.w}")
        if len(set(self.F)) != len(self.F):
            raise UsageError("F contains duplicates")
        if tuple(sorted(self.F)) != self.F:
            raise UsageError("F not in canonical (bit-string) order")

    @staticmethod
    def make(w: Iterable[int], F: Iterable[Assignment], *, check_caps: bool = True) -> "Presentation":
        """Canonicalize: sort w, dedupe and sort F; enforce desk-scale caps."""
        ws = tuple(sorted(set(w)))
        fs = tuple(sorted(set(F)))
        if check_caps:
            if len(ws) > MAX_W:
                raise SizeCapError(f"|w|={len(ws)} exceeds cap {MAX_W}")
            if len(fs) > MAX_F:
                raise SizeCapError(f"|F|={len(fs)} exceeds cap {MAX_F}")
        return Presentation(ws, fs)

    @staticmethod
    def from_bit_rows(w: Iterable[int], rows: Iterable[Sequence[int]]) -> "Presentation":
        ws = tuple(sorted(set(w)))
        return Presentation.make(ws, [Assignment(tuple(r), ws) for r in rows])

    @property
    def full_mask(self) -> int:
        return (1 << len(self.F)) - 1

    def is_degenerate(self) -> bool:
        """F empty: presents the one-element algebra (0 = 1)."""
        return not self.F

    def zero(self) -> "Element":
        return Element(self, 0)

    def one(self) -> "Element":
        return Element(self, self.full_mask)

    def element(self, support: Iterable[int]) -> "Element":
        mask = 0
        for i in support:
            if not 0 <= i < len(self.F):
                raise UsageError(f"support index {i} out of range")
            mask |= 1 << i
        return Element(self, mask)


@dataclass(frozen=True)
class Element:
    """An algebra element, extensionally: the subset of F satisfying it."""

    presentation: Presentation
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask <= self.presentation.full_mask:
            raise UsageError("support mask out of range")

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.presentation.F)) if self.mask >> i & 1)

    def witnesses(self) -> tuple[Assignment, ...]:
        return tuple(self.presentation.F[i] for i in self.support)


def eval_hom(t: Term, f: Assignment) -> int:
    """Two-valued evaluation of t under the homomorphism induced by f."""
    if isinstance(t, Zero):
        return 0
    if isinstance(t, One):
        return 1
    if isinstance(t, Gen):
        return f.value(t.label)
    if isinstance(t, Not):
        return 1 - eval_hom(t.arg, f)
    if isinstance(t, And):
        return eval_hom(t.left, f) & eval_hom(t.right, f)
    if isinstance(t, Or):
        return eval_hom(t.left, f) | eval_hom(t.right, f)
    raise UsageError(f"unknown term node {t!r}")


def denote(t: Term, P: Presentation) -> Element:
    """Denotation of t in BA[P]: the set of f in F evaluating t to 1."""
    stray = labels_of(t) - set(P.w)
    if stray:
        raise DomainError(f"generator labels {sorted(stray)} not in w={P.w}")
    mask = 0
    for i, f in enumerate(P.F):
        if eval_hom(t, f):
            mask |= 1 << i
    return Element(P, mask)


# --- element operations ----------------------------------------------------

def _same_presentation(a: Element, b: Element) -> Presentation:
    if a.presentation != b.presentation:
        raise UsageError("elements belong to different presentations")
    return a.presentation


def meet(a: Element, b: Element) -> Element:
    return Element(_same_presentation(a, b), a.mask & b.mask)


def join(a: Element, b: Element) -> Element:
    return Element(_same_presentation(a, b), a.mask | b.mask)


def compl(a: Element) -> Element:
    return Element(a.presentation, a.presentation.full_mask & ~a.mask)


def is_zero(a: Element) -> bool:
    return a.mask == 0


def leq_elem(a: Element, b: Element) -> bool:
    _same_presentation(a, b)
    return a.mask & ~b.mask == 0


def free_relation_holds(u: Iterable[int], v: Iterable[int], P: Presentation) -> bool:
    """True iff no f in F is 1 on all of u and 0 on all of v.

    Coincides with the defining relations of BA[P]: the meet of the u
    generators minus the join of the v generators is zero exactly when this
    returns True.
    """
    us, vs = set(u), set(v)
    if us & vs:
        raise UsageError(f"u and v must be disjoint, share {sorted(us & vs)}")
    stray = (us | vs) - set(P.w)
    if stray:
        raise UsageError(f"labels {sorted(stray)} not in w")
    pos = {a: i for i, a in enumerate(P.w)}
    ui = [pos[a] for a in us]
    vi = [pos[b] for b in vs]
    for f in P.F:
        bits = f.bits
        if all(bits[i] for i in ui) and not any(bits[i] for i in vi):
            return False
    return True


# --- carriers, density, escape --------------------------------------------

@dataclass(frozen=True)
class Carrier:
    """A finite subalgebra: elements closed under meet/join/complement."""

    presentation: Presentation
    elements: tuple[Element, ...]
    atoms: tuple[Element, ...] = field(compare=False)

    def nonzero(self) -> tuple[Element, ...]:
        return tuple(e for e in self.elements if e.mask != 0)

    def __contains__(self, e: Element) -> bool:
        return e.presentation == self.presentation and e in set(self.elements)


def _atoms_of(masks: set[int], P: Presentation) -> tuple[Element, ...]:
    nonzero = sorted(m for m in masks if m)
    atoms = [
        m for m in nonzero
        if not any(n != m and n & ~m == 0 for n in nonzero)
    ]
    return tuple(Element(P, m) for m in atoms)


def subalgebra_closure(P: Presentation, Y: Iterable[Element]) -> Carrier:
    """Least subalgebra containing Y: fixpoint under meet/join/complement."""
    masks = {0, P.full_mask}
    for e in Y:
        if e.presentation != P:
            raise UsageError("generator element over a different presentation")
        masks.add(e.mask)
    full = P.full_mask
    frontier = set(masks)
    while frontier:
        new: set[int] = set()
        for m in frontier:
            c = full & ~m
            if c not in masks:
                new.add(c)
            for n in masks:
                for r in (m & n, m | n):
                    if r not in masks:
                        new.add(r)
        masks |= new
        if len(masks) > MAX_CARRIER:
            raise SizeCapError(f"carrier exceeds cap {MAX_CARRIER}")
        frontier = new
    elems = tuple(Element(P, m) for m in sorted(masks))
    return Carrier(P, elems, _atoms_of(masks, P))


def pi_density(C: Carrier) -> int:
    """Algebraic density of a finite algebra: its atom count.

    The atoms form the unique minimum-cardinality dense subset of C+;
    brute_force_min_dense is the independent oracle for this.
    """
    return len(C.atoms)


def is_dense(X: Iterable[Element], Y: Iterable[Element]) -> bool:
    """True iff every nonzero y in Y has a nonzero x in X with x <= y."""
    xs = [x for x in X if x.mask != 0]
    for y in Y:
        if y.mask == 0:
            continue
        if not any(x.mask & ~y.mask == 0 for x in xs):
            return False
    return True


def brute_force_min_dense(C: Carrier) -> int:
    """Minimum size of a dense subset of C+, by subset enumeration.

    Independent oracle for pi_density; only sound under the size cap.
    """
    nonzero = C.nonzero()
    if len(nonzero) > BRUTE_DENSE_CAP:
        raise SizeCapError(f"|C+|={len(nonzero)} exceeds brute-force cap {BRUTE_DENSE_CAP}")
    if not nonzero:
        return 0
    for k in range(1, len(nonzero) + 1):
        for X in combinations(nonzero, k):
            if is_dense(X, nonzero):
                return k
    raise AssertionError("C+ is dense in itself; unreachable")


def find_escape(B: Carrier, A: Carrier) -> Element | None:
    """First b in B+ with no a in A+ below it; None iff A+ is dense in B+."""
    if A.presentation != B.presentation:
        raise UsageError("carriers over different presentations")
    if not set(A.elements) <= set(B.elements):
        raise UsageError("A is not a subalgebra of B")
    a_masks = [a.mask for a in A.elements if a.mask != 0]
    for b in B.elements:  # canonical order: ascending mask
        if b.mask == 0:
            continue
        if not any(m & ~b.mask == 0 for m in a_masks):
            return b
    return None


def is_ultrafilter(U: Iterable[Element], C: Carrier) -> bool:
    useta = set(U)
    elems = set(C.elements)
    if not useta <= elems:
        return False
    masks = {u.mask for u in useta}
    if C.presentation.full_mask not in masks or 0 in masks:
        return False
    full = C.presentation.full_mask
    elem_masks = {x.mask for x in elems}
    for e in elems:
        if (e.mask in masks) == ((full & ~e.mask) in masks):
            return False  # complement dichotomy
        if e.mask in masks:
            for m in masks:
                if (m & e.mask) not in elem_masks:
                    return False
                if (m & e.mask) not in masks:
                    return False  # meet closure
            # upward closure
            for f in elems:
                if e.mask & ~f.mask == 0 and f.mask not in masks:
                    return False
    return True


def pi_ultrafilter(U: Iterable[Element], C: Carrier) -> int:
    """Min |X|, X subset of C+, such that every y in U has some x <= y.

    For a finite carrier every ultrafilter is principal at an atom, so the
    answer is 1; computed by brute-force subset search all the same.
    """
    us = list(U)
    if not is_ultrafilter(us, C):
        raise UsageError("U is not an ultrafilter of C")
    nonzero = C.nonzero()
    for k in range(1, len(nonzero) + 1):
        # singletons are a linear scan; cap only the exponential part
        if k >= 2 and len(nonzero) > BRUTE_DENSE_CAP:
            raise SizeCapError(f"|C+|={len(nonzero)} exceeds brute-force cap {BRUTE_DENSE_CAP}")
        for X in combinations(nonzero, k):
            if all(any(x.mask & ~y.mask == 0 for x in X) for y in us):
                return k
    raise AssertionError("unreachable: {atom} is always dense in a principal filter")


def principal_ultrafilter(atom: Element, C: Carrier) -> tuple[Element, ...]:
    """Upward closure of an atom within C."""
    return tuple(e for e in C.elements if atom.mask & ~e.mask == 0)


# --- finite partition and grid gadgets -------------------------------------

@dataclass(frozen=True)
class OrderedPartition:
    """Pairwise-disjoint nonzero elements whose join is 1, in a fixed order."""

    blocks: tuple[Element, ...]

    def __post_init__(self):
        if not self.blocks:
            raise UsageError("partition needs at least one block")
        P = self.blocks[0].presentation
        acc = 0
        for b in self.blocks:
            if b.presentation != P:
                raise UsageError("partition blocks over mixed presentations")
            if b.mask == 0:
                raise UsageError("partition block is zero")
            if acc & b.mask:
                raise UsageError("partition blocks overlap")
            acc |= b.mask
        if acc != P.full_mask:
            raise UsageError("partition blocks do not cover 1")


def first_hit_selector(x: Element, R: OrderedPartition) -> Element:
    """0 if x = 0, else the least-index block meeting x."""
    P = R.blocks[0].presentation
    if x.presentation != P:
        raise UsageError("element and partition over different presentations")
    if x.mask == 0:
        return P.zero()
    for b in R.blocks:
        if b.mask & x.mask:
            return b
    raise AssertionError("unreachable: blocks cover 1")


def product_grid(n: int, cap: int = 4) -> tuple[Presentation, OrderedPartition, list[tuple[Element, ...]]]:
    """The n-fold grid gadget: n^n atoms indexed by functions h: n -> n.

    Returns a presentation whose assignments one-hot encode the functions h
    (label k*n+j carries "h(k) = j"), the ordered partition of all atoms,
    and grids Q_0..Q_{n-1} where Q_k's j-th block joins the atoms with
    h(k) = j.  Every cross-selection of one block per grid has nonzero meet.
    """
    if not 2 <= n <= cap:
        raise UsageError(f"n={n} outside supported range 2..{cap}")
    w = tuple(range(n * n))
    hs = []
    def rec(prefix: list[int]):
        if len(prefix) == n:
            hs.append(tuple(prefix))
            return
        for j in range(n):
            rec(prefix + [j])
    rec([])
    rows = []
    for h in hs:
        bits = [0] * (n * n)
        for k, j in enumerate(h):
            bits[k * n + j] = 1
        rows.append(tuple(bits))
    ws = w
    # The grid is its own bounded universe (n^n rows), so skip the F cap.
    P = Presentation.make(ws, [Assignment(r, ws) for r in rows], check_caps=False)
    index = {f: i for i, f in enumerate(P.F)}
    atom_of = {}
    for h, r in zip(hs, rows):
        atom_of[h] = Element(P, 1 << index[Assignment(r, ws)])
    R = OrderedPartition(tuple(atom_of[h] for h in sorted(atom_of)))
    grids = []
    for k in range(n):
        blocks = []
        for j in range(n):
            m = 0
            for h, a in atom_of.items():
                if h[k] == j:
                    m |= a.mask
            blocks.append(Element(P, m))
        grids.append(tuple(blocks))
    return P, R, grids


# --- JSON interchange -------------------------------------------------------

def presentation_to_json(P: Presentation) -> dict:
    return {"w": list(P.w), "F": [list(f.bits) for f in P.F]}


def presentation_from_json(obj: dict) -> Presentation:
    try:
        w = [int(a) for a in obj["w"]]
        rows = [[int(b) for b in row] for row in obj["F"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed presentation JSON: {exc}") from exc
    return Presentation.from_bit_rows(w, rows)


def element_to_json(e: Element) -> dict:
    return {"support": list(e.support)}


def element_from_json(obj: dict, P: Presentation) -> Element:
    try:
        support = [int(i) for i in obj["support"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed element JSON: {exc}") from exc
    return P.element(support)


def load_presentation(path: str) -> Presentation:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError(f"invalid JSON in {path}: {exc}") from exc
    return presentation_from_json(obj)
