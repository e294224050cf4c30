"""Forcing conditions at desk scale: truncation, order, and amalgamation.

A condition is a presentation (w, F) whose family F hits every label with a
1 and is closed under truncation at every label.  The module implements the
partial order on conditions, upper bounds for ascending chains, the
two-condition amalgam over a common root, and the full m-fold amalgamation
that produces a nonzero alternating combination below the translated term.
Every construction verifies its own output and raises IntegrityError on
failure rather than returning a bad value.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Iterable, Sequence

from . import terms
from .ba import (
    INF,
    Assignment,
    Element,
    Presentation,
    denote,
    eval_hom,
    is_zero,
    leq_elem,
    subalgebra_closure,
)
from .errors import IntegrityError, PreconditionError, UsageError
from .terms import Gen, Term, big_and, big_or, substitute

# A condition is a presentation satisfying validate_condition; no separate type.
Condition = Presentation


@dataclass(frozen=True)
class PosetBounds:
    """Desk-scale stand-ins for the poset's cardinal parameters."""

    mu_bound: int = 24      # cap on |w| and |F|
    lambda_bound: int = 64  # cap on label values

    def __post_init__(self):
        if self.mu_bound <= 0 or self.lambda_bound <= 0:
            raise UsageError("bounds must be positive")


@dataclass(frozen=True)
class IsoMap:
    """The unique order-preserving bijection between two equinumerous label sets."""

    source: tuple[int, ...]
    target: tuple[int, ...]

    def __post_init__(self):
        if tuple(sorted(set(self.source))) != self.source:
            raise UsageError("source not sorted/duplicate-free")
        if tuple(sorted(set(self.target))) != self.target:
            raise UsageError("target not sorted/duplicate-free")
        if len(self.source) != len(self.target):
            raise UsageError("source and target differ in cardinality")

    @staticmethod
    def between(source: Iterable[int], target: Iterable[int]) -> "IsoMap":
        return IsoMap(tuple(sorted(source)), tuple(sorted(target)))

    def apply(self, label: int) -> int:
        try:
            return self.target[self.source.index(label)]
        except ValueError:
            raise UsageError(f"label {label} not in source {self.source}") from None

    def inverse(self) -> "IsoMap":
        return IsoMap(self.target, self.source)

    def relabel(self, f: Assignment) -> Assignment:
        """Push an assignment on the source forward to the target (f o H^-1)."""
        if f.w != self.source:
            raise UsageError("assignment domain differs from map source")
        return Assignment.from_map({self.apply(a): b for a, b in f.as_map().items()})

    def pull(self, f: Assignment) -> Assignment:
        """Pull an assignment on the target back to the source (f o H)."""
        if f.w != self.target:
            raise UsageError("assignment domain differs from map target")
        return Assignment.from_map({a: f.value(self.apply(a)) for a in self.source})


# --- truncation and closure --------------------------------------------------

def truncate(f: Assignment, alpha) -> Assignment:
    """f kept below alpha, zeroed at and above; truncate(f, INF) = f."""
    return f.truncate(alpha)


def closure_cl(F: Iterable[Assignment], w: Sequence[int]) -> tuple[Assignment, ...]:
    """Assignments agreeing with some member of F on every finite subdomain.

    For finite w, taking the subdomain u = w shows the closure is F itself;
    this shortcut is what we implement, returning F in canonical order.
    """
    ws = tuple(sorted(set(w)))
    fs = tuple(sorted(set(F)))
    for f in fs:
        if f.w != ws:
            raise UsageError("assignment domain differs from w")
    return fs


def truncation_closure(F: Iterable[Assignment], w: Sequence[int]) -> tuple[Assignment, ...]:
    """Close F under truncation at every label of w."""
    ws = tuple(sorted(set(w)))
    out = set(F)
    for f in list(out):
        for a in ws:
            out.add(f.truncate(a))
    return tuple(sorted(out))


# --- condition validity and order --------------------------------------------

def validate_condition(p: Presentation) -> list[str]:
    """All violations of the two condition clauses; empty list means valid."""
    violations = []
    for a in p.w:
        if not any(f.value(a) == 1 for f in p.F):
            violations.append(f"(alpha): no f with f({a}) = 1")
    fset = set(p.F)
    for f in p.F:
        for a in p.w:
            if f.truncate(a) not in fset:
                violations.append(f"(beta): truncation of {f.bits} at {a} missing")
    return violations


def is_condition(p: Presentation) -> bool:
    return not validate_condition(p)


def require_condition(p: Presentation, name: str = "p") -> None:
    bad = validate_condition(p)
    if bad:
        raise UsageError(f"{name} is not a valid condition: {bad[0]}")


def cond_leq(p: Presentation, q: Presentation) -> bool:
    """The poset order: w grows, restrictions land in cl(F^p), members extend."""
    require_condition(p, "p")
    require_condition(q, "q")
    if not set(p.w) <= set(q.w):
        return False
    fp = set(p.F)
    restricted = {f.restrict(p.w) for f in q.F}
    if not restricted <= fp:  # clause (alpha); cl(F^p) = F^p for finite w
        return False
    return all(f in restricted for f in p.F)  # clause (beta)


def chain_upper_bound(chain: Sequence[Presentation]) -> Presentation:
    """Upper bound of an ascending chain of conditions.

    w is the union; for each member f of each F_z we pick the least (in
    canonical bit-string order) extension g_f over w whose restriction to
    every w_z lies in F_z, then close the picks under truncation so the
    result is itself a condition.
    """
    if not chain:
        raise UsageError("empty chain")
    for p, q in zip(chain, chain[1:]):
        if not cond_leq(p, q):
            raise UsageError("chain is not ascending under cond_leq")
    require_condition(chain[0], "chain[0]")
    w = tuple(sorted(set().union(*(set(p.w) for p in chain))))
    fsets = [set(p.F) for p in chain]
    picks: set[Assignment] = set()
    for p in chain:
        for f in p.F:
            g = _least_extension(f, w, chain, fsets)
            if g is None:
                raise IntegrityError(
                    f"no extension of {f.bits} over w={w}; chain not genuinely ascending"
                )
            picks.add(g)
    F = truncation_closure(picks, w)
    q = Presentation.make(w, F, check_caps=False)
    bad = validate_condition(q)
    if bad:
        raise IntegrityError(f"chain upper bound invalid: {bad[0]}")
    for p in chain:
        if not cond_leq(p, q):
            raise IntegrityError("chain upper bound not above a member")
    return q


def _least_extension(
    f: Assignment,
    w: tuple[int, ...],
    chain: Sequence[Presentation],
    fsets: list[set[Assignment]],
) -> Assignment | None:
    free = [a for a in w if a not in f.w]
    base = f.as_map()
    for bits in iproduct((0, 1), repeat=len(free)):
        g = Assignment.from_map({**base, **dict(zip(free, bits))})
        if all(g.restrict(p.w) in fs for p, fs in zip(chain, fsets)):
            return g
    return None


# --- agreement classes: subalgebra membership without closure enumeration ----

def agreement_classes(P: Presentation, labels: Iterable[int]) -> list[int]:
    """Partition of F (as bitmasks) by agreement on the given labels.

    The subalgebra generated by {x_a : a in labels} is exactly the set of
    elements whose support is a union of these classes: each class is the
    denotation of the conjunction of literals matching its pattern, and
    every generator's support is a union of classes.
    """
    sub = tuple(sorted(set(labels)))
    if not set(sub) <= set(P.w):
        raise UsageError(f"labels {sub} not all in w")
    groups: dict[tuple[int, ...], int] = {}
    for i, f in enumerate(P.F):
        key = f.restrict(sub).bits
        groups[key] = groups.get(key, 0) | (1 << i)
    return sorted(groups.values())


def in_generated_subalgebra(e: Element, gens: Iterable[int], P: Presentation) -> bool:
    """True iff e lies in the subalgebra generated by {x_a : a in gens}."""
    if e.presentation != P:
        raise UsageError("element over a different presentation")
    return all(c & e.mask in (0, c) for c in agreement_classes(P, gens))


def check_generator_novelty(p: Presentation, alpha: int) -> tuple[bool, bool, bool]:
    """(x_a nonzero, x_a not generated below a, nothing nonzero below x_a).

    "Below a" means the subalgebra generated by {x_b : b in w, b < a}.
    All three hold for every label of a valid condition.
    """
    if alpha not in p.w:
        raise UsageError(f"label {alpha} not in w")
    x_mask = denote(Gen(alpha), p).mask
    classes = agreement_classes(p, [b for b in p.w if b < alpha])
    nonzero = x_mask != 0
    not_generated = not all(c & x_mask in (0, c) for c in classes)
    nothing_below = not any(c & ~x_mask == 0 for c in classes)
    return nonzero, not_generated, nothing_below


def baq_embedding_check(p: Presentation, q: Presentation) -> bool:
    """Does BA[p] embed in BA[q] generator-by-generator?

    A term over w^p is zero in BA[p] iff no restriction pattern of F^p
    satisfies it, and likewise for F^q restricted to w^p; so it suffices to
    compare zero-ness of the characteristic term of every pattern occurring
    on either side (a complete set of representatives for the finite
    carrier).
    """
    if not cond_leq(p, q):
        raise UsageError("baq_embedding_check requires p <= q")
    r_p = set(p.F)
    r_q = {f.restrict(p.w) for f in q.F}
    for g in r_p | r_q:
        t = _characteristic_term(g)
        if is_zero(denote(t, p)) != is_zero(denote(t, q)):
            return False
    return True


def _characteristic_term(g: Assignment) -> Term:
    lits = [Gen(a) if b else terms.Not(Gen(a)) for a, b in zip(g.w, g.bits)]
    return big_and(lits)


# --- pair amalgam (two isomorphic conditions over a common root) -------------

def pair_amalgam(p0: Presentation, p1: Presentation, H: IsoMap) -> Presentation:
    """Amalgamate two isomorphic conditions whose overlap is exactly the
    fixed-point set of the order isomorphism H: w^p0 -> w^p1.

    The result glues each f in F^p1 with its pullback along H and closes
    under truncation; it is verified to be a condition above both inputs.
    """
    require_condition(p0, "p0")
    require_condition(p1, "p1")
    if H.source != p0.w or H.target != p1.w:
        raise PreconditionError("(a)", "H is not the order isomorphism w^p0 -> w^p1")
    if {H.relabel(f) for f in p0.F} != set(p1.F):
        raise PreconditionError("(b)", "H does not map p0 onto p1")
    if any(a > H.apply(a) for a in p0.w):
        raise PreconditionError("(c)", "some label exceeds its image")
    inter = set(p0.w) & set(p1.w)
    fixed = {a for a in p0.w if H.apply(a) == a}
    if fixed != inter or not all(a in p0.w for a in inter):
        raise PreconditionError("(d)", "fixed points of H differ from the overlap")
    wq = tuple(sorted(set(p0.w) | set(p1.w)))
    F: set[Assignment] = set()
    for f in p1.F:
        glued = f.union(H.pull(f))
        F.add(glued)
        for beta in wq:
            F.add(glued.truncate(beta))
    q = Presentation.make(wq, F, check_caps=False)
    bad = validate_condition(q)
    if bad:
        raise IntegrityError(f"pair amalgam invalid: {bad[0]}")
    if not (cond_leq(p0, q) and cond_leq(p1, q)):
        raise IntegrityError("pair amalgam not above both inputs")
    return q


# --- delta families and the m-fold amalgam -----------------------------------

@dataclass(frozen=True)
class DeltaFamily:
    """m isomorphic conditions over a common root, copies at increasing blocks."""

    conditions: tuple[Presentation, ...]
    root: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.conditions)

    def H(self, ell: int, k: int) -> IsoMap:
        """Order isomorphism from w^{p^k} onto w^{p^ell}."""
        return IsoMap.between(self.conditions[k].w, self.conditions[ell].w)


def delta_family_violations(fam: DeltaFamily) -> list[str]:
    """Check the family clauses (a)-(d); returns failing clause labels."""
    out = []
    m = fam.m
    if m < 1:
        return ["(a): empty family"]
    for ell, p in enumerate(fam.conditions):
        if validate_condition(p):
            out.append(f"(a): p{ell} is not a valid condition")
    w0 = fam.conditions[0].w
    if any(len(p.w) != len(w0) for p in fam.conditions):
        out.append("(b): order types differ")
        return out
    for ell in range(m):
        for k in range(m):
            H = fam.H(ell, k)
            if {H.relabel(f) for f in fam.conditions[k].F} != set(fam.conditions[ell].F):
                out.append(f"(c): H_{{{ell},{k}}} does not map p{k} onto p{ell}")
    root = set(fam.root)
    for a in w0:
        seq = [fam.H(ell, 0).apply(a) for ell in range(1, m)]
        # images are strictly increasing or constant; constant exactly on the root
        if a in root:
            if not all(x == a for x in seq):
                out.append(f"(d): root label {a} not constant across copies")
        elif seq and not all(x < y for x, y in zip(seq, seq[1:])):
            out.append(f"(d): images of {a} not strictly increasing")
    for ell in range(m):
        for k in range(ell + 1, m):
            if set(fam.conditions[ell].w) & set(fam.conditions[k].w) != root:
                out.append(f"(d): w^p{ell} and w^p{k} overlap differently from the root")
        H = fam.H(ell, 0)
        if any(H.apply(a) != a for a in fam.root):
            out.append(f"(d): H_{{{ell},0}} moves a root label")
    # cross-equality: images of distinct labels never collide across copies
    seen: dict[int, int] = {}
    for a in w0:
        for ell in range(m):
            img = fam.H(ell, 0).apply(a)
            if seen.setdefault(img, a) != a:
                out.append(f"(d): copies collide at label {img}")
    return out


@dataclass(frozen=True)
class AmalgamInstance:
    """A delta family plus the term data of the m-fold amalgamation.

    tau is a term in abstract variables x1..xn; alpha0 lists the concrete
    labels of w^{p^0} it is applied to.
    """

    family: DeltaFamily
    tau: Term
    alpha0: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.alpha0)

    @property
    def m(self) -> int:
        return self.family.m

    def alphas(self, ell: int) -> tuple[int, ...]:
        H = self.family.H(ell, 0)
        return tuple(H.apply(a) for a in self.alpha0)

    def tau_at(self, ell: int) -> Term:
        labels = self.alphas(ell)
        return substitute(self.tau, {i + 1: labels[i] for i in range(self.n)})


def amalgam_violations(inst: AmalgamInstance) -> list[str]:
    """All failing preconditions (a)-(g) of the m-fold amalgamation."""
    out = delta_family_violations(inst.family)
    p0 = inst.family.conditions[0]
    n, m = inst.n, inst.m
    if any(x >= y for x, y in zip(inst.alpha0, inst.alpha0[1:])):
        out.append("(e): alpha0 not strictly increasing")
    if not set(inst.alpha0) <= set(p0.w):
        out.append("(e): alpha0 not within w^p0")
    vars_ = terms.labels_of(inst.tau)
    if not vars_ <= set(range(1, n + 1)):
        out.append(f"(e): tau uses variables outside x1..x{n}")
    if not out:
        e = denote(inst.tau_at(0), p0)
        if is_zero(e):
            out.append("(f): tau is zero in BA[p0]")
        elif in_generated_subalgebra(e, inst.family.root, p0):
            out.append("(f): tau lies in the root-generated subalgebra")
    if not m - 1 > n + 1:
        out.append(f"(g): m-1 = {m - 1} is not > n+1 = {n + 1}")
    return out


def find_separating_pair(
    p0: Presentation, tau: Term, alpha0: Sequence[int], root: Sequence[int]
) -> tuple[object, Assignment, Assignment]:
    """Minimal-truncation pair of homomorphisms separating tau over the root.

    Returns (gamma, f0, f1) with f0, f1 in F^p0 agreeing on the root,
    evaluating the instantiated tau to 0 and 1 respectively, both fixed by
    truncation at gamma, with gamma minimal in w^p0 + {INF} and the pair
    lexicographically least at that gamma.
    """
    require_condition(p0, "p0")
    t = substitute(tau, {i + 1: a for i, a in enumerate(alpha0)})
    e = denote(t, p0)
    if is_zero(e):
        raise PreconditionError("(f)", "tau is zero in BA[p0]; no separating pair exists")
    if in_generated_subalgebra(e, root, p0):
        raise PreconditionError(
            "(f)", "tau lies in the root-generated subalgebra; no separating pair exists"
        )
    root_s = tuple(sorted(set(root)))
    for gamma in list(p0.w) + [INF]:
        fixed = [f for f in p0.F if f.truncate(gamma) == f]
        for f0, f1 in iproduct(fixed, fixed):
            if (
                f0.restrict(root_s) == f1.restrict(root_s)
                and eval_hom(t, f0) == 0
                and eval_hom(t, f1) == 1
            ):
                return gamma, f0, f1
    raise IntegrityError("clause (f) held but no separating pair was found")


def tau_star(tau: Term, tuples: Sequence[Sequence[int]]) -> Term:
    """Alternating combination: meet of odd-copy instances minus join of
    even-copy instances (copies 1..m-1)."""
    m = len(tuples)
    if m < 2:
        raise UsageError("tau_star needs at least two copies")
    n = len(tuples[0])
    def inst(ell: int) -> Term:
        return substitute(tau, {i + 1: tuples[ell][i] for i in range(n)})
    meets = [inst(2 * ell + 1) for ell in range((m - 2) // 2 + 1)]
    cuts = [inst(2 * ell) for ell in range(1, (m - 1) // 2 + 1)]
    body = big_and(meets)
    if cuts:
        body = terms.And(body, terms.Not(big_or(cuts)))
    return body


@dataclass(frozen=True)
class Certificate:
    """Machine-checked facts about an amalgamation output."""

    facts: tuple[tuple[str, bool, str], ...]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.facts)

    def to_json(self) -> list[dict]:
        return [
            {"fact": name, "pass": passed, "detail": detail}
            for name, passed, detail in self.facts
        ]


def m_amalgam(inst: AmalgamInstance) -> tuple[Presentation, Term, Certificate]:
    """The m-fold amalgamation: a condition above every copy in which the
    alternating combination tau* is nonzero and below the copy-0 instance.

    Raises PreconditionError naming the first failing clause; raises
    IntegrityError if any certificate fact fails (implementation bug).
    """
    bad = amalgam_violations(inst)
    if bad:
        clause = bad[0].split(":")[0]
        raise PreconditionError(clause, bad[0])
    fam = inst.family
    p0 = fam.conditions[0]
    m = fam.m
    gamma, f_star0, f_star1 = find_separating_pair(
        p0, inst.tau, inst.alpha0, fam.root
    )
    wq = tuple(sorted(set().union(*(set(p.w) for p in fam.conditions))))
    pulls = [fam.H(0, ell) for ell in range(m)]  # maps w^{p^ell} -> w^{p^0}

    def spread(f: Assignment) -> Assignment:
        """Union over ell of f o H_{0,ell}: copy f's values to every block."""
        acc: dict[int, int] = {}
        for ell in range(m):
            for b in fam.conditions[ell].w:
                v = f.value(pulls[ell].apply(b))
                if acc.setdefault(b, v) != v:
                    raise IntegrityError("copies disagree on the root")
        return Assignment.from_map(acc)

    F: set[Assignment] = set()
    for f in p0.F:
        u = spread(f)
        F.add(u)
        for beta in wq:
            F.add(u.truncate(beta))
    gmap: dict[int, int] = {}
    for ell in range(m):
        src = f_star1 if (ell == 0 or ell % 2 == 1) else f_star0
        for b in fam.conditions[ell].w:
            v = src.value(pulls[ell].apply(b))
            if gmap.setdefault(b, v) != v:
                raise IntegrityError("piecewise g is inconsistent on the root")
    g = Assignment.from_map(gmap)
    F.add(g)
    for beta in wq:
        F.add(g.truncate(beta))
    q = Presentation.make(wq, F, check_caps=False)
    star = tau_star(inst.tau, [inst.alphas(ell) for ell in range(m)])

    facts = []
    bad_q = validate_condition(q)
    facts.append(("q is a valid condition", not bad_q, bad_q[0] if bad_q else ""))
    for ell in range(m):
        ok = not bad_q and cond_leq(fam.conditions[ell], q)
        facts.append((f"p{ell} <= q", ok, ""))
    facts.append(("w^q is the union of the w^p", set(q.w) == set(wq), ""))
    star_elem = denote(star, q)
    facts.append(("tau* nonzero in BA[q]", not is_zero(star_elem), ""))
    base_elem = denote(inst.tau_at(0), q)
    facts.append(("tau* <= tau(alpha^0) in BA[q]", leq_elem(star_elem, base_elem), ""))
    cert = Certificate(tuple(facts))
    if not cert.ok:
        failing = [name for name, passed, _ in facts if not passed]
        raise IntegrityError(f"amalgam certificate failed: {failing}")
    return q, star, cert


# --- JSON interchange ---------------------------------------------------------

def delta_family_to_json(fam: DeltaFamily) -> dict:
    from .ba import presentation_to_json

    return {
        "conditions": [presentation_to_json(p) for p in fam.conditions],
        "root": list(fam.root),
        "maps": [
            [[a, fam.H(ell, 0).apply(a)] for a in fam.conditions[0].w]
            for ell in range(fam.m)
        ],
    }


def delta_family_from_json(obj: dict) -> DeltaFamily:
    from .ba import presentation_from_json

    try:
        conditions = tuple(presentation_from_json(c) for c in obj["conditions"])
        root = tuple(int(a) for a in obj["root"])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed delta-family JSON: {exc}") from exc
    fam = DeltaFamily(conditions, root)
    maps = obj.get("maps")
    if maps is not None:
        for ell, pairs in enumerate(maps):
            H = fam.H(ell, 0)
            for a, b in pairs:
                if H.apply(int(a)) != int(b):
                    raise UsageError(
                        f"declared map for copy {ell} disagrees with the order isomorphism"
                    )
    return fam


def amalgam_instance_to_json(inst: AmalgamInstance) -> dict:
    obj = delta_family_to_json(inst.family)
    obj["tau"] = terms.to_sexpr(inst.tau)
    obj["alpha0"] = list(inst.alpha0)
    return obj


def amalgam_instance_from_json(obj: dict) -> AmalgamInstance:
    fam = delta_family_from_json(obj)
    try:
        tau = terms.parse_sexpr(obj["tau"])
        alpha0 = tuple(int(a) for a in obj["alpha0"])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed amalgam-instance JSON: {exc}") from exc
    return AmalgamInstance(fam, tau, alpha0)
