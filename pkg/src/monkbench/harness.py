"""Seeded verification suites over the three core modules.

Each suite maps a case index to a deterministic case seed (counter-based
split of the master seed), runs the case's checks, and aggregates records
in index order.  Reports are therefore identical for the same
(suite, seed, count, bounds) whether cases run serially or on threads.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from random import Random

from . import ba, cuts, forcing, generators, intervals
from .ba import Presentation, denote
from .errors import PreconditionError, UsageError
from .forcing import PosetBounds
from .generators import derive_seed
from .symcard import ALEPH0, ONE_CARD, reg
from .terms import Gen


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    seed: int
    count: int
    bounds: PosetBounds = PosetBounds()
    parallel: bool = False

    def __post_init__(self):
        if self.count <= 0:
            raise UsageError("case count must be positive")


@dataclass
class CaseRecord:
    index: int
    seed: int
    digest: str
    checks: list[tuple[str, bool]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "seed": self.seed,
            "digest": self.digest,
            "checks": [{"name": n, "pass": ok} for n, ok in self.checks],
            "pass": self.passed,
        }


@dataclass
class Report:
    suite: str
    seed: int
    count: int
    bounds: PosetBounds
    cases: list[CaseRecord]
    wall_time: float = 0.0
    sub_reports: list["Report"] = field(default_factory=list)

    @property
    def failures(self) -> list[CaseRecord]:
        own = [c for c in self.cases if not c.passed]
        for sub in self.sub_reports:
            own.extend(sub.failures)
        return own

    @property
    def total_cases(self) -> int:
        return len(self.cases) + sum(r.total_cases for r in self.sub_reports)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        obj = {
            "suite": self.suite,
            "seed": self.seed,
            "count": self.count,
            "bounds": {
                "mu_bound": self.bounds.mu_bound,
                "lambda_bound": self.bounds.lambda_bound,
            },
            "cases": [c.to_json() for c in self.cases],
            "failures": [
                {"seed": c.seed, "digest": c.digest, "index": c.index}
                for c in self.failures
            ],
            "summary": {
                "total": self.total_cases,
                "failed": len(self.failures),
            },
            "wall_time": self.wall_time,
        }
        if self.sub_reports:
            obj["sub_reports"] = [r.to_json() for r in self.sub_reports]
        return obj


DEFAULT_COUNTS = {
    "freeness": 500,
    "novelty": 500,
    "order-embedding": 300,
    "chain": 200,
    "pair-amalgam": 200,
    "amalgam-2.8": 200,
    "amalgam-2.8-negative": 60,
    "pi-brute": 100,
    "interval-laws": 10000,
    "cut-calculus": 27,
    "symbolic-pichi": 4,
    "grid-gadgets": 13,
}


def run_suite(cfg: SuiteConfig) -> Report:
    """Run one named suite (or "all") and aggregate a report."""
    start = time.monotonic()
    if cfg.suite == "all":
        subs = []
        for name, count in DEFAULT_COUNTS.items():
            sub = run_suite(SuiteConfig(name, cfg.seed, count, cfg.bounds, cfg.parallel))
            subs.append(sub)
        report = Report("all", cfg.seed, cfg.count, cfg.bounds, [], sub_reports=subs)
        report.wall_time = time.monotonic() - start
        return report
    if cfg.suite not in _SUITES:
        raise UsageError(
            f"unknown suite {cfg.suite!r}; known: {', '.join(sorted(_SUITES))} or 'all'"
        )
    case_fn = _SUITES[cfg.suite]
    indices = range(cfg.count)

    def run_case(i: int) -> CaseRecord:
        return case_fn(i, derive_seed(cfg.seed, cfg.suite, i), cfg)

    if cfg.parallel:
        with ThreadPoolExecutor(max_workers=4) as pool:
            cases = list(pool.map(run_case, indices))
    else:
        cases = [run_case(i) for i in indices]
    report = Report(cfg.suite, cfg.seed, cfg.count, cfg.bounds, cases)
    report.wall_time = time.monotonic() - start
    return report


# --- individual suites ----------------------------------------------------------

def _gen_masks(p: Presentation) -> list[int]:
    return [denote(Gen(a), p).mask for a in p.w]


def _case_freeness(i: int, seed: int, cfg: SuiteConfig) -> CaseRecord:
    p = generators.gen_random_condition(seed, cfg.bounds)
    gen_masks = _gen_masks(p)
    full = p.full_mask
    mismatches = 0
    total = 0
    for split in iproduct((0, 1, 2), repeat=len(p.w)):
        u = [a for a, s in zip(p.w, split) if s == 1]
        v = [a for a, s in zip(p.w, split) if s == 2]
        free = ba.free_relation_holds(u, v, p)
        mask = full
        for a, s in zip(range(len(p.w)), split):
            if s == 1:
                mask &= gen_masks[a]
            elif s == 2:
                mask &= full & ~gen_masks[a]
        if free != (mask == 0):
            mismatches += 1
        total += 1
    return CaseRecord(
        i, seed, f"condition |w|={len(p.w)} |F|={len(p.F)}",
        [(f"freeness agrees on {total} (u,v) splits", mismatches == 0)],
    )


def _case_novelty(i: int, seed: int, cfg: SuiteConfig) -> CaseRecord:
    p = generators.gen_random_condition(seed, cfg.bounds)
    checks = []
    for a in p.w:
        nonzero, not_gen, nothing_below = forcing.check_generator_novelty(p, a)
        checks.append((f"novelty flags at label {a}", nonzero and not_gen and nothing_below))
    return CaseRecord(i, seed, f"condition |w|={len(p.w)} |F|={len(p.F)}", checks)


def _case_order_embedding(i: int, seed: int, cfg: SuiteConfig) -> CaseRecord:
    checks = []
    if i % 2 == 0:
        chain = generators.gen_ascending_chain(seed, 3, cfg.bounds)
        q = forcing.chain_upper_bound(chain)
        p = chain[0]
        digest = f"chain len={len(chain)} -> |w^q|={len(q.w)}"
        # transitivity on the sampled triple (p0, p1, q)
        checks.append(
            ("cond_leq transitive on sampled triple",
             not (forcing.cond_leq(chain[0], chain[1]) and forcing.cond_leq(chain[1], q))
             or forcing.cond_leq(chain[0], q))
        )
    else:
        fam = generators.gen_delta_family(seed, 2, cfg.bounds)
        p = fam.conditions[0]
        q = forcing.pair_amalgam(p, fam.conditions[1], fam.H(1, 0))
        digest = f"pair amalgam |w^q|={len(q.w)}"
    checks.append(("p <= q", forcing.cond_leq(p, q)))
    checks.append(("BA[p] embeds in BA[q]", forcing.baq_embedding_check(p, q)))
    return CaseRecord(i, seed, digest, checks)


def _case_chain(i: int, seed: int, cfg: SuiteConfig) -> CaseRecord:
    length = 2 + i % 5  # chain lengths 2..6
    chain = generators.gen_ascending_chain(seed, length, cfg.bounds)
    q = forcing.chain_upper_bound(chain)
    checks = [("upper bound is a valid condition", forcing.is_condition(q))]
    for j, p in enumerate(chain):
        checks.append((f"chain[{j}] <= bound", forcing.cond_leq(p, q)))
    return CaseRecord(i, seed, f"chain len={length}", checks)


def _case_pair_amalgam(i: int, seed: int, cfg: SuiteConfig) -> CaseRecord:
    fam = generators.gen_delta_family(seed, 2, cfg.bounds)
    p0, p1 = fam.conditions
    q = forcing.pair_amalgam(p0, p1, fam.H(1, 0))
    checks = [
        ("amalgam is a valid condition", forcing.is_condition(q)),
        ("p0 <= q", forcing.cond_leq(p0, q)),
        ("p1 <= q", forcing.cond_leq(p1, q)),
    ]
    return CaseRecord(i, seed, f"delta pair root={fam.root}", checks)


def _case_amalgam(i: int, seed: int, cfg: SuiteConfig) -> CaseRecord:
    n = 1 + i % 3
    m = n + 3
    inst = generators.gen_amalgam_instance(seed, n, m, cfg.bounds)
    q, star, cert = forcing.m_amalgam(inst)
    checks = [(name, passed) for name, passed, _ in cert.facts]
    return CaseRecord(i, seed, f"amalgam n={n} m={m} |w^q|={len(q.w)}", checks)


def _case_amalgam_negative(i: int, seed: int, cfg: SuiteConfig) -> CaseRecord:
    n = 1 + i % 3
    m = n + 2  # m - 1 = n + 1: clause (g) must reject
    inst = generators.gen_amalgam_instance(seed, n, m, cfg.bounds)
    try:
        forcing.m_amalgam(inst)
        rejected, clause = False, ""
    except PreconditionError as exc:
        rejected, clause = True, exc.clause
    return CaseRecord(
        i, seed, f"negative amalgam n={n} m={m}",
        [("rejected at clause (g)", rejected and clause == "(g)")],
    )


def _case_pi_brute(i: int, seed: int, cfg: SuiteConfig) -> CaseRecord:
    p = generators.gen_random_condition(seed, cfg.bounds)
    rng = Random(derive_seed(seed, "pi-gens"))
    gens = [denote(Gen(a), p) for a in p.w]
    carrier = None
    for size in range(min(3, len(gens)), 0, -1):
        picked = rng.sample(gens, size)
        c = ba.subalgebra_closure(p, picked)
        if len(c.nonzero()) <= ba.BRUTE_DENSE_CAP:
            carrier = c
            break
    if carrier is None:
        carrier = ba.subalgebra_closure(p, [])
    expected = ba.brute_force_min_dense(carrier)
    return CaseRecord(
        i, seed, f"carrier |C|={len(carrier.elements)}",
        [("pi_density equals brute-force minimum", ba.pi_density(carrier) == expected)],
    )


def random_rational(rng: Random, span: int = 12) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 6))


def random_interval_elem(rng: Random, order=intervals.Rationals()) -> intervals.IntervalElem:
    """Seeded random element over the rationals (finite union of intervals)."""
    raw = []
    for _ in range(rng.randint(0, 3)):
        a = intervals.NEG_INF if rng.random() < 0.1 else random_rational(rng)
        b = intervals.POS_INF if rng.random() < 0.1 else random_rational(rng)
        raw.append((a, b))
    return intervals.IntervalElem.make(order, raw)


def _case_interval_laws(i: int, seed: int, cfg: SuiteConfig) -> CaseRecord:
    rng = Random(seed)
    x = random_interval_elem(rng)
    y = random_interval_elem(rng)
    z = random_interval_elem(rng)
    points = {random_rational(rng, 20) for _ in range(12)}
    for a, b in x.intervals + y.intervals + z.intervals:
        for e in (a, b):
            if not isinstance(e, (intervals._NegInf, intervals._PosInf)):
                points.add(e)
                points.add(e - Fraction(1, 7))
                points.add(e + Fraction(1, 7))

    def agree(elem, predicate):
        return all(elem.contains(p) == predicate(p) for p in points)

    u = intervals.union(x, y)
    m = intervals.intersect(x, y)
    checks = [
        ("union is pointwise or", agree(u, lambda p: x.contains(p) or y.contains(p))),
        ("intersection is pointwise and", agree(m, lambda p: x.contains(p) and y.contains(p))),
        ("complement is pointwise not", agree(intervals.complement(x), lambda p: not x.contains(p))),
        ("De Morgan", intervals.complement(u)
         == intervals.intersect(intervals.complement(x), intervals.complement(y))),
        ("distributivity", intervals.intersect(x, intervals.union(y, z))
         == intervals.union(intervals.intersect(x, y), intervals.intersect(x, z))),
        ("leq agrees with point semantics",
         intervals.leq(x, y) == all(y.contains(p) for p in points if x.contains(p))),
        ("normalization idempotent",
         intervals.IntervalElem.make(x.order, x.intervals) == x),
    ]
    return CaseRecord(i, seed, f"elements with {len(x.intervals)}/{len(y.intervals)} intervals", checks)


def _case_cut_calculus(i: int, seed: int, cfg: SuiteConfig) -> CaseRecord:
    if i < 7:
        n = i + 1
        order = intervals.FiniteOrder(n)
        carrier = cuts.finite_interval_presentation(order)
        ultras = cuts.enumerate_ultrafilters_finite(order)
        checks = [
            ("ultrafilter count = n = atom count",
             len(ultras) == n == len(carrier.atoms)),
        ]
        for uf, cut in ultras:
            brute = ba.pi_ultrafilter(uf, carrier)
            symbolic = cuts.pi_of_cut(order, cut)
            checks.append(
                (f"pi(F,B) = 1 = pi_of_cut at position {cut.k}",
                 brute == 1 and symbolic == ONE_CARD),
            )
        return CaseRecord(i, seed, f"finite order n={n}", checks)
    rng = Random(seed)
    kind = (i - 7) % 3
    if kind == 0:
        cut = cuts.AtRationalLeft(random_rational(rng))
    elif kind == 1:
        cut = cuts.AtRationalRight(random_rational(rng))
    else:
        d = rng.choice([2, 3, 5, 7, 10])
        cut = cuts.AtIrrational(d, random_rational(rng))
    samples = [random_interval_elem(rng) for _ in range(1000)]
    report = cuts.cut_ultrafilter_props(cut, samples)
    return CaseRecord(
        i, seed, f"rational cut {cuts.cut_to_json(cut)}",
        [("ultrafilter laws on 1000 samples", report.ok)],
    )


def _case_symbolic_pichi(i: int, seed: int, cfg: SuiteConfig) -> CaseRecord:
    lam = reg("lambda1", 1)
    checks = {
        0: ("pichi of a finite order is 1",
            cuts.pichi_order(intervals.FiniteOrder(5)) == ONE_CARD),
        1: ("pichi of the rationals is aleph0",
            cuts.pichi_order(intervals.Rationals()) == ALEPH0),
        2: ("pichi of lambda x Q is lambda",
            cuts.pichi_order(intervals.LexQ(lam)) == lam),
        3: ("pi of the top cut of lambda x Q is lambda",
            cuts.pi_of_cut(intervals.LexQ(lam), cuts.Top()) == lam),
    }
    name, ok = checks[i % 4]
    return CaseRecord(i, seed, name, [(name, ok)])


def _case_grid_gadgets(i: int, seed: int, cfg: SuiteConfig) -> CaseRecord:
    if i < 3:
        n = i + 2
        P, R, grids = ba.product_grid(n)
        checks = [("partition has n^n atoms", len(R.blocks) == n ** n)]
        disjoint = True
        for Q in grids:
            seen = 0
            for b in Q:
                if seen & b.mask:
                    disjoint = False
                seen |= b.mask
            if seen != P.full_mask:
                disjoint = False
        checks.append(("grids are partitions", disjoint))
        all_nonzero = True
        for pick in iproduct(*grids):
            acc = P.full_mask
            for b in pick:
                acc &= b.mask
            if acc == 0:
                all_nonzero = False
                break
        checks.append((f"all {n}^{n} selections have nonzero meet", all_nonzero))
        return CaseRecord(i, seed, f"product grid n={n}", checks)
    rng = Random(seed)
    n = rng.choice([2, 3])
    P, R, _ = ba.product_grid(n)
    ok = True
    for _ in range(100):
        mask = rng.getrandbits(len(P.F)) & P.full_mask
        x = ba.Element(P, mask)
        hit = ba.first_hit_selector(x, R)
        if (hit.mask == 0) != (x.mask == 0):
            ok = False
        if hit.mask != 0 and hit not in R.blocks:
            ok = False
    return CaseRecord(
        i, seed, f"selector sweep n={n}",
        [("selector zero iff zero, result a block", ok)],
    )


_SUITES = {
    "freeness": _case_freeness,
    "novelty": _case_novelty,
    "order-embedding": _case_order_embedding,
    "chain": _case_chain,
    "pair-amalgam": _case_pair_amalgam,
    "amalgam-2.8": _case_amalgam,
    "amalgam-2.8-negative": _case_amalgam_negative,
    "pi-brute": _case_pi_brute,
    "interval-laws": _case_interval_laws,
    "cut-calculus": _case_cut_calculus,
    "symbolic-pichi": _case_symbolic_pichi,
    "grid-gadgets": _case_grid_gadgets,
}

SUITE_NAMES = tuple(_SUITES)
