"""Seeded random instance generators (conditions, delta families, amalgams).

All generators are pure functions of (seed, parameters): the same seed
always yields the same instance.  Instances are generated and then repaired
so they satisfy their type invariants (truncation closure, label pruning,
copies at strictly increasing blocks); term instances are rejection-sampled
until the novelty clause holds, with a guaranteed single-generator fallback.
"""
from __future__ import annotations

import hashlib
import random
from typing import Sequence

from .ba import Assignment, Presentation
from .errors import GenerationError
from .forcing import (
    AmalgamInstance,
    DeltaFamily,
    IsoMap,
    PosetBounds,
    amalgam_violations,
    is_condition,
    truncation_closure,
)
from .terms import ONE, ZERO, And, Gen, Not, Or, Term

_RETRIES = 64


def derive_seed(master: int, *tags) -> int:
    """Counter/tag-based seed splitting; stable across processes and threads."""
    text = ":".join([str(master)] + [str(t) for t in tags])
    digest = hashlib.sha256(text.encode()).digest()
    return int.from_bytes(digest[:8], "big")


def gen_random_condition(seed: int, bounds: PosetBounds = PosetBounds()) -> Presentation:
    """A random valid condition within the given bounds.

    Strategy: draw a label set and a few random assignments, close under
    truncation, then prune labels that no assignment hits with a 1 (which
    preserves truncation closure).  Retries with derived seeds on collapse.
    """
    for attempt in range(_RETRIES):
        rng = random.Random(derive_seed(seed, "cond", attempt))
        p = _try_condition(rng, bounds)
        if p is not None:
            return p
    raise GenerationError(f"could not generate a condition for seed {seed}")


def _try_condition(rng: random.Random, bounds: PosetBounds) -> Presentation | None:
    max_w = min(8, bounds.mu_bound)
    size = rng.randint(1, max_w)
    hi = max(size, bounds.lambda_bound)
    w = tuple(sorted(rng.sample(range(hi), size)))
    n_base = rng.randint(1, max(1, bounds.mu_bound // (size + 1)))
    base = [
        Assignment(tuple(rng.randint(0, 1) for _ in w), w) for _ in range(n_base)
    ]
    F = truncation_closure(base, w)
    # prune labels violating clause (alpha)
    live = tuple(a for a in w if any(f.value(a) == 1 for f in F))
    if not live:
        return None
    if live != w:
        F = tuple(sorted({f.restrict(live) for f in F}))
        w = live
    if len(F) > bounds.mu_bound:
        return None
    p = Presentation.make(w, F)
    return p if is_condition(p) else None


def gen_ascending_chain(
    seed: int, length: int, bounds: PosetBounds = PosetBounds()
) -> list[Presentation]:
    """An ascending chain of conditions, built by repeated extension.

    Each step may add fresh labels and extends every existing assignment,
    so cond_leq holds between consecutive members by construction.
    """
    from .forcing import cond_leq

    for attempt in range(_RETRIES):
        rng = random.Random(derive_seed(seed, "chain", attempt))
        chain = [_try_condition(rng, PosetBounds(min(6, bounds.mu_bound), bounds.lambda_bound))]
        if chain[0] is None:
            continue
        ok = True
        for _ in range(length - 1):
            nxt = _extend_condition(rng, chain[-1], bounds)
            if nxt is None or not cond_leq(chain[-1], nxt):
                ok = False
                break
            chain.append(nxt)
        if ok:
            return chain
    raise GenerationError(f"could not generate a chain for seed {seed}")


def _extend_condition(
    rng: random.Random, p: Presentation, bounds: PosetBounds
) -> Presentation | None:
    fresh_n = rng.randint(0, 2)
    pool = [a for a in range(bounds.lambda_bound) if a not in p.w]
    fresh = sorted(rng.sample(pool, min(fresh_n, len(pool)))) if pool else []
    w = tuple(sorted(set(p.w) | set(fresh)))
    ext = []
    for f in p.F:
        bits = dict(f.as_map())
        for a in fresh:
            bits[a] = rng.randint(0, 1)
        ext.append(Assignment.from_map(bits))
    F = truncation_closure(ext, w)
    live = tuple(a for a in w if any(f.value(a) == 1 for f in F))
    if set(p.w) - set(live):
        return None  # pruning would drop an inherited label; reject
    if live != w:
        F = tuple(sorted({f.restrict(live) for f in F}))
        w = live
    if len(F) > max(bounds.mu_bound, len(p.F)):
        return None
    q = Presentation.make(w, F, check_caps=False)
    return q if is_condition(q) else None


def gen_delta_family(
    seed: int,
    m: int,
    bounds: PosetBounds = PosetBounds(),
    root_size: int | None = None,
    block_size: int | None = None,
) -> DeltaFamily:
    """A delta family of m copies: common root at the bottom of the label
    range, per-copy blocks at strictly increasing ranges above it."""
    for attempt in range(_RETRIES):
        rng = random.Random(derive_seed(seed, "delta", attempt))
        r = root_size if root_size is not None else rng.randint(0, 2)
        s = block_size if block_size is not None else rng.randint(1, 3)
        base = _try_condition_on_labels(rng, r, s, bounds)
        if base is None:
            continue
        p0, root = base
        nonroot0 = [a for a in p0.w if a not in root]
        top = max(p0.w) + 1
        conditions = [p0]
        for ell in range(1, m):
            block = [top + (ell - 1) * s + j for j in range(s)]
            H = IsoMap.between(p0.w, sorted(set(root) | set(block)))
            conditions.append(
                Presentation.make(H.target, [H.relabel(f) for f in p0.F], check_caps=False)
            )
        fam = DeltaFamily(tuple(conditions), root)
        from .forcing import delta_family_violations

        if not delta_family_violations(fam):
            return fam
    raise GenerationError(f"could not generate a delta family for seed {seed}")


def _try_condition_on_labels(
    rng: random.Random, root_size: int, block_size: int, bounds: PosetBounds
) -> tuple[Presentation, tuple[int, ...]] | None:
    """A valid condition on root {0..r-1} plus block {r..r+s-1}, no pruning."""
    w = tuple(range(root_size + block_size))
    n_base = rng.randint(1, 3)
    base = [Assignment(tuple(rng.randint(0, 1) for _ in w), w) for _ in range(n_base)]
    # guarantee clause (alpha) without pruning: one row of all ones
    base.append(Assignment(tuple(1 for _ in w), w))
    F = truncation_closure(base, w)
    if len(F) > bounds.mu_bound:
        return None
    p = Presentation.make(w, F)
    return (p, tuple(range(root_size))) if is_condition(p) else None


def gen_random_term(rng: random.Random, n: int, depth: int = 3) -> Term:
    """A random term over variables x1..xn."""
    if depth == 0 or rng.random() < 0.3:
        r = rng.random()
        if r < 0.85 or n == 0:
            return Gen(rng.randint(1, n)) if n else ONE
        return ZERO if r < 0.92 else ONE
    op = rng.choice(["not", "and", "or"])
    if op == "not":
        return Not(gen_random_term(rng, n, depth - 1))
    cls = And if op == "and" else Or
    return cls(gen_random_term(rng, n, depth - 1), gen_random_term(rng, n, depth - 1))


def gen_amalgam_instance(
    seed: int,
    n: int,
    m: int,
    bounds: PosetBounds = PosetBounds(),
) -> AmalgamInstance:
    """An amalgam instance with all preconditions satisfied whenever
    m - 1 > n + 1; with smaller m the clause-(g) gate is left failing so the
    instance can serve as a negative control."""
    for attempt in range(_RETRIES):
        fam = gen_delta_family(
            derive_seed(seed, "amg-fam", attempt), m, bounds, block_size=max(1, n)
        )
        p0 = fam.conditions[0]
        nonroot = [a for a in p0.w if a not in fam.root]
        if len(p0.w) < n or not nonroot:
            continue
        rng = random.Random(derive_seed(seed, "amg-term", attempt))
        alpha0 = _pick_alpha0(rng, p0.w, nonroot, n)
        inst = _sample_term(rng, fam, alpha0, n)
        if inst is not None:
            return inst
    raise GenerationError(f"could not generate an amalgam instance for seed {seed}")


def _pick_alpha0(
    rng: random.Random, w: Sequence[int], nonroot: Sequence[int], n: int
) -> tuple[int, ...]:
    must = rng.choice(nonroot)
    rest = [a for a in w if a != must]
    picked = {must} | set(rng.sample(rest, n - 1))
    return tuple(sorted(picked))


def _sample_term(
    rng: random.Random, fam: DeltaFamily, alpha0: tuple[int, ...], n: int
) -> AmalgamInstance | None:
    nonroot_vars = [
        i + 1 for i, a in enumerate(alpha0) if a not in fam.root
    ]
    for _ in range(100):
        tau = gen_random_term(rng, n)
        inst = AmalgamInstance(fam, tau, alpha0)
        if not _clause_ef_fail(inst):
            return inst
    # fallback: a bare nonroot generator always splits a root class
    if nonroot_vars:
        inst = AmalgamInstance(fam, Gen(nonroot_vars[0]), alpha0)
        if not _clause_ef_fail(inst):
            return inst
    return None


def _clause_ef_fail(inst: AmalgamInstance) -> bool:
    return any(v.startswith(("(e)", "(f)")) for v in amalgam_violations(inst))
