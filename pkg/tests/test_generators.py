from monkbench.forcing import (
    PosetBounds,
    amalgam_violations,
    cond_leq,
    delta_family_violations,
    is_condition,
)
from monkbench.generators import (
    derive_seed,
    gen_amalgam_instance,
    gen_ascending_chain,
    gen_delta_family,
    gen_random_condition,
)


def test_derive_seed_is_stable_and_tag_sensitive():
    assert derive_seed(1, "a", 0) == derive_seed(1, "a", 0)
    assert derive_seed(1, "a", 0) != derive_seed(1, "a", 1)
    assert derive_seed(1, "a", 0) != derive_seed(2, "a", 0)
    assert derive_seed(1, "a") != derive_seed(1, "b")


def test_conditions_are_valid_and_deterministic():
    for i in range(30):
        seed = derive_seed(0, "c", i)
        p = gen_random_condition(seed)
        assert is_condition(p)
        assert len(p.w) <= 8 and len(p.F) <= 24
        assert p == gen_random_condition(seed)


def test_conditions_respect_bounds():
    bounds = PosetBounds(mu_bound=6, lambda_bound=10)
    for i in range(20):
        p = gen_random_condition(derive_seed(1, "b", i), bounds)
        assert len(p.F) <= 6
        assert max(p.w) < 10


def test_chains_are_ascending():
    for i in range(10):
        chain = gen_ascending_chain(derive_seed(2, "ch", i), 4)
        assert len(chain) == 4
        for p, q in zip(chain, chain[1:]):
            assert cond_leq(p, q)


def test_delta_families_are_valid():
    for i in range(10):
        m = 2 + i % 4
        fam = gen_delta_family(derive_seed(3, "d", i), m)
        assert fam.m == m
        assert delta_family_violations(fam) == []


def test_amalgam_instances_satisfy_positive_clauses():
    for i in range(10):
        n = 1 + i % 3
        inst = gen_amalgam_instance(derive_seed(4, "a", i), n, n + 3)
        assert amalgam_violations(inst) == []


def test_negative_instances_fail_only_clause_g():
    for i in range(10):
        n = 1 + i % 3
        inst = gen_amalgam_instance(derive_seed(5, "n", i), n, n + 2)
        bad = amalgam_violations(inst)
        assert bad == [f"(g): m-1 = {n + 1} is not > n+1 = {n + 1}"]
