import pytest

from monkbench.ba import INF, Presentation, denote, is_zero, leq_elem
from monkbench.errors import PreconditionError, UsageError
from monkbench.forcing import (
    AmalgamInstance,
    DeltaFamily,
    amalgam_instance_from_json,
    amalgam_instance_to_json,
    amalgam_violations,
    delta_family_from_json,
    delta_family_to_json,
    delta_family_violations,
    find_separating_pair,
    m_amalgam,
    tau_star,
)
from monkbench.generators import derive_seed, gen_amalgam_instance, gen_delta_family
from monkbench.terms import Gen, parse_sexpr, to_sexpr


def amg4():
    """Four single-label copies with an empty root; tau is the bare generator."""
    copies = tuple(
        Presentation.from_bit_rows([ell], [(0,), (1,)]) for ell in range(4)
    )
    fam = DeltaFamily(copies, ())
    return AmalgamInstance(fam, Gen(1), (0,))


def rows(p):
    return {"".join(map(str, f.bits)) for f in p.F}


def test_amg4_family_is_valid():
    inst = amg4()
    assert delta_family_violations(inst.family) == []
    assert amalgam_violations(inst) == []
    assert inst.alphas(2) == (2,)
    assert to_sexpr(inst.tau_at(3)) == "x3"


def test_amg4_separating_pair():
    inst = amg4()
    p0 = inst.family.conditions[0]
    gamma, f0, f1 = find_separating_pair(p0, inst.tau, inst.alpha0, inst.family.root)
    assert gamma == INF
    assert f0.bits == (0,) and f1.bits == (1,)


def test_amg4_reproduces_exactly():
    q, star, cert = m_amalgam(amg4())
    assert cert.ok
    assert q.w == (0, 1, 2, 3)
    assert rows(q) == {"0000", "1000", "1100", "1110", "1111", "1101"}
    assert to_sexpr(star) == "(and (and x1 x3) (not x2))"
    star_elem = denote(star, q)
    assert {f.bits for f in star_elem.witnesses()} == {(1, 1, 0, 1)}
    assert leq_elem(star_elem, denote(Gen(0), q))


def test_tau_star_shape():
    # m=5: meets at copies 1,3; cuts at copies 2,4
    t = tau_star(Gen(1), [(ell,) for ell in range(5)])
    assert to_sexpr(t) == "(and (and x1 x3) (not (or x2 x4)))"
    # m=2: single meet, no cuts
    assert to_sexpr(tau_star(Gen(1), [(0,), (1,)])) == "x1"
    with pytest.raises(UsageError):
        tau_star(Gen(1), [(0,)])


def test_negative_gate_clause_g():
    inst = gen_amalgam_instance(7, 1, 3)  # m-1 = 2 = n+1: must be rejected
    bad = amalgam_violations(inst)
    assert bad and bad[0].startswith("(g)")
    with pytest.raises(PreconditionError) as exc:
        m_amalgam(inst)
    assert exc.value.clause == "(g)"


def test_clause_f_rejects_root_generated_terms():
    fam = gen_delta_family(3, 5, root_size=1, block_size=1)
    root_label = fam.root[0]
    pos = fam.conditions[0].w.index(root_label)
    inst = AmalgamInstance(fam, Gen(1), (root_label,))
    bad = amalgam_violations(inst)
    assert any(v.startswith("(f)") for v in bad) or any(
        v.startswith("(e)") for v in bad
    )
    assert pos == 0  # the root sits at the bottom of each copy


def test_separating_pair_requires_clause_f():
    p0 = Presentation.from_bit_rows([0], [(0,), (1,)])
    with pytest.raises(PreconditionError) as exc:
        find_separating_pair(p0, Gen(1) - Gen(1), (0,), ())
    assert exc.value.clause == "(f)"


def test_generated_instances_all_certify():
    for i in range(15):
        n = 1 + i % 3
        inst = gen_amalgam_instance(derive_seed(31, "amg", i), n, n + 3)
        q, star, cert = m_amalgam(inst)
        assert cert.ok
        assert not is_zero(denote(star, q))


def test_delta_family_json_round_trip():
    fam = gen_delta_family(17, 3)
    obj = delta_family_to_json(fam)
    assert delta_family_from_json(obj) == fam
    obj["maps"][1][0][1] += 999
    with pytest.raises(UsageError):
        delta_family_from_json(obj)


def test_amalgam_instance_json_round_trip():
    inst = gen_amalgam_instance(19, 2, 5)
    obj = amalgam_instance_to_json(inst)
    back = amalgam_instance_from_json(obj)
    assert back == inst
    assert parse_sexpr(obj["tau"]) == inst.tau
