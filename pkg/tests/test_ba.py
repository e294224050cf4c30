from itertools import product

import pytest
from hypothesis import given, strategies as st

from monkbench.ba import (
    INF,
    Assignment,
    Element,
    OrderedPartition,
    Presentation,
    brute_force_min_dense,
    compl,
    denote,
    element_from_json,
    element_to_json,
    eval_hom,
    find_escape,
    first_hit_selector,
    free_relation_holds,
    is_dense,
    is_ultrafilter,
    is_zero,
    join,
    leq_elem,
    meet,
    pi_density,
    pi_ultrafilter,
    presentation_from_json,
    presentation_to_json,
    principal_ultrafilter,
    product_grid,
    subalgebra_closure,
)
from monkbench.errors import DomainError, SizeCapError, UsageError
from monkbench.terms import ONE, ZERO, Gen


# Worked fixture: two labels, three assignments; the algebra has 3 atoms.
P2 = Presentation.from_bit_rows([0, 1], [(0, 0), (1, 0), (0, 1)])


def assignments_strategy():
    return st.integers(1, 5).flatmap(
        lambda k: st.builds(
            Assignment,
            st.tuples(*([st.integers(0, 1)] * k)),
            st.just(tuple(range(k))),
        )
    )


@given(assignments_strategy(), st.integers(-1, 6), st.integers(-1, 6))
def test_truncation_composes_via_min(f, a, b):
    assert f.truncate(a).truncate(b) == f.truncate(min(a, b))


@given(assignments_strategy())
def test_truncation_at_inf_is_identity(f):
    assert f.truncate(INF) == f
    assert f.truncate(min(f.w)) == Assignment(tuple(0 for _ in f.w), f.w)


def test_assignment_basics():
    f = Assignment((1, 0, 1), (2, 5, 9))
    assert f.value(5) == 0
    assert f.as_map() == {2: 1, 5: 0, 9: 1}
    assert f.restrict([2, 9]) == Assignment((1, 1), (2, 9))
    with pytest.raises(DomainError):
        f.value(3)
    with pytest.raises(DomainError):
        f.restrict([3])
    with pytest.raises(UsageError):
        Assignment((1, 0), (5, 2))
    with pytest.raises(UsageError):
        Assignment((2,), (0,))


def test_assignment_union():
    f = Assignment.from_map({0: 1, 1: 0})
    g = Assignment.from_map({1: 0, 2: 1})
    assert f.union(g) == Assignment.from_map({0: 1, 1: 0, 2: 1})
    with pytest.raises(UsageError):
        f.union(Assignment.from_map({1: 1}))


def test_presentation_canonicalization_and_caps():
    p = Presentation.make([1, 0], [Assignment((0, 1), (0, 1)), Assignment((0, 0), (0, 1))])
    assert p.w == (0, 1)
    assert p.F[0].bits == (0, 0)
    with pytest.raises(SizeCapError):
        Presentation.make(range(17), [])
    # construction outputs may exceed the default family cap explicitly
    w = tuple(range(5))
    rows = [Assignment(bits, w) for bits in product((0, 1), repeat=5)]
    big = Presentation.make(w, rows, check_caps=False)
    assert len(big.F) == 32


def test_eval_hom_and_denote():
    f = Assignment((1, 0), (0, 1))
    assert eval_hom(Gen(0), f) == 1
    assert eval_hom(~Gen(0) | Gen(1), f) == 0
    assert eval_hom(ONE, f) == 1 and eval_hom(ZERO, f) == 0
    e = denote(Gen(0) - Gen(1), P2)
    assert e.witnesses() == (Assignment((1, 0), (0, 1)),)  # exactly the row (1,0)
    with pytest.raises(DomainError):
        denote(Gen(7), P2)


def test_element_ops_are_boolean():
    xs = [Element(P2, m) for m in range(P2.full_mask + 1)]
    for a in xs:
        for b in xs:
            assert meet(a, b).mask == (a.mask & b.mask)
            assert join(a, b).mask == (a.mask | b.mask)
            assert leq_elem(a, b) == (meet(a, compl(b)).mask == 0)
        assert meet(a, compl(a)).mask == 0
        assert join(a, compl(a)) == P2.one()
    assert is_zero(P2.zero()) and not is_zero(P2.one())
    other = Presentation.from_bit_rows([0], [(1,)])
    with pytest.raises(UsageError):
        meet(P2.one(), other.one())


def test_free_relation_matches_denotation_exhaustively():
    for split in product((0, 1, 2), repeat=len(P2.w)):
        u = [a for a, s in zip(P2.w, split) if s == 1]
        v = [a for a, s in zip(P2.w, split) if s == 2]
        t = ONE
        for a in u:
            t = t & Gen(a)
        for b in v:
            t = t & ~Gen(b)
        assert free_relation_holds(u, v, P2) == is_zero(denote(t, P2))
    with pytest.raises(UsageError):
        free_relation_holds([0], [0], P2)


def test_subalgebra_closure_and_density():
    full = subalgebra_closure(P2, [denote(Gen(a), P2) for a in P2.w])
    assert len(full.elements) == 2 ** 3  # three atoms
    assert pi_density(full) == 3
    assert brute_force_min_dense(full) == 3
    trivial = subalgebra_closure(P2, [])
    assert len(trivial.elements) == 2
    assert pi_density(trivial) == brute_force_min_dense(trivial) == 1


def test_is_dense_and_escape():
    full = subalgebra_closure(P2, [denote(Gen(a), P2) for a in P2.w])
    sub = subalgebra_closure(P2, [denote(Gen(0), P2)])
    assert is_dense(full.atoms, full.nonzero())
    assert not is_dense(sub.nonzero(), full.nonzero())
    escape = find_escape(full, sub)
    assert escape is not None
    assert not any(
        a.mask and a.mask & ~escape.mask == 0 for a in sub.elements
    )
    assert find_escape(full, full) is None


def test_ultrafilters_in_finite_carrier():
    full = subalgebra_closure(P2, [denote(Gen(a), P2) for a in P2.w])
    for atom in full.atoms:
        uf = principal_ultrafilter(atom, full)
        assert is_ultrafilter(uf, full)
        assert pi_ultrafilter(uf, full) == 1
    not_filter = [full.presentation.one(), full.presentation.zero()]
    assert not is_ultrafilter(not_filter, full)


def test_ordered_partition_validation():
    full = subalgebra_closure(P2, [denote(Gen(a), P2) for a in P2.w])
    R = OrderedPartition(full.atoms)
    assert first_hit_selector(P2.zero(), R) == P2.zero()
    x = Element(P2, 0b110)
    assert first_hit_selector(x, R) in R.blocks
    with pytest.raises(UsageError):
        OrderedPartition((P2.one(), P2.one()))
    with pytest.raises(UsageError):
        OrderedPartition((full.atoms[0],))


@pytest.mark.parametrize("n", [2, 3])
def test_product_grid_structure(n):
    P, R, grids = product_grid(n)
    assert len(R.blocks) == n ** n
    assert len(grids) == n
    for Q in grids:
        seen = 0
        for b in Q:
            assert b.mask and not (seen & b.mask)
            seen |= b.mask
        assert seen == P.full_mask
    for pick in product(*grids):
        acc = P.full_mask
        for b in pick:
            acc &= b.mask
        assert acc != 0
    with pytest.raises(UsageError):
        product_grid(1)
    with pytest.raises(UsageError):
        product_grid(5)


def test_presentation_json_round_trip():
    obj = presentation_to_json(P2)
    assert obj == {"w": [0, 1], "F": [[0, 0], [0, 1], [1, 0]]}  # canonical row order
    assert presentation_from_json(obj) == P2
    with pytest.raises(UsageError):
        presentation_from_json({"w": [0]})


def test_element_json_round_trip():
    e = denote(Gen(0), P2)
    obj = element_to_json(e)
    assert obj == {"support": [2]}  # x_0 holds only on the row (1,0)
    assert element_from_json(obj, P2) == e
    with pytest.raises(UsageError):
        element_from_json({"support": [99]}, P2)
