import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from kothe.algebra.core import corner_algebra, full_matrix_algebra, matrix_ring, matrix_unit_element, path_algebra
from kothe.algebra.idempotents import primitive_idempotents
from kothe.algebra.modules import (
    AModule,
    ModuleError,
    c_soc,
    c_top,
    column_module,
    composition_hom_route,
    composition_radical_route,
    corner_module,
    decompose_module,
    direct_sum,
    hom_dimension,
    is_indecomposable_module,
    is_k_generated,
    is_uniserial_module,
    left_ideal_module,
    min_generators,
    module_invariants,
    regular_module,
)
from kothe.corpus import field_case, path_case, random_modules, small_cases, truncated_case
from kothe.exactla import Field, Mat
from kothe.quiver import linear_quiver

GF2, GF3, GF5, QQ = Field.gf(2), Field.gf(3), Field.gf(5), Field.qq()


def fingerprint(m, system):
    return (m.dim, tuple(c_top(m, system)), tuple(composition_radical_route(m, system)), tuple(c_soc(m, system)))


def test_regular_module_of_a2(field):
    a = path_algebra(linear_quiver(2), field)
    s = primitive_idempotents(a)
    reg = regular_module(a)
    assert composition_radical_route(reg, s) == [1, 2]
    assert c_top(reg, s) == [1, 1] and c_soc(reg, s) == [0, 2]
    assert min_generators(reg, s) == 1
    parts = decompose_module(reg)
    assert sorted(x.dim for x, _ in parts) == [1, 2] and all(k == 1 for _, k in parts)


def test_free_modules_need_k_generators_over_basic_algebras():
    a = path_algebra(linear_quiver(3), GF3)
    s = primitive_idempotents(a)
    reg = regular_module(a)
    for k in (1, 2, 3):
        assert min_generators(direct_sum(*[reg] * k), s) == k


def test_matrix_ring_regular_module_is_cyclic(field):
    a = full_matrix_algebra(field, 2)
    s = primitive_idempotents(a)
    reg = regular_module(a)
    assert c_top(reg, s) == [2]
    assert min_generators(reg, s) == 1
    assert min_generators(direct_sum(reg, reg, reg), s) == 3
    col = left_ideal_module(a, s.primitives[0].element)
    assert col.dim == 2 and min_generators(direct_sum(col, col), s) == 1


def test_hom_from_projective_counts_multiplicity(field):
    case = path_case(linear_quiver(4), field)
    s = primitive_idempotents(case.algebra)
    projectives = [left_ideal_module(case.algebra, e.element) for e in s.basic]
    for m in case.indecomposables:
        total = composition_hom_route(m, s)
        assert [hom_dimension(p, m) for p in projectives] == total


@pytest.mark.parametrize("f", [GF2, GF3, QQ], ids=str)
def test_decomposition_recovers_summands(f):
    rng = random.Random(7)
    for case in small_cases(f, max_dim=6):
        if case.indecomposables is None:
            continue
        s = primitive_idempotents(case.algebra)
        inds = case.indecomposables
        for _ in range(3):
            chosen = [rng.randrange(len(inds)) for _ in range(rng.randint(1, 3))]
            if sum(inds[i].dim for i in chosen) > 8:
                continue
            m = direct_sum(*[inds[i] for i in chosen])
            parts = decompose_module(m)
            got = Counter()
            for x, mult in parts:
                assert is_indecomposable_module(x)
                got[fingerprint(x, s)] += mult
            want = Counter(fingerprint(inds[i], s) for i in chosen)
            assert got == want, case.name


def test_decomposition_is_deterministic():
    case = path_case(linear_quiver(3), GF5)
    m = direct_sum(*case.indecomposables[:4])
    first = [(x.dim, k, x.action) for x, k in decompose_module(m, seed=11)]
    second = [(x.dim, k, x.action) for x, k in decompose_module(m, seed=11)]
    assert first == second


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(0, 10**6))
def test_random_module_invariants(p, seed):
    f = Field.gf(p)
    case = truncated_case(f, 3) if seed % 2 else path_case(linear_quiver(3), f)
    s = primitive_idempotents(case.algebra)
    for m in random_modules(case, 2, 6, seed):
        inv = module_invariants(m, s, with_indecomposable=False)
        assert sum(inv.c_top) <= inv.length
        assert all(t <= c for t, c in zip(inv.c_top, inv.c_total))
        assert all(t <= c for t, c in zip(inv.c_soc, inv.c_total))
        assert composition_radical_route(m, s) == composition_hom_route(m, s)
        g = min_generators(m, s)
        assert is_k_generated(m, g, s) and (g == 0 or not is_k_generated(m, g - 1, s))
        if inv.is_uniserial and m.dim:
            assert g == 1


def test_uniserial_examples():
    case = truncated_case(GF3, 4)
    for m in case.indecomposables:
        assert is_uniserial_module(m)
    assert not is_uniserial_module(direct_sum(case.indecomposables[0], case.indecomposables[0]))


def test_column_and_corner_functors_are_inverse_on_dimensions(field):
    case = path_case(linear_quiver(2), field)
    big = matrix_ring(case.algebra, 2)
    e = matrix_unit_element(case.algebra, 2, 0, 0, case.algebra.unit)
    small = corner_algebra(big, e)
    for m in case.indecomposables:
        col = column_module(m, 2, big)
        col.check_axioms()
        assert col.dim == 2 * m.dim
        back = corner_module(col, e, small)
        back.check_axioms()
        assert back.dim == m.dim


def test_bad_action_rejected():
    a = path_algebra(linear_quiver(2), GF3)
    reg = regular_module(a)
    broken = list(reg.action)
    broken[-1] = Mat.identity(GF3, reg.dim)
    with pytest.raises(ModuleError):
        AModule(a, reg.dim, broken)


def test_simple_field_module():
    case = field_case(QQ)
    m = case.indecomposables[0]
    assert is_indecomposable_module(m) and min_generators(m, primitive_idempotents(case.algebra)) == 1
