from math import ceil

import pytest

from kothe import rep as rp
from kothe.algebra.core import full_matrix_algebra, matrix_unit_element
from kothe.algebra.idempotents import primitive_idempotents
from kothe.algebra.modules import c_top, regular_module
from kothe.corpus import (
    Case,
    d4_out_quiver,
    dynkin_corpus,
    field_case,
    local_rad2_case,
    matrix_case,
    path_case,
    product_case,
    truncated_case,
)
from kothe.decide import (
    ProfileIncomplete,
    is_left_k_cyclic,
    is_left_kothe,
    is_left_local_type,
    is_multiplicity_free_top,
    kothe_matrix_degree,
    min_cyclic_k,
    morita_corner_check,
    morita_matrix_check,
    profile_algebra,
    profile_case,
    profile_quiver,
    verdict,
)
from kothe.exactla import Field
from kothe.quiver import Quiver, all_orientations, linear_quiver

GF2, GF3, GF5 = Field.gf(2), Field.gf(3), Field.gf(5)


def test_a2_profile(field):
    prof = profile_quiver(linear_quiver(2), field)
    assert prof.p == (1, 1) and prof.q == (1, 1)
    assert is_left_kothe(prof)[0]
    assert is_multiplicity_free_top(prof)[0] and is_left_local_type(prof)[0]
    assert kothe_matrix_degree(prof) == (1, 2)


def test_worked_d4_profile(field):
    prof = profile_quiver(d4_out_quiver(), field)
    assert prof.p == (1, 1, 1, 1) and prof.q == (2, 1, 1, 1)
    ok, wit = is_left_kothe(prof)
    assert not ok and wit[0].cls == "1" and wit[0].value == 2
    assert is_left_k_cyclic(prof, 2) == (True, [])
    assert not is_multiplicity_free_top(prof)[0]
    assert min_cyclic_k(prof) == 2
    assert kothe_matrix_degree(prof) == (2, 5)


def test_kronecker_is_representation_infinite():
    q = Quiver.build("K", [1, 2], [("a", 1, 2), ("b", 1, 2)])
    prof = profile_quiver(q, GF5)
    assert prof.representation_finite is False and prof.q is None
    v = verdict(prof, 3)
    assert v.is_kothe is False and v.is_k_cyclic is False and v.min_cyclic_k is None
    with pytest.raises(ProfileIncomplete):
        min_cyclic_k(prof)


def test_d4_inward_is_mft_but_not_local_type():
    q = Quiver.build("D4in", [1, 2, 3, 4], [("a", 2, 1), ("b", 3, 1), ("c", 4, 1)])
    prof = profile_quiver(q, GF3)
    assert is_multiplicity_free_top(prof)[0]
    ok, wit = is_left_local_type(prof)
    assert not ok
    first = next(s for s in prof.indecomposables if sum(s.c_top) > 1)
    assert wit[0].indecomposable == first.id and wit[0].value == sum(first.c_top)
    big = next(s for s in prof.indecomposables if s.dim == (2, 1, 1, 1))
    assert big.c_top == (0, 1, 1, 1)


def test_semisimple_cases():
    for case in (field_case(GF3), product_case(field_case(GF3), field_case(GF3)), matrix_case(field_case(GF3), 2)):
        v = verdict(profile_case(case), 1)
        assert v.is_kothe and v.is_k_cyclic and v.min_cyclic_k == 1


def test_mat3_of_a2_has_least_k_one():
    big = matrix_case(path_case(linear_quiver(2), GF2), 3)
    prof = profile_case(big)
    assert prof.p == (3, 3) and prof.q == (1, 1) and min_cyclic_k(prof) == 1


def test_mat2_of_worked_example_is_kothe():
    case = path_case(d4_out_quiver(), GF3)
    r = morita_matrix_check(case, 2)
    assert r.ok
    assert sorted(r.image.q) == [1, 1, 1, 2] and r.image.p == (2, 2, 2, 2)
    assert is_left_kothe(r.image)[0]


def test_morita_examples():
    r = morita_matrix_check(path_case(linear_quiver(2), GF3), 2)
    assert r.ok and r.image.q == (1, 1) and r.image.p == (2, 2)
    mat = matrix_case(field_case(GF3), 2)
    e11 = matrix_unit_element(field_case(GF3).algebra, 2, 0, 0, (1,))
    r = morita_corner_check(mat, e11)
    assert r.ok and r.image.m == 1 == r.base.m and r.image.p == (1,)


def test_corner_rejects_non_full_idempotent():
    case = path_case(linear_quiver(2), GF3)
    with pytest.raises(ValueError):
        morita_corner_check(case, case.algebra.basis(0))


def test_unknown_q_without_list():
    prof = profile_case(local_rad2_case(GF3, 2))
    assert prof.q is None and prof.representation_finite is None
    v = verdict(prof, 1)
    assert v.is_kothe is None and v.is_mft is None
    with pytest.raises(ProfileIncomplete):
        is_left_kothe(prof)


def test_non_basic_algebra_degree():
    case = matrix_case(truncated_case(GF2, 2), 2)
    prof = profile_case(case)
    assert not prof.basic and prof.p == (2,) and prof.q == (1,)
    assert kothe_matrix_degree(prof) == (1, None)


@pytest.mark.parametrize("f", [GF2, GF5, Field.qq()], ids=str)
def test_verdict_invariants_over_dynkin_corpus(f):
    for q in list(dynkin_corpus()) + list(all_orientations("D5", [1, 2, 3, 4, 5], [(1, 2), (2, 3), (3, 4), (3, 5)])):
        prof = profile_quiver(q, f)
        v = verdict(prof, 1)
        assert v.is_kothe == (v.min_cyclic_k == 1)
        assert v.is_kothe == v.is_mft  # path algebras are basic
        assert v.kothe_matrix_degree == max(ceil(a / b) for a, b in zip(prof.q, prof.p))
        flags = [is_left_k_cyclic(prof, k)[0] for k in range(1, 5)]
        assert flags == sorted(flags)
        for name, flag in (("kothe", v.is_kothe), ("mft", v.is_mft), ("local-type", v.is_local_type)):
            assert flag or any(w.criterion == name for w in v.witnesses)
        reps = rp.enumerate_indecomposables(q, f)
        for w in v.witnesses:
            x = reps[int(w.indecomposable[1:]) - 1]
            i = prof.class_labels.index(w.cls)
            top = rp.c_top(x)
            assert (sum(top) if w.criterion == "local-type" else top[i]) == w.value > w.bound


def test_field_independence():
    summaries = set()
    for f in (GF2, GF3, GF5, Field.qq()):
        summaries.add(tuple((q.name, profile_quiver(q, f).q) for q in dynkin_corpus()))
    assert len(summaries) == 1


def test_structure_constant_route_matches_hereditary_route():
    for q in all_orientations("A3", [1, 2, 3], [(1, 2), (2, 3)]):
        case = path_case(q, GF3)
        a = profile_algebra(case.algebra, case.indecomposables)
        h = profile_quiver(q, GF3)
        assert a.class_labels == h.class_labels and a.q == h.q and a.p == h.p


def test_class_labels_fallback():
    case = Case("M2", full_matrix_algebra(GF3, 2), None)
    prof = profile_case(case)
    assert prof.class_labels == ("1",)
    assert c_top(regular_module(case.algebra), primitive_idempotents(case.algebra)) == [2]
