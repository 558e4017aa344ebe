import json

import pytest

from kothe.algebra import (
    AlgebraError,
    SizeCapError,
    corner_algebra,
    direct_product,
    field_algebra,
    full_matrix_algebra,
    is_local,
    jacobson_radical,
    path_algebra,
    primitive_idempotents,
    radical_square_zero_local,
    truncated_polynomial,
)
from kothe.algebra.core import FDAlgebra, from_dense, is_full_idempotent, matrix_ring, opposite
from kothe.algebra.finite import brute_force_radical, full_idempotents, idempotents
from kothe.algebra.io import AlgebraDocument, AlgebraFormatError, dump_algebra, load_algebra
from kothe.algebra.radical import is_semisimple, nilpotency_index
from kothe.corpus import d4_out_quiver, gf4_case, small_cases
from kothe.exactla import Field
from kothe.quiver import Quiver, linear_quiver

GF2, GF3, QQ = Field.gf(2), Field.gf(3), Field.qq()


def group_algebra_c2(f):
    # k[C2] with basis 1, g; semisimple unless char 2
    return from_dense(f, [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], [1, 0], name="kC2")


@pytest.mark.parametrize("f", [GF2, GF3], ids=str)
def test_radical_matches_exhaustive_oracle(f):
    algebras = [c.algebra for c in small_cases(f, max_dim=6)] + [group_algebra_c2(f)]
    for a in algebras:
        assert jacobson_radical(a) == brute_force_radical(a), a.name


def test_group_algebra_radical_depends_on_characteristic():
    assert len(jacobson_radical(group_algebra_c2(GF2))) == 1
    assert jacobson_radical(group_algebra_c2(GF3)) == []
    assert jacobson_radical(group_algebra_c2(QQ)) == []


def test_radical_examples(field):
    assert len(jacobson_radical(path_algebra(linear_quiver(2), field))) == 1
    assert jacobson_radical(full_matrix_algebra(field, 2)) == []
    a = truncated_polynomial(field, 4)
    rad = jacobson_radical(a)
    assert len(rad) == 3 and nilpotency_index(a, rad) == 4
    assert is_semisimple(direct_product(field_algebra(field), field_algebra(field)))


def test_axioms_of_constructions(field):
    base = path_algebra(linear_quiver(2), field)
    for a in (base, matrix_ring(base, 2), opposite(base), direct_product(base, truncated_polynomial(field, 2)),
              path_algebra(d4_out_quiver(), field)):
        a.check_axioms()


def test_non_associative_table_rejected():
    f = GF3
    # b1*b1 = b1 but b1*(b1*b1) pattern broken by a non-associative entry
    tensor = [[[1, 0], [0, 1]], [[0, 1], [1, 1]]]
    a = from_dense(f, tensor, [1, 0])
    a.check_axioms()
    bad = [[[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[0, 1, 0], [0, 0, 1], [0, 0, 0]], [[0, 0, 1], [1, 0, 0], [0, 0, 0]]]
    with pytest.raises(AlgebraError):
        from_dense(f, bad, [1, 0, 0]).check_axioms()


def test_path_algebra_rejects_cycles():
    q = Quiver.build("C", [1, 2], [("a", 1, 2), ("b", 2, 1)])
    with pytest.raises(AlgebraError):
        path_algebra(q, GF2)


def test_size_caps():
    with pytest.raises(SizeCapError):
        truncated_polynomial(QQ, 61)
    with pytest.raises(SizeCapError):
        truncated_polynomial(GF2, 201)


@pytest.mark.parametrize(
    "build,m,p,basic",
    [
        (lambda f: path_algebra(linear_quiver(3), f), 3, (1, 1, 1), True),
        (lambda f: full_matrix_algebra(f, 3), 1, (3,), False),
        (lambda f: matrix_ring(truncated_polynomial(f, 2), 2), 1, (2,), False),
        (lambda f: direct_product(full_matrix_algebra(f, 2), field_algebra(f)), 2, (2, 1), False),
        (lambda f: radical_square_zero_local(f, 2), 1, (1,), True),
    ],
)
def test_idempotent_systems(field, build, m, p, basic):
    a = build(field)
    s = primitive_idempotents(a)
    assert s.m == m and sorted(s.p) == sorted(p) and s.is_basic == basic
    elems = [e.element for e in s.primitives]
    total = a.zero()
    for i, x in enumerate(elems):
        assert a.is_idempotent(x)
        for j, y in enumerate(elems):
            if i != j:
                assert not any(a.mul(x, y))
        total = a.add(total, x)
    assert total == tuple(a.unit)
    for e in s.primitives:
        assert is_local(corner_algebra(a, e.element))


def test_division_algebra_over_prime_field():
    s = primitive_idempotents(gf4_case().algebra)
    assert s.m == 1 and s.p == (1,) and s.division_dims == [2]


def test_full_idempotents_by_search():
    a = full_matrix_algebra(GF2, 2)
    full = full_idempotents(a)
    # every nonzero idempotent of a simple algebra is full: 6 of rank 1 plus the identity
    assert len(full) == 7 == len(idempotents(a))
    a2 = path_algebra(linear_quiver(2), GF2)
    assert full_idempotents(a2) == [tuple(a2.unit)]
    assert not is_full_idempotent(a2.basis(0), a2)


def test_corner_of_matrix_ring_is_base():
    f = GF3
    a = full_matrix_algebra(f, 2)
    e11 = next(x for x in full_idempotents(a) if sum(1 for c in x if c) == 1)
    c = corner_algebra(a, e11)
    assert c.dim == 1 and primitive_idempotents(c).m == 1


def test_algebra_file_roundtrip(field):
    a = path_algebra(linear_quiver(3), field)
    text = dump_algebra(a)
    b = load_algebra(text).algebra
    assert b.dim == a.dim and b.table == a.table and b.unit == a.unit and b.labels == a.labels
    assert dump_algebra(b) == text


@pytest.mark.parametrize(
    "mutate,needle",
    [
        (lambda d: d.pop("unit"), "unit"),
        (lambda d: d.update(field="GF(4)"), "prime"),
        (lambda d: d["structure"].append([9, 0, [1, 0, 0]]), "out of range"),
        (lambda d: d["structure"].append(list(d["structure"][0])), "twice"),
        (lambda d: d.update(format="other"), "fd-algebra-v1"),
    ],
)
def test_algebra_file_errors(mutate, needle):
    doc = json.loads(dump_algebra(path_algebra(linear_quiver(2), GF3)))
    mutate(doc)
    with pytest.raises(AlgebraFormatError) as exc:
        load_algebra(json.dumps(doc))
    assert needle in str(exc.value)


def test_algebra_file_syntax_error_has_position():
    with pytest.raises(AlgebraFormatError) as exc:
        load_algebra('{\n "format": \n}')
    assert str(exc.value).startswith("3:1")


def test_document_with_modules_roundtrip():
    from kothe.corpus import truncated_case

    case = truncated_case(QQ, 3)
    text = dump_algebra(AlgebraDocument(case.algebra, case.indecomposables, True))
    doc = load_algebra(text)
    assert doc.complete and [m.dim for m in doc.indecomposables] == [1, 2, 3]
    assert isinstance(doc.algebra, FDAlgebra)


def quaternions(f):
    # basis 1, i, j, k with i^2 = j^2 = -1, ij = k = -ji
    sign = {(1, 1): (0, -1), (2, 2): (0, -1), (3, 3): (0, -1), (1, 2): (3, 1), (2, 1): (3, -1),
            (2, 3): (1, 1), (3, 2): (1, -1), (3, 1): (2, 1), (1, 3): (2, -1)}
    table = [[[] for _ in range(4)] for _ in range(4)]
    for i in range(4):
        table[0][i] = [(i, 1)]
        table[i][0] = [(i, 1)]
    for (x, y), (k, c) in sign.items():
        table[x][y] = [(k, c)]
    return FDAlgebra(f, table, [1, 0, 0, 0], name="H")


def test_quaternions_split_over_gf3_but_not_certified_over_qq():
    from kothe.algebra import UncertifiedError

    h3 = quaternions(GF3)
    h3.check_axioms()
    s = primitive_idempotents(h3)
    assert s.m == 1 and s.p == (2,)
    hq = quaternions(QQ)
    hq.check_axioms()
    with pytest.raises(UncertifiedError):
        primitive_idempotents(hq)
