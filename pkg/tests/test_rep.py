import random

import pytest

from kothe import rep as rp
from kothe.algebra.core import path_algebra
from kothe.algebra.idempotents import primitive_idempotents
from kothe.algebra.modules import c_top as module_c_top, is_uniserial_module
from kothe.corpus import d4_out_quiver, dynkin_corpus
from kothe.exactla import Field, Mat
from kothe.quiver import NotDynkinError, ParseError, Quiver, all_orientations, linear_quiver, simple_reflection

GF3, QQ = Field.gf(3), Field.qq()


def m_rep(f):
    return rp.Rep.from_maps(d4_out_quiver(), f, [2, 1, 1, 1], {"a": [[1, 0]], "b": [[0, 1]], "c": [[1, 1]]}, name="M")


def test_worked_representation(field):
    m = m_rep(field)
    assert rp.c_top(m) == (2, 0, 0, 0)
    assert rp.c_soc(m) == (0, 1, 1, 1)
    assert rp.radical(m).dim == (0, 1, 1, 1)
    assert rp.is_indecomposable(m)
    e, _ = rp.end_algebra(m)
    assert e.dim == 1


def test_two_generic_lines_decompose():
    # only two of the three lines in general position: splits
    m = rp.Rep.from_maps(d4_out_quiver(), GF3, [2, 1, 1, 1], {"a": [[1, 0]], "b": [[0, 1]], "c": [[1, 0]]})
    parts = rp.decompose(m)
    assert sum(k * x.total_dim for x, k in parts) == 5 and len(parts) >= 2


def test_standard_representations():
    q = linear_quiver(3)
    assert [rp.projective(q, GF3, v).dim for v in q.vertices] == [(1, 1, 1), (0, 1, 1), (0, 0, 1)]
    assert [rp.injective(q, GF3, v).dim for v in q.vertices] == [(1, 0, 0), (1, 1, 0), (1, 1, 1)]
    assert rp.simple(q, GF3, "2").dim == (0, 1, 0)


@pytest.mark.parametrize("q", list(all_orientations("D4", [1, 2, 3, 4], [(1, 2), (1, 3), (1, 4)])), ids=lambda q: q.name)
def test_hom_from_projectives_gives_multiplicities(q, field):
    reps = rp.enumerate_indecomposables(q, field)
    assert len(reps) == 12
    for v_index, v in enumerate(q.vertices):
        p = rp.projective(q, field, v)
        for x in reps:
            assert len(rp.hom_space(p, x)) == rp.c_total(x)[v_index]


def test_d5_counts():
    for q in all_orientations("D5", [1, 2, 3, 4, 5], [(1, 2), (2, 3), (3, 4), (3, 5)]):
        assert len(rp.enumerate_indecomposables(q, GF3)) == 20


def test_reflection_functors_follow_simple_reflections(field):
    q = linear_quiver(4)
    sink = q.vertices[-1]
    i = q.index(sink)
    for x in rp.enumerate_indecomposables(q, field):
        if x.dim == tuple(1 if j == i else 0 for j in range(q.n)):
            continue
        y = rp.reflect_plus(x, sink)
        assert y.dim == simple_reflection(q, i, x.dim)
        assert rp.is_indecomposable(y)
        back = rp.reflect_minus(y, sink)
        assert rp.is_isomorphic(back, x)


def test_reflect_rejects_wrong_vertex():
    q = linear_quiver(3)
    x = rp.simple(q, GF3, "2")
    with pytest.raises(rp.RepError):
        rp.reflect_plus(x, "1")


def test_isomorphism_under_base_change():
    rng = random.Random(3)
    m = m_rep(GF3)
    while True:
        g = Mat(GF3, [[rng.randrange(3) for _ in range(2)] for _ in range(2)])
        if g.is_invertible():
            break
    blocks = [g] + [Mat.identity(GF3, 1)] * 3
    maps = [mt @ blocks[0].inverse() for mt in m.maps]
    twisted = rp.Rep(m.quiver, GF3, m.dim, tuple(maps))
    assert rp.is_isomorphic(m, twisted)
    other = rp.Rep.from_maps(m.quiver, GF3, m.dim, {"a": [[1, 0]], "b": [[1, 0]], "c": [[1, 0]]})
    assert not rp.is_isomorphic(m, other)


def test_enumeration_contains_worked_rep(field):
    q = d4_out_quiver()
    reps = rp.enumerate_indecomposables(q, field)
    twin = [x for x in reps if x.dim == (2, 1, 1, 1)]
    assert len(twin) == 1 and rp.is_isomorphic(twin[0], m_rep(field))


def test_decompose_sum_of_indecomposables():
    q = linear_quiver(3)
    reps = rp.enumerate_indecomposables(q, QQ)
    s = rp.direct_sum(reps[0], reps[3], reps[3], reps[5])
    parts = rp.decompose(s)
    assert sorted((x.dim, k) for x, k in parts) == sorted([(reps[0].dim, 1), (reps[3].dim, 2), (reps[5].dim, 1)])


def test_module_conversion_roundtrip(field):
    q = linear_quiver(3)
    a = path_algebra(q, field)
    system = primitive_idempotents(a)
    for x in rp.enumerate_indecomposables(q, field):
        m = rp.to_module(x, a)
        m.check_axioms()
        assert tuple(module_c_top(m, system)) == rp.c_top(x)
        assert is_uniserial_module(m, system) == rp.is_uniserial(x)
        back = rp.from_module(m, q)
        assert back.dim == x.dim and rp.is_isomorphic(back, x)


def test_non_dynkin_enumeration_refused():
    k = Quiver.build("K", [1, 2], [("a", 1, 2), ("b", 1, 2)])
    with pytest.raises(NotDynkinError):
        rp.enumerate_indecomposables(k, GF3)


def test_rep_document_roundtrip_over_qq():
    q = d4_out_quiver()
    r = rp.Rep.from_maps(q, QQ, [2, 1, 1, 1], {"a": [["1/2", -3]], "b": [[0, 1]], "c": [[1, "7/5"]]}, name="R")
    text = rp.format_rep_document(q, [r])
    assert "map a: [[1/2,-3]];" in text
    q2, [r2] = rp.parse_rep_document(text, QQ)
    assert r2 == r


@pytest.mark.parametrize(
    "body,line,needle",
    [
        ("rep {\n  dim: 1 1;\n}\n", 8, "dimension vector"),
        ("rep {\n  dim: 1 1 1;\n  map z: [[1]];\n}\n", 9, "unknown arrow"),
        ("rep {\n  dim: 1 2 1;\n  map a1: [[1]];\n}\n", 9, "must be 2x1"),
        ("rep {\n  dim: 1 1 1;\n  map a1: [[1/0]];\n}\n", 9, "denominator"),
    ],
)
def test_rep_parse_errors(body, line, needle):
    from kothe.quiver import format_quiver

    text = format_quiver(linear_quiver(3)) + body
    with pytest.raises(ParseError) as exc:
        rp.parse_rep_document(text, QQ)
    assert exc.value.line == line and needle in exc.value.message


def test_every_dynkin_enumeration_certified():
    for q in dynkin_corpus():
        reps = rp.enumerate_indecomposables(q, GF3)
        assert len({x.dim for x in reps}) == len(reps)
