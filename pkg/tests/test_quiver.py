import pytest

from kothe.quiver import (
    ParseError,
    Quiver,
    all_orientations,
    classify_dynkin,
    expected_root_count,
    format_quiver,
    linear_quiver,
    parse_quiver,
    positive_roots,
)


def test_parse_and_format_roundtrip():
    text = "quiver Q {\n  vertices: 1 2 3;\n  arrows:\n    a: 1 -> 2;\n    b: 3 -> 2;\n}\n"
    q = parse_quiver(text)
    assert q.vertices == ("1", "2", "3") and len(q.arrows) == 2
    assert format_quiver(q) == text
    assert parse_quiver(format_quiver(q)) == q


def test_comments_and_whitespace():
    q = parse_quiver("# header\nquiver K{vertices:x y;arrows: a:x->y; b:x->y;}")
    assert q.n == 2 and [a.label for a in q.arrows] == ["a", "b"]


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("quiver Q {\n  vertices: 1 2;\n  arrows:\n    a: 1 => 2;\n}", 4, 10),
        ("quiver Q {\n  vertices: 1 2;\n  arrows:\n    a: 1 -> 3;\n}", 4, 13),
        ("quiver Q {\n  vertices: 1 1;\n}", 2, 15),
        ("quiver Q {\n  vertices: 1;\n  arrows:\n", 4, 1),
    ],
)
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_quiver(text)
    assert (exc.value.line, exc.value.column) == (line, col)
    assert str(exc.value).startswith(f"{line}:{col}:")


@pytest.mark.parametrize(
    "edges,n,variant",
    [
        ([(1, 2)], 2, "A2"),
        ([(1, 2), (2, 3), (3, 4)], 4, "A4"),
        ([(1, 2), (1, 3), (1, 4)], 4, "D4"),
        ([(1, 2), (2, 3), (3, 4), (3, 5)], 5, "D5"),
        ([(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)], 6, "E6"),
        ([(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)], 7, "E7"),
        ([(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (3, 8)], 8, "E8"),
    ],
)
def test_dynkin_types_and_root_counts(edges, n, variant):
    q = Quiver.build("T", list(range(1, n + 1)), [(f"a{i}", s, t) for i, (s, t) in enumerate(edges)])
    cls = classify_dynkin(q)
    assert cls.variant == variant
    roots = positive_roots(q)
    assert len(roots) == expected_root_count(cls)
    closed = {"A": n * (n + 1) // 2, "D": n * (n - 1), "E": {6: 36, 7: 63, 8: 120}.get(n)}
    assert len(roots) == closed[variant[0]]
    assert len(set(roots)) == len(roots)


@pytest.mark.parametrize(
    "arrows,reason_word",
    [
        ([("a", 1, 2), ("b", 1, 2)], "multiple"),
        ([("a", 1, 1)], "loop"),
        ([("a", 1, 2), ("b", 2, 3), ("c", 3, 1)], "cycle"),
    ],
)
def test_not_dynkin(arrows, reason_word):
    verts = sorted({v for _, s, t in arrows for v in (s, t)})
    cls = classify_dynkin(Quiver.build("X", verts, arrows))
    assert not cls.is_dynkin
    assert reason_word in cls.reason


def test_extended_d4_is_not_dynkin():
    q = Quiver.build("D4~", [1, 2, 3, 4, 5], [(f"a{i}", 1, v) for i, v in enumerate([2, 3, 4, 5])])
    assert not classify_dynkin(q).is_dynkin


def test_disconnected_dynkin():
    q = Quiver.build("A2+A1", [1, 2, 3], [("a", 1, 2)])
    cls = classify_dynkin(q)
    assert cls.is_dynkin and len(positive_roots(q)) == 4


def test_orientations_counted():
    assert len(list(all_orientations("A5", range(1, 6), [(i, i + 1) for i in range(1, 5)]))) == 16
    assert linear_quiver(3).arrows[0].label == "a1"
