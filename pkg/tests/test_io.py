import pytest
from hypothesis import given

from oscm.core import Ordering, build_instance
from oscm.io import (
    DuplicateEdgeError,
    EdgeCountError,
    FormatError,
    HeaderError,
    IdRangeError,
    OrderingFormatError,
    emit_two_layer_svg,
    parse_document,
    parse_instance,
    parse_ordering,
    serialize_instance,
    serialize_ordering,
)
from oscm.solvers import solve_exact

from conftest import instance_and_ordering, instances


def test_parse_matching(matching):
    assert parse_instance("p ocr 2 2 2\n1 3\n2 4\n") == matching
    assert parse_instance("  p  ocr 2 2 2 \n\n2 4\n1   3\n") == matching


def test_comments_kept_in_document():
    doc = parse_document("c note\np ocr 1 1 1\n1 2\n")
    assert doc.comments == ("note",)
    assert doc.to_instance() == build_instance(1, 1, [(0, 0)])


def test_duplicate_edge_line():
    with pytest.raises(DuplicateEdgeError) as exc:
        parse_instance("p ocr 1 1 2\n1 2\n1 2\n")
    assert exc.value.line == 3


@pytest.mark.parametrize(
    "text,err,line",
    [
        ("p ocr 2 2 1\n3 3\n", IdRangeError, 2),
        ("p ocr 2 2 1\n1 2\n", IdRangeError, 2),
        ("p ocr 2 2 1\n1 5\n", IdRangeError, 2),
        ("c x\np ocr 2 2 2\n1 3\n", EdgeCountError, 2),
        ("p ocr 2 2 1\n1 3\n2 4\n", EdgeCountError, 3),
        ("1 3\np ocr 2 2 1\n", HeaderError, 1),
        ("p ocr 2 2 0\np ocr 2 2 0\n", HeaderError, 2),
        ("p td 2 2 0\n", HeaderError, 1),
        ("p ocr 2 2 1\n1 x\n", FormatError, 2),
        ("p ocr 2 2 1\n1 3 4\n", FormatError, 2),
    ],
)
def test_malformations(text, err, line):
    with pytest.raises(err) as exc:
        parse_instance(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_missing_header():
    with pytest.raises(HeaderError):
        parse_instance("c only a comment\n")


def test_serialize_examples(matching):
    assert serialize_instance(build_instance(0, 0, [])) == "p ocr 0 0 0\n"
    assert serialize_instance(matching) == "p ocr 2 2 2\n1 3\n2 4\n"
    assert serialize_instance(matching, ["hi"]).startswith("c hi\np ocr")


@given(instances())
def test_instance_round_trip(inst):
    assert parse_instance(serialize_instance(inst)) == inst


@given(instance_and_ordering())
def test_ordering_round_trip(case):
    inst, order = case
    o = Ordering(order)
    assert parse_ordering(serialize_ordering(o, inst), inst) == o


def test_ordering_examples(matching):
    assert parse_ordering("3\n4\n", matching) == Ordering((0, 1))
    assert parse_ordering("4\n3\n", matching) == Ordering((1, 0))
    with pytest.raises(OrderingFormatError, match="repeated") as exc:
        parse_ordering("3\n3\n", matching)
    assert exc.value.line == 2
    with pytest.raises(OrderingFormatError, match="unknown"):
        parse_ordering("3\n5\n", matching)
    with pytest.raises(OrderingFormatError):
        parse_ordering("3\n", matching)


def test_svg_matching(matching):
    svg = emit_two_layer_svg(matching, (0, 1))
    assert svg.startswith("<?xml")
    assert "crossings: 0" in svg
    assert svg.count("<line ") == 2
    assert svg == emit_two_layer_svg(matching, (0, 1))


def test_svg_k22(k22):
    assert "crossings: 1" in emit_two_layer_svg(k22, (0, 1))


def test_svg_paper_tree(paper_tree):
    svg = emit_two_layer_svg(paper_tree, solve_exact(paper_tree).ordering)
    assert "crossings: 9" in svg
    assert ">d</text>" in svg and ">g</text>" in svg


def test_svg_escapes_labels():
    inst = build_instance(1, 1, [(0, 0)], ["<a&b>"], ["x"])
    assert "&lt;a&amp;b&gt;" in emit_two_layer_svg(inst, (0,))
